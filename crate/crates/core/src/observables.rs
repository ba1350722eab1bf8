//! Transport observables: drift, mean square displacement, survival, the
//! crossing time of the MSD curves, and the ordering of MSD in `D`.

use std::fmt;
use std::str::FromStr;

use crate::analytic::{analytic_wavefunction, check_times};
use crate::error::{Error, Result};
use crate::model::{LatticeWindow, WalkParams, WaveState};
use crate::propagators::{propagate_ode_series, OdeSpec, RingSpec, SpectralPropagator};
use crate::real::Real;

/// Which evolution produced a state or series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    Analytic,
    Spectral,
    Ode,
}

impl Source {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Analytic => "analytic",
            Self::Spectral => "spectral",
            Self::Ode => "ode",
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Source {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "analytic" => Ok(Self::Analytic),
            "spectral" => Ok(Self::Spectral),
            "ode" => Ok(Self::Ode),
            other => Err(format!(
                "unknown source {other:?} (expected analytic, spectral or ode)"
            )),
        }
    }
}

/// Optional overrides of the automatically sized lattice, ring and step.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PropagatorSettings<T> {
    pub half_width: Option<usize>,
    pub ring_size: Option<usize>,
    pub step: Option<T>,
}

/// Evolves the initial state to every time in `times` with the chosen method.
pub fn evolve<T: Real>(
    params: &WalkParams<T>,
    times: &[T],
    source: Source,
    settings: &PropagatorSettings<T>,
) -> Result<Vec<WaveState<T>>> {
    check_times(times)?;
    let Some(&t_max) = times.last() else {
        return Ok(Vec::new());
    };
    let window = match settings.half_width {
        Some(w) => LatticeWindow::new(w)?,
        None => LatticeWindow::light_cone(params.gamma(), t_max),
    };
    match source {
        Source::Analytic => times
            .iter()
            .map(|&t| analytic_wavefunction(params, window, t))
            .collect(),
        Source::Spectral => {
            let ring = match settings.ring_size {
                Some(n) => RingSpec::new(n)?,
                None => RingSpec::for_time(params.gamma(), t_max),
            };
            let prop = SpectralPropagator::new(*params, ring);
            times.iter().map(|&t| prop.propagate(t)).collect()
        }
        Source::Ode => {
            let ode = match settings.step {
                Some(h) => OdeSpec::new(h)?,
                None => OdeSpec::for_gamma(params.gamma()),
            };
            propagate_ode_series(params, window, ode, times)
        }
    }
}

/// First and second moments of `|ψ|²` plus the central survival probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments<T> {
    pub mean_position: T,
    /// `⟨X²⟩`, which is the MSD because `⟨X⟩(0) = 0` for this family.
    pub msd: T,
    pub survival: T,
}

pub fn observables_from_state<T: Real>(state: &WaveState<T>) -> Result<Moments<T>> {
    let tolerance = T::lit(1e-6).max(T::lit(1e3) * T::epsilon());
    let norm = state.norm_sqr();
    if (norm - T::one()).abs() > tolerance {
        return Err(Error::NormViolation {
            norm: norm.as_f64(),
            tolerance: tolerance.as_f64(),
        });
    }
    let mut mean = T::zero();
    let mut second = T::zero();
    for (x, a) in state.window().sites().zip(state.amplitudes()) {
        let p = a.norm_sqr();
        let x = T::from_site(x);
        mean += x * p;
        second += x * x * p;
    }
    let survival = (-1..=1).fold(T::zero(), |acc, x| acc + state.probability(x));
    Ok(Moments {
        mean_position: mean,
        msd: second,
        survival,
    })
}

/// `⟨X⟩`, MSD and `P_surv` on a time grid, all from one evolution method.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableSeries<T> {
    pub source: Source,
    pub times: Vec<T>,
    pub mean_position: Vec<T>,
    pub msd: Vec<T>,
    pub survival: Vec<T>,
}

impl<T: Real> ObservableSeries<T> {
    pub fn compute(
        params: &WalkParams<T>,
        times: &[T],
        source: Source,
        settings: &PropagatorSettings<T>,
    ) -> Result<Self> {
        let states = evolve(params, times, source, settings)?;
        let mut series = Self {
            source,
            times: times.to_vec(),
            mean_position: Vec::with_capacity(times.len()),
            msd: Vec::with_capacity(times.len()),
            survival: Vec::with_capacity(times.len()),
        };
        for state in &states {
            let m = observables_from_state(state)?;
            series.mean_position.push(m.mean_position);
            series.msd.push(m.msd);
            series.survival.push(m.survival);
        }
        Ok(series)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Constant drift `⟨v_g⟩ = -2γ sin α √(2D(1-D))`, so `⟨X⟩(t) = ⟨v_g⟩ t`.
pub fn mean_velocity<T: Real>(params: &WalkParams<T>) -> T {
    let d = params.delocalization();
    let two = T::lit(2.0);
    -two * params.gamma() * params.alpha().sin() * (two * d * (T::one() - d)).sqrt()
}

/// `MSD(t) = D + 2γ²t² (1 - D/2 + D sin²α)`.
pub fn msd_closed_form<T: Real>(params: &WalkParams<T>, t: T) -> T {
    let d = params.delocalization();
    let g = params.gamma();
    let two = T::lit(2.0);
    let sin2 = params.alpha().sin().powi(2);
    d + two * g * g * t * t * (T::one() - d / two + d * sin2)
}

/// Dimensionless crossing time `γ t_cross = 1/√(1 - 2 sin²α)`, or `None`
/// when `sin²α ≥ 1/2` and the MSD curves never cross.
///
/// Values of `1 - 2 sin²α` within a few ulps of zero count as the divergent
/// boundary, so `α = π/4` reports no crossing despite rounding in `sin`.
pub fn crossing_time<T: Real>(alpha: T) -> Option<T> {
    let gap = T::one() - T::lit(2.0) * alpha.sin().powi(2);
    if gap > T::lit(8.0) * T::epsilon() {
        Some(gap.sqrt().recip())
    } else {
        None
    }
}

/// How the MSD at a fixed time depends on `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MsdOrdering {
    /// More delocalization, more spreading.
    Increasing,
    /// Inverted ordering past the crossing time.
    Decreasing,
    /// At the crossing time itself.
    Independent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BackfireReport<T> {
    pub ordering: MsdOrdering,
    /// `∂MSD/∂D = 1 - (γt)² (1 - 2 sin²α)`.
    pub slope: T,
    /// `(D, MSD)` pairs sorted by `D`.
    pub msd_values: Vec<(T, T)>,
    /// Whether the pairwise MSD comparison agrees with `ordering`.
    pub confirmed: bool,
}

/// Classifies the `D`-ordering of the MSD curves at dimensionless time
/// `gamma_t` from the sign of `∂MSD/∂D`, and cross-checks it against the
/// MSD values of the supplied `d_values`.
pub fn backfire_ordering<T: Real>(
    alpha: T,
    gamma_t: T,
    d_values: &[T],
) -> Result<BackfireReport<T>> {
    if !(gamma_t.is_finite() && gamma_t > T::zero()) {
        return Err(Error::InvalidTime(gamma_t.as_f64()));
    }
    let mut ds = d_values.to_vec();
    if let Some(bad) = ds.iter().find(|d| !(**d >= T::zero() && **d <= T::one())) {
        return Err(Error::InvalidDValues(format!("{bad} outside [0, 1]")));
    }
    ds.sort_by(|a, b| a.partial_cmp(b).expect("finite D"));
    if ds.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidDValues("values must be distinct".into()));
    }

    let tol = T::lit(1e-10).max(T::lit(16.0) * T::epsilon());
    let slope = T::one() - gamma_t * gamma_t * (T::one() - T::lit(2.0) * alpha.sin().powi(2));
    let ordering = if slope.abs() <= tol {
        MsdOrdering::Independent
    } else if slope > T::zero() {
        MsdOrdering::Increasing
    } else {
        MsdOrdering::Decreasing
    };

    let msd_values: Vec<(T, T)> = ds
        .iter()
        .map(|&d| {
            let p = WalkParams::new(T::one(), alpha, d).expect("validated D");
            (d, msd_closed_form(&p, gamma_t))
        })
        .collect();
    let confirmed = msd_values.windows(2).all(|w| {
        let diff = w[1].1 - w[0].1;
        let scale = tol * (T::one() + w[0].1.abs());
        match ordering {
            MsdOrdering::Increasing => diff > T::zero(),
            MsdOrdering::Decreasing => diff < T::zero(),
            MsdOrdering::Independent => diff.abs() <= scale,
        }
    });

    Ok(BackfireReport {
        ordering,
        slope,
        msd_values,
        confirmed,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};

    use super::*;
    use crate::model::initial_state_position;

    fn params(alpha: f64, d: f64) -> WalkParams<f64> {
        WalkParams::new(1.0, alpha, d).unwrap()
    }

    #[test]
    fn mean_velocity_examples() {
        assert_eq!(mean_velocity(&params(0.7, 0.0)), 0.0);
        assert_eq!(mean_velocity(&params(0.7, 1.0)), 0.0);
        assert!((mean_velocity(&params(FRAC_PI_2, 0.5)) + 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn mean_velocity_is_momentum_average_of_group_velocity() {
        use crate::model::{group_velocity, initial_state_momentum};
        let n = 256;
        let h = 2.0 * PI / n as f64;
        for &(alpha, d) in &[(0.3, 0.2), (FRAC_PI_2, 0.5), (2.5, 0.9)] {
            let p = WalkParams::new(1.4, alpha, d).unwrap();
            let avg: f64 = (0..n)
                .map(|j| {
                    let k = -PI + j as f64 * h;
                    initial_state_momentum(&p, k).norm_sqr() * group_velocity(&p, k)
                })
                .sum::<f64>()
                * h;
            assert!((avg - mean_velocity(&p)).abs() < 1e-13);
        }
    }

    #[test]
    fn msd_examples() {
        assert_eq!(msd_closed_form(&params(0.3, 0.0), 1.0), 2.0);
        assert_eq!(msd_closed_form(&params(0.3, 0.37), 0.0), 0.37);
        assert!((msd_closed_form(&params(FRAC_PI_2, 0.5), 2.0) - 10.5).abs() < 1e-14);
    }

    #[test]
    fn crossing_time_examples() {
        assert_eq!(crossing_time(0.0), Some(1.0));
        assert!((crossing_time(FRAC_PI_6).unwrap() - 2f64.sqrt()).abs() < 1e-14);
        assert_eq!(crossing_time(FRAC_PI_2), None);
        assert_eq!(crossing_time(FRAC_PI_4), None);
        assert_eq!(crossing_time(3.0 * FRAC_PI_4), None);
        assert!(crossing_time(PI).is_some());
    }

    #[test]
    fn crossing_makes_msd_independent_of_d() {
        for j in 0..40 {
            let alpha = -0.7 + 0.035 * j as f64;
            let Some(tc) = crossing_time(alpha) else {
                continue;
            };
            let base = msd_closed_form(&params(alpha, 0.0), tc);
            for &d in &[0.25, 0.5, 1.0] {
                assert!((msd_closed_form(&params(alpha, d), tc) - base).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn backfire_examples() {
        let ds = [0.0, 0.5, 1.0];
        let r = backfire_ordering(0.0, 0.5, &ds).unwrap();
        assert_eq!(r.ordering, MsdOrdering::Increasing);
        assert!(r.confirmed);
        let r = backfire_ordering(0.0, 1.0, &ds).unwrap();
        assert_eq!(r.ordering, MsdOrdering::Independent);
        assert!(r.confirmed);
        let r = backfire_ordering(0.0, 2.0, &ds).unwrap();
        assert_eq!(r.ordering, MsdOrdering::Decreasing);
        assert!(r.confirmed);
        for t in [0.01, 1.0, 7.0, 50.0] {
            let r = backfire_ordering(FRAC_PI_2, t, &[1.0, 0.0, 0.5]).unwrap();
            assert_eq!(r.ordering, MsdOrdering::Increasing);
            assert!(r.confirmed);
            assert_eq!(r.msd_values[0].0, 0.0);
        }
    }

    #[test]
    fn backfire_rejects_bad_input() {
        assert!(backfire_ordering(0.0, 0.0, &[0.0, 1.0]).is_err());
        assert!(backfire_ordering(0.0, 1.0, &[0.5, 0.5]).is_err());
        assert!(backfire_ordering(0.0, 1.0, &[0.5, 1.5]).is_err());
    }

    #[test]
    fn moments_of_initial_states() {
        let w = LatticeWindow::new(3).unwrap();
        let m =
            observables_from_state(&initial_state_position(&params(0.2, 1.0), w).unwrap()).unwrap();
        assert_eq!(m.mean_position, 0.0);
        assert!((m.msd - 1.0).abs() < 1e-15);
        assert!((m.survival - 1.0).abs() < 1e-15);
        let m =
            observables_from_state(&initial_state_position(&params(0.2, 0.5), w).unwrap()).unwrap();
        assert_eq!(m.mean_position, 0.0);
        assert!((m.msd - 0.5).abs() < 1e-15);
        assert!((m.survival - 1.0).abs() < 1e-15);
    }

    #[test]
    fn unnormalized_state_rejected() {
        use num_complex::Complex;
        let w = LatticeWindow::new(1).unwrap();
        let s = WaveState::from_amplitudes(0.0, w, vec![Complex::new(0.5, 0.0); 3]);
        assert!(matches!(
            observables_from_state(&s),
            Err(Error::NormViolation { .. })
        ));
    }

    #[test]
    fn spectral_msd_example() {
        let s = ObservableSeries::compute(
            &params(FRAC_PI_2, 0.5),
            &[0.0, 2.0],
            Source::Spectral,
            &PropagatorSettings::default(),
        )
        .unwrap();
        assert!((s.msd[1] - 10.5).abs() < 1e-8);
        assert!((s.msd[0] - 0.5).abs() < 1e-12);
        assert!(s.mean_position[0].abs() < 1e-12);
    }

    #[test]
    fn sources_parse() {
        assert_eq!("ode".parse::<Source>().unwrap(), Source::Ode);
        assert!("euler".parse::<Source>().is_err());
        assert_eq!(Source::Spectral.to_string(), "spectral");
    }
}
