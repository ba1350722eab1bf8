use num_complex::Complex;

use crate::analytic::check_times;
use crate::error::{Error, Result};
use crate::model::{initial_state_position, LatticeWindow, WalkParams, WaveState};
use crate::real::Real;

/// Fixed-step classical Runge-Kutta settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeSpec<T> {
    step: T,
    drift_tolerance: T,
}

impl<T: Real> OdeSpec<T> {
    pub fn new(step: T) -> Result<Self> {
        if !(step.is_finite() && step > T::zero()) {
            return Err(Error::InvalidStep(step.as_f64()));
        }
        Ok(Self {
            step,
            drift_tolerance: T::DRIFT_TOL,
        })
    }

    /// Default resolution `γh = 1e-3`.
    pub fn for_gamma(gamma: T) -> Self {
        Self {
            step: T::lit(1e-3) / gamma,
            drift_tolerance: T::DRIFT_TOL,
        }
    }

    /// Loosens or tightens the norm-drift guard, e.g. for deliberately
    /// coarse steps in convergence studies.
    pub fn with_drift_tolerance(mut self, tolerance: T) -> Self {
        self.drift_tolerance = tolerance;
        self
    }

    pub fn step(&self) -> T {
        self.step
    }

    pub fn drift_tolerance(&self) -> T {
        self.drift_tolerance
    }
}

/// Workspace for `dψ/dt = -iHψ` on a hard-truncated chain.
struct Rk4<T: Real> {
    // -iH couplings: dψ_x/dt = right ψ_{x-1} + left ψ_{x+1}
    right: Complex<T>,
    left: Complex<T>,
    k: Vec<Complex<T>>,
    stage: Vec<Complex<T>>,
    acc: Vec<Complex<T>>,
}

impl<T: Real> Rk4<T> {
    fn new(params: &WalkParams<T>, len: usize) -> Self {
        let i_gamma = Complex::new(T::zero(), params.gamma());
        let phase = Complex::from_polar(T::one(), params.alpha());
        Self {
            right: i_gamma * phase,
            left: i_gamma * phase.conj(),
            k: vec![Complex::default(); len],
            stage: vec![Complex::default(); len],
            acc: vec![Complex::default(); len],
        }
    }

    fn derivative(right: Complex<T>, left: Complex<T>, psi: &[Complex<T>], out: &mut [Complex<T>]) {
        let n = psi.len();
        for i in 0..n {
            let mut v = Complex::default();
            if i > 0 {
                v += right * psi[i - 1];
            }
            if i + 1 < n {
                v += left * psi[i + 1];
            }
            out[i] = v;
        }
    }

    #[allow(clippy::needless_range_loop)]
    fn step(&mut self, psi: &mut [Complex<T>], h: T) {
        let half = h / T::lit(2.0);
        let two = T::lit(2.0);
        let (right, left) = (self.right, self.left);

        Self::derivative(right, left, psi, &mut self.k);
        for i in 0..psi.len() {
            self.acc[i] = self.k[i];
            self.stage[i] = psi[i] + self.k[i] * half;
        }
        Self::derivative(right, left, &self.stage, &mut self.k);
        for i in 0..psi.len() {
            self.acc[i] += self.k[i] * two;
            self.stage[i] = psi[i] + self.k[i] * half;
        }
        Self::derivative(right, left, &self.stage, &mut self.k);
        for i in 0..psi.len() {
            self.acc[i] += self.k[i] * two;
            self.stage[i] = psi[i] + self.k[i] * h;
        }
        Self::derivative(right, left, &self.stage, &mut self.k);
        let sixth = h / T::lit(6.0);
        for i in 0..psi.len() {
            psi[i] += (self.acc[i] + self.k[i]) * sixth;
        }
    }

    /// Advances by `span`: whole steps of `h`, then one shortened step for
    /// any remainder.
    fn advance(&mut self, psi: &mut [Complex<T>], span: T, h: T) {
        let ratio = span / h;
        let nearest = ratio.round();
        let (full, rest) = if (ratio - nearest).abs() <= T::lit(1e-6) {
            (nearest, T::zero())
        } else {
            let full = ratio.floor();
            (full, span - full * h)
        };
        let full = full.to_usize().unwrap_or(0);
        for _ in 0..full {
            self.step(psi, h);
        }
        if rest > T::zero() {
            self.step(psi, rest);
        }
    }
}

/// RK4 evolution of the initial state, reporting the state at each of
/// `times` (strictly increasing, nonnegative).
///
/// The window must satisfy the light-cone rule for the last time. After each
/// reported time the norm drift must stay below the step's drift tolerance
/// ([`Real::DRIFT_TOL`] by default) and the
/// edge sites below [`Real::EDGE_TOL`].
pub fn propagate_ode_series<T: Real>(
    params: &WalkParams<T>,
    window: LatticeWindow,
    ode: OdeSpec<T>,
    times: &[T],
) -> Result<Vec<WaveState<T>>> {
    check_times(times)?;
    let Some(&t_max) = times.last() else {
        return Ok(Vec::new());
    };
    window.check_light_cone(params.gamma(), t_max)?;

    let mut psi = initial_state_position(params, window)?.into_amplitudes();
    let mut rk = Rk4::new(params, psi.len());
    let mut now = T::zero();
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        rk.advance(&mut psi, t - now, ode.step());
        now = t;
        let state = WaveState::from_amplitudes(t, window, psi.clone());
        let norm = state.norm_sqr();
        if (norm - T::one()).abs() > ode.drift_tolerance() {
            return Err(Error::NormViolation {
                norm: norm.as_f64(),
                tolerance: ode.drift_tolerance().as_f64(),
            });
        }
        let edge = state.edge_probability();
        if edge > T::EDGE_TOL {
            return Err(Error::EdgeLeak {
                probability: edge.as_f64(),
                time: t.as_f64(),
            });
        }
        out.push(state);
    }
    Ok(out)
}

/// RK4 evolution of the initial state to a single time `t`.
pub fn propagate_ode<T: Real>(
    params: &WalkParams<T>,
    window: LatticeWindow,
    ode: OdeSpec<T>,
    t: T,
) -> Result<WaveState<T>> {
    let mut states = propagate_ode_series(params, window, ode, &[t])?;
    Ok(states.pop().expect("one requested time"))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    use super::*;
    use crate::analytic::analytic_probability;

    fn params(alpha: f64, d: f64) -> WalkParams<f64> {
        WalkParams::new(1.0, alpha, d).unwrap()
    }

    #[test]
    fn step_validation() {
        assert!(OdeSpec::new(0.0).is_err());
        assert!(OdeSpec::new(-1e-3).is_err());
        assert!(OdeSpec::new(f64::NAN).is_err());
        assert!(matches!(
            propagate_ode(
                &WalkParams::new(1.0, 0.0, 0.0).unwrap(),
                LatticeWindow::light_cone(1.0, 5.0),
                OdeSpec::new(0.2).unwrap(),
                5.0
            ),
            Err(Error::NormViolation { .. })
        ));
        assert_eq!(OdeSpec::for_gamma(2.0).step(), 5e-4);
    }

    #[test]
    fn zero_time_is_initial_state() {
        let p = params(0.2, 0.5);
        let w = LatticeWindow::light_cone(1.0, 0.0);
        let s = propagate_ode(&p, w, OdeSpec::for_gamma(1.0), 0.0).unwrap();
        assert_eq!(s, initial_state_position(&p, w).unwrap());
    }

    #[test]
    fn matches_closed_form_delocalized() {
        let p = params(0.0, 1.0);
        let w = LatticeWindow::light_cone(1.0, 10.0);
        let s = propagate_ode(&p, w, OdeSpec::for_gamma(1.0), 10.0).unwrap();
        let exact = analytic_probability(&p, w, 10.0).unwrap();
        let dev = s
            .probabilities()
            .iter()
            .zip(&exact)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(dev < 1e-8, "{dev}");
    }

    #[test]
    fn msd_example() {
        let p = params(FRAC_PI_4, 0.5);
        let w = LatticeWindow::light_cone(1.0, 20.0);
        let s = propagate_ode(&p, w, OdeSpec::for_gamma(1.0), 20.0).unwrap();
        let msd: f64 = w
            .sites()
            .zip(s.probabilities())
            .map(|(x, q)| (x * x) as f64 * q)
            .sum();
        assert!((msd / 800.5 - 1.0).abs() < 1e-5, "{msd}");
    }

    #[test]
    fn partial_final_step() {
        // 2.05 is not a multiple of 0.1; the run still has to land on t.
        let p = params(0.4, 0.3);
        let w = LatticeWindow::light_cone(1.0, 2.05);
        let coarse_spec = OdeSpec::new(0.1).unwrap().with_drift_tolerance(1e-4);
        let coarse = propagate_ode(&p, w, coarse_spec, 2.05).unwrap();
        let fine = propagate_ode(&p, w, OdeSpec::new(1e-3).unwrap(), 2.05).unwrap();
        assert_eq!(coarse.time(), 2.05);
        let exact = analytic_probability(&p, w, 2.05).unwrap();
        let err = |s: &WaveState<f64>| {
            s.probabilities()
                .iter()
                .zip(&exact)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        };
        assert!(err(&coarse) < 1e-4);
        assert!(err(&fine) < 1e-12);
    }

    #[test]
    fn drift_sign_pinned() {
        // hop x -> x+1 carries -γ e^{iα}; for α = π/2 and 0 < D < 1 the packet moves left
        let p = params(FRAC_PI_2, 0.5);
        let w = LatticeWindow::light_cone(1.0, 3.0);
        let s = propagate_ode(&p, w, OdeSpec::for_gamma(1.0), 3.0).unwrap();
        let mean: f64 = w
            .sites()
            .zip(s.probabilities())
            .map(|(x, q)| x as f64 * q)
            .sum();
        assert!(mean < 0.0);
        assert!((mean + 3.0 * 2f64.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn undersized_window_rejected() {
        let p = params(0.0, 0.0);
        let w = LatticeWindow::new(45).unwrap();
        assert!(matches!(
            propagate_ode(&p, w, OdeSpec::for_gamma(1.0), 10.0),
            Err(Error::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn series_matches_single_runs() {
        let p = params(0.9, 0.7);
        let w = LatticeWindow::light_cone(1.0, 4.0);
        let ode = OdeSpec::new(0.01).unwrap();
        let series = propagate_ode_series(&p, w, ode, &[1.0, 2.5, 4.0]).unwrap();
        let single = propagate_ode(&p, w, ode, 2.5).unwrap();
        for (a, b) in series[1].amplitudes().iter().zip(single.amplitudes()) {
            assert!((a - b).norm() < 1e-13);
        }
        assert!(propagate_ode_series(&p, w, ode, &[2.0, 1.0]).is_err());
    }
}
