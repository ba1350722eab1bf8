//! Closed-form evolution of the three-site initial state.
//!
//! The lattice propagator of the chain is
//! `G(n, t) = ⟨x+n| e^{-iHt} |x⟩ = i^n J_n(2γt) e^{inα}` (Jacobi-Anger), so
//!
//! ```text
//! ψ(x,t) = e^{ixα} [ √(1-D) J̃_x + √(D/2) (e^{-iα} J̃_{x-1} + e^{iα} J̃_{x+1}) ],   J̃_n = i^n J_n(2γt)
//! ```
//!
//! The site phase `e^{ixα}` drops out of every probability but is kept so
//! that amplitudes agree with the numerical propagators and reduce to the
//! initial state at `t = 0`.

use num_complex::Complex;

use crate::bessel::{bessel_row, BesselRow};
use crate::error::{Error, Result};
use crate::model::{initial_state_position, LatticeWindow, WalkParams, WaveState};
use crate::real::Real;

/// `P_surv` sampled on an increasing grid of times.
#[derive(Debug, Clone, PartialEq)]
pub struct SurvivalCurve<T> {
    params: WalkParams<T>,
    times: Vec<T>,
    values: Vec<T>,
}

impl<T: Real> SurvivalCurve<T> {
    /// Wraps externally computed samples; times must be strictly increasing
    /// and nonnegative.
    pub fn new(params: WalkParams<T>, times: Vec<T>, values: Vec<T>) -> Result<Self> {
        check_times(&times)?;
        if times.len() != values.len() {
            return Err(Error::InvalidGrid(format!(
                "{} times but {} values",
                times.len(),
                values.len()
            )));
        }
        Ok(Self {
            params,
            times,
            values,
        })
    }

    pub fn params(&self) -> &WalkParams<T> {
        &self.params
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

pub(crate) fn check_times<T: Real>(times: &[T]) -> Result<()> {
    if let Some(bad) = times.iter().find(|t| !(t.is_finite() && **t >= T::zero())) {
        return Err(Error::InvalidTime(bad.as_f64()));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid(
            "times must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// `i^n` by lookup on `n mod 4`.
fn i_pow<T: Real>(n: i64) -> Complex<T> {
    match n.rem_euclid(4) {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    }
}

/// `J̃_n = i^n J_n` from a precomputed row.
fn modified<T: Real>(row: &BesselRow<T>, n: i64) -> Complex<T> {
    i_pow::<T>(n) * row.signed(n)
}

/// Exact `ψ(x, t)` on `window`.
///
/// The window must satisfy the light-cone rule for `t`, and the resulting
/// norm is checked against [`Real::NORM_TOL`].
pub fn analytic_wavefunction<T: Real>(
    params: &WalkParams<T>,
    window: LatticeWindow,
    t: T,
) -> Result<WaveState<T>> {
    if !(t.is_finite() && t >= T::zero()) {
        return Err(Error::InvalidTime(t.as_f64()));
    }
    window.check_light_cone(params.gamma(), t)?;
    if t == T::zero() {
        return initial_state_position(params, window);
    }

    let row = bessel_row(params.bessel_argument(t), window.half_width() + 1)?;
    let center = params.center_weight();
    let side = params.side_weight();
    let hop = Complex::from_polar(T::one(), params.alpha());
    let hop_back = hop.conj();

    let amplitudes = window
        .sites()
        .map(|x| {
            let bracket = modified(&row, x) * center
                + (hop_back * modified(&row, x - 1) + hop * modified(&row, x + 1)) * side;
            Complex::from_polar(T::one(), T::from_site(x) * params.alpha()) * bracket
        })
        .collect();
    let state = WaveState::from_amplitudes(t, window, amplitudes);

    let norm = state.norm_sqr();
    if (norm - T::one()).abs() > T::NORM_TOL {
        return Err(Error::NormViolation {
            norm: norm.as_f64(),
            tolerance: T::NORM_TOL.as_f64(),
        });
    }
    Ok(state)
}

/// `P(x, t) = |ψ(x, t)|²` in window storage order.
pub fn analytic_probability<T: Real>(
    params: &WalkParams<T>,
    window: LatticeWindow,
    t: T,
) -> Result<Vec<T>> {
    analytic_wavefunction(params, window, t).map(|s| s.probabilities())
}

/// Probability left on the sites `{-1, 0, 1}`:
///
/// ```text
/// P_surv = J_0² + 2(1 - D sin²α) J_1² + D J_2² - 2D cos(2α) J_0 J_2,   J_n = J_n(2γt)
/// ```
pub fn survival_at<T: Real>(params: &WalkParams<T>, t: T) -> Result<T> {
    if !(t.is_finite() && t >= T::zero()) {
        return Err(Error::InvalidTime(t.as_f64()));
    }
    let row = bessel_row(params.bessel_argument(t), 2)?;
    let (j0, j1, j2) = (row.get(0), row.get(1), row.get(2));
    let d = params.delocalization();
    let two = T::lit(2.0);
    let sin2 = params.alpha().sin().powi(2);
    let cos2a = (two * params.alpha()).cos();
    Ok(j0 * j0 + two * (T::one() - d * sin2) * j1 * j1 + d * j2 * j2 - two * d * cos2a * j0 * j2)
}

/// Closed-form survival probability on a grid of times.
pub fn survival_exact<T: Real>(params: &WalkParams<T>, times: &[T]) -> Result<SurvivalCurve<T>> {
    check_times(times)?;
    let values = times
        .iter()
        .map(|&t| survival_at(params, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(SurvivalCurve {
        params: *params,
        times: times.to_vec(),
        values,
    })
}

fn fine_tuned_tolerance<T: Real>() -> T {
    T::lit(1e-12).max(T::lit(4.0) * T::epsilon())
}

/// True for `D = 1` and `α = π/2 + mπ`, where the central three-site
/// amplitude collapses to `J_1(2γt)/(γt)`.
pub fn is_fine_tuned<T: Real>(params: &WalkParams<T>) -> bool {
    let tol = fine_tuned_tolerance::<T>();
    (params.delocalization() - T::one()).abs() <= tol
        && (params.alpha().sin().powi(2) - T::one()).abs() <= tol
}

/// Long-time survival law.
///
/// Generic parameters: `(3 - 2D sin²α + D) / (2πγt)`.
/// Fine-tuned case: `1 / (πγ³t³)`, the envelope of `J_1(2γt)²/(γt)²`.
///
/// The generic coefficient treats the `J_0 J_2` cross term as zero-mean,
/// which holds only when `D cos 2α = 0`; see [`survival_mean_asymptotic`]
/// for the oscillation average.
pub fn survival_asymptotic<T: Real>(params: &WalkParams<T>, t: T) -> Result<T> {
    if !(t.is_finite() && t > T::zero()) {
        return Err(Error::InvalidTime(t.as_f64()));
    }
    let g = params.gamma();
    if is_fine_tuned(params) {
        return Ok((T::PI() * g * g * g * t * t * t).recip());
    }
    let d = params.delocalization();
    let sin2 = params.alpha().sin().powi(2);
    let coeff = T::lit(3.0) - T::lit(2.0) * d * sin2 + d;
    Ok(coeff / (T::lit(2.0) * T::PI() * g * t))
}

/// Oscillation-averaged long-time survival.
///
/// With `J_n(z)² → 1/(πz)` and `J_0 J_2 → -1/(πz)` on average, the leading
/// term is `3(1 + D cos 2α) / (2πγt)`. It vanishes in the fine-tuned case,
/// where the average of `J_1(2γt)²/(γt)²` gives `1 / (2πγ³t³)`.
pub fn survival_mean_asymptotic<T: Real>(params: &WalkParams<T>, t: T) -> Result<T> {
    if !(t.is_finite() && t > T::zero()) {
        return Err(Error::InvalidTime(t.as_f64()));
    }
    let g = params.gamma();
    let two_pi = T::lit(2.0) * T::PI();
    if is_fine_tuned(params) {
        return Ok((two_pi * g * g * g * t * t * t).recip());
    }
    let d = params.delocalization();
    let coeff = T::lit(3.0) * (T::one() + d * (T::lit(2.0) * params.alpha()).cos());
    Ok(coeff / (two_pi * g * t))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI};

    use super::*;

    fn params(alpha: f64, d: f64) -> WalkParams<f64> {
        WalkParams::new(1.0, alpha, d).unwrap()
    }

    #[test]
    fn localized_center_probability() {
        let p = params(0.4, 0.0);
        let w = LatticeWindow::light_cone(1.0, 1.0);
        let s = analytic_wavefunction(&p, w, 1.0).unwrap();
        // J_0(2)^2
        assert!((s.probability(0) - 0.050_127_080_984_469_545).abs() < 1e-15);
    }

    #[test]
    fn reduces_to_initial_state() {
        for &d in &[0.0, 0.3, 1.0] {
            let p = params(1.1, d);
            let w = LatticeWindow::light_cone(1.0, 0.0);
            let s = analytic_wavefunction(&p, w, 0.0).unwrap();
            assert_eq!(s, initial_state_position(&p, w).unwrap());
        }
    }

    #[test]
    fn tiny_time_matches_initial_state() {
        let p = params(1.1, 0.6);
        let w = LatticeWindow::light_cone(1.0, 1e-9);
        let s = analytic_wavefunction(&p, w, 1e-9).unwrap();
        let s0 = initial_state_position(&p, w).unwrap();
        for x in -2..=2 {
            assert!((s.amplitude(x) - s0.amplitude(x)).norm() < 1e-8);
        }
    }

    #[test]
    fn undersized_window_rejected() {
        let p = params(0.0, 0.5);
        let w = LatticeWindow::new(50).unwrap();
        assert!(matches!(
            analytic_wavefunction(&p, w, 50.0),
            Err(Error::WindowTooSmall { required: 140, .. })
        ));
        assert!(analytic_wavefunction(&p, w, -1.0).is_err());
    }

    #[test]
    fn symmetric_panels() {
        let w = LatticeWindow::light_cone(1.0, 50.0);
        for (alpha, d) in [(FRAC_PI_2, 1.0), (FRAC_PI_2, 0.0), (0.3, 0.0), (0.0, 1.0)] {
            let s = analytic_wavefunction(&params(alpha, d), w, 50.0).unwrap();
            for x in 0..=w.max_site() {
                assert!((s.probability(x) - s.probability(-x)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn biased_panel_drifts_left() {
        let w = LatticeWindow::light_cone(1.0, 50.0);
        let s = analytic_wavefunction(&params(FRAC_PI_2, 0.5), w, 50.0).unwrap();
        let mean: f64 = w.sites().map(|x| x as f64 * s.probability(x)).sum();
        assert!((mean + 2f64.sqrt() * 50.0).abs() < 1e-9, "{mean}");
    }

    #[test]
    fn survival_examples() {
        let times = [0.0, 1.0];
        let c = survival_exact(&params(FRAC_PI_2, 1.0), &times).unwrap();
        assert_eq!(c.values()[0], 1.0);
        // J_1(2)^2
        assert!((c.values()[1] - 0.332_611_503_882_202_84).abs() < 1e-14);
        let c = survival_exact(&params(0.7, 0.0), &times).unwrap();
        // J_0(2)^2 + 2 J_1(2)^2
        assert!((c.values()[1] - 0.715_350_088_748_875_2).abs() < 1e-14);
        assert!(survival_exact(&params(0.0, 0.0), &[1.0, 0.5]).is_err());
        assert!(survival_exact(&params(0.0, 0.0), &[-1.0, 0.5]).is_err());
    }

    #[test]
    fn asymptotic_examples() {
        let v = survival_asymptotic(&params(0.9, 0.0), 100.0).unwrap();
        assert!((v - 3.0 / (200.0 * PI)).abs() < 1e-18);
        assert!((v - 4.7746e-3).abs() < 1e-7);
        let v = survival_asymptotic(&params(FRAC_PI_2, 1.0), 100.0).unwrap();
        assert!((v - 1.0 / (PI * 1e6)).abs() < 1e-20);
        let v = survival_asymptotic(&params(0.0, 1.0), 100.0).unwrap();
        assert!((v - 4.0 / (200.0 * PI)).abs() < 1e-18);
        assert!(survival_asymptotic(&params(0.0, 1.0), 0.0).is_err());
        assert!(is_fine_tuned(&params(-FRAC_PI_2 + 4.0 * PI, 1.0)));
        assert!(!is_fine_tuned(&params(FRAC_PI_2, 0.999)));
    }

    #[test]
    fn mean_law_zero_in_fine_tuned_limit() {
        let v = survival_mean_asymptotic(&params(FRAC_PI_2, 1.0), 10.0).unwrap();
        assert!((v - 1.0 / (2.0 * PI * 1e3)).abs() < 1e-18);
        let v = survival_mean_asymptotic(&params(0.0, 1.0), 10.0).unwrap();
        assert!((v - 6.0 / (20.0 * PI)).abs() < 1e-16);
    }

    #[test]
    fn single_precision_evolution() {
        let p = WalkParams::new(1.0f32, 0.5, 0.5).unwrap();
        let w = LatticeWindow::light_cone(1.0f32, 5.0);
        let s = analytic_wavefunction(&p, w, 5.0).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-5);
    }
}
