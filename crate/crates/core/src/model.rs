//! Walk parameters, the truncated lattice, and the three-site initial state.
//!
//! The Hamiltonian is the nearest-neighbour chain
//! `H = -γ Σ_x (e^{iα}|x+1⟩⟨x| + e^{-iα}|x⟩⟨x+1|)`, diagonal in the momentum
//! basis with dispersion `E(k) = -2γ cos(α - k)`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::real::Real;

/// Physical parameters of one walk: hopping rate, hopping phase, and the
/// delocalization `D` of the initial state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkParams<T> {
    gamma: T,
    alpha: T,
    delocalization: T,
}

impl<T: Real> WalkParams<T> {
    /// `alpha` is stored as given; every formula is 2π-periodic in it.
    pub fn new(gamma: T, alpha: T, delocalization: T) -> Result<Self> {
        if !(gamma.is_finite() && gamma > T::zero()) {
            return Err(Error::InvalidGamma(gamma.as_f64()));
        }
        if !alpha.is_finite() {
            return Err(Error::InvalidAlpha(alpha.as_f64()));
        }
        if !(delocalization >= T::zero() && delocalization <= T::one()) {
            return Err(Error::InvalidDelocalization(delocalization.as_f64()));
        }
        Ok(Self {
            gamma,
            alpha,
            delocalization,
        })
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn delocalization(&self) -> T {
        self.delocalization
    }

    /// Weight `√(1-D)` on the origin.
    pub fn center_weight(&self) -> T {
        (T::one() - self.delocalization).sqrt()
    }

    /// Weight `√(D/2)` on each of the sites `±1`.
    pub fn side_weight(&self) -> T {
        (self.delocalization / T::lit(2.0)).sqrt()
    }

    /// Bessel argument `2γt`.
    pub fn bessel_argument(&self, t: T) -> T {
        T::lit(2.0) * self.gamma * t
    }
}

/// `E(k) = -2γ cos(α - k)`.
pub fn dispersion<T: Real>(params: &WalkParams<T>, k: T) -> T {
    -T::lit(2.0) * params.gamma * (params.alpha - k).cos()
}

/// `∂E/∂k = -2γ sin(α - k)`.
///
/// Averaged over `|ψ(k,0)|²` this gives the drift velocity
/// [`mean_velocity`](crate::observables::mean_velocity).
pub fn group_velocity<T: Real>(params: &WalkParams<T>, k: T) -> T {
    -T::lit(2.0) * params.gamma * (params.alpha - k).sin()
}

/// Extra sites kept beyond the ballistic front `2γt`.
///
/// The Bessel amplitudes fall off super-exponentially past the turning point,
/// after an Airy layer of width `∝ (2γt)^{1/3}`.
pub fn light_cone_margin<T: Real>(front: T) -> usize {
    let airy = (T::lit(6.0) * front.max(T::zero()).cbrt()).ceil();
    airy.to_usize().unwrap_or(usize::MAX).max(40)
}

/// Smallest safe half-width for a run up to `t_max`:
/// `ceil(2γ t_max) + max(40, ceil(6 (2γ t_max)^{1/3}))`.
pub fn required_half_width<T: Real>(gamma: T, t_max: T) -> usize {
    let front = T::lit(2.0) * gamma * t_max.abs();
    let reach = front.ceil().to_usize().unwrap_or(usize::MAX);
    reach.saturating_add(light_cone_margin(front))
}

/// Symmetric block of sites `x ∈ [-X, X]` standing in for the infinite chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeWindow {
    half_width: usize,
}

impl LatticeWindow {
    pub fn new(half_width: usize) -> Result<Self> {
        if half_width < 1 {
            return Err(Error::EmptyWindow);
        }
        Ok(Self { half_width })
    }

    /// Window large enough that truncation is invisible up to `t_max`.
    pub fn light_cone<T: Real>(gamma: T, t_max: T) -> Self {
        Self {
            half_width: required_half_width(gamma, t_max).max(1),
        }
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    /// Number of sites, `2X + 1`.
    pub fn len(&self) -> usize {
        2 * self.half_width + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min_site(&self) -> i64 {
        -(self.half_width as i64)
    }

    pub fn max_site(&self) -> i64 {
        self.half_width as i64
    }

    /// Site coordinates in storage order.
    pub fn sites(&self) -> impl DoubleEndedIterator<Item = i64> + Clone {
        self.min_site()..=self.max_site()
    }

    pub fn contains(&self, x: i64) -> bool {
        x.unsigned_abs() as usize <= self.half_width
    }

    /// Storage index of site `x`.
    pub fn index(&self, x: i64) -> Option<usize> {
        self.contains(x)
            .then(|| (x + self.half_width as i64) as usize)
    }

    /// Fails with [`Error::WindowTooSmall`] unless the window satisfies the
    /// light-cone rule for `t_max`.
    pub fn check_light_cone<T: Real>(&self, gamma: T, t_max: T) -> Result<()> {
        let required = required_half_width(gamma, t_max);
        if self.half_width < required {
            return Err(Error::WindowTooSmall {
                required,
                actual: self.half_width,
                time: t_max.as_f64(),
            });
        }
        Ok(())
    }
}

/// Amplitudes `ψ(x, t)` on a lattice window at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveState<T> {
    time: T,
    window: LatticeWindow,
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> WaveState<T> {
    /// Wraps amplitudes given in the window's storage order.
    ///
    /// # Panics
    ///
    /// Panics if the amplitude count differs from the window length.
    pub fn from_amplitudes(time: T, window: LatticeWindow, amplitudes: Vec<Complex<T>>) -> Self {
        assert_eq!(
            amplitudes.len(),
            window.len(),
            "amplitude count must match the lattice window"
        );
        Self {
            time,
            window,
            amplitudes,
        }
    }

    pub fn time(&self) -> T {
        self.time
    }

    pub fn window(&self) -> LatticeWindow {
        self.window
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex<T>> {
        self.amplitudes
    }

    /// `ψ(x)`, zero outside the window.
    pub fn amplitude(&self, x: i64) -> Complex<T> {
        self.window
            .index(x)
            .map_or_else(Complex::default, |i| self.amplitudes[i])
    }

    /// `P(x) = |ψ(x)|²`, zero outside the window.
    pub fn probability(&self, x: i64) -> T {
        self.amplitude(x).norm_sqr()
    }

    pub fn probabilities(&self) -> Vec<T> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `Σ_x |ψ(x)|²`.
    pub fn norm_sqr(&self) -> T {
        self.amplitudes
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    /// Largest probability on the two outermost sites.
    pub fn edge_probability(&self) -> T {
        let first = self.amplitudes[0].norm_sqr();
        let last = self.amplitudes[self.amplitudes.len() - 1].norm_sqr();
        first.max(last)
    }

    /// Same state viewed on another window: sites outside `self` read as zero,
    /// sites outside `window` are dropped.
    pub fn restricted(&self, window: LatticeWindow) -> Self {
        let amplitudes = window.sites().map(|x| self.amplitude(x)).collect();
        Self {
            time: self.time,
            window,
            amplitudes,
        }
    }
}

/// `√(1-D)|0⟩ + √(D/2)(|1⟩ + |-1⟩)` laid out on `window`.
pub fn initial_state_position<T: Real>(
    params: &WalkParams<T>,
    window: LatticeWindow,
) -> Result<WaveState<T>> {
    if window.half_width() < 1 {
        return Err(Error::EmptyWindow);
    }
    let mut amplitudes = vec![Complex::default(); window.len()];
    let side = Complex::from(params.side_weight());
    amplitudes[window.index(0).expect("origin in window")] = Complex::from(params.center_weight());
    amplitudes[window.index(1).expect("site 1 in window")] = side;
    amplitudes[window.index(-1).expect("site -1 in window")] = side;
    Ok(WaveState::from_amplitudes(T::zero(), window, amplitudes))
}

/// `ψ(k, 0) = (√(1-D) + √(2D) cos k) / √(2π)`, real for this family.
pub fn initial_state_momentum<T: Real>(params: &WalkParams<T>, k: T) -> Complex<T> {
    let two = T::lit(2.0);
    let amp = params.center_weight() + (two * params.delocalization).sqrt() * k.cos();
    Complex::from(amp / (two * T::PI()).sqrt())
}
