use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::model::{
    initial_state_position, light_cone_margin, LatticeWindow, WalkParams, WaveState,
};
use crate::real::Real;

/// Periodic ring of `N` sites with momenta `k_j = 2πj/N` folded into `(-π, π]`.
///
/// Site `x` is stored at slot `x mod N`; the centered window
/// `|x| ≤ (N-1)/2` is what propagation results are reported on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingSpec {
    size: usize,
}

impl RingSpec {
    pub fn new(size: usize) -> Result<Self> {
        if size < 3 {
            return Err(Error::RingTooSmall {
                required: 3,
                actual: size,
                time: 0.0,
            });
        }
        Ok(Self { size })
    }

    /// Minimum ring size for which nothing wraps around by `t_max`:
    /// `2 (ceil(2γ t_max) + margin) + 3`.
    pub fn required_size<T: Real>(gamma: T, t_max: T) -> usize {
        let front = T::lit(2.0) * gamma * t_max.abs();
        let reach = front.ceil().to_usize().unwrap_or(usize::MAX);
        reach
            .saturating_add(light_cone_margin(front))
            .saturating_mul(2)
            .saturating_add(3)
    }

    /// Next power of two above [`RingSpec::required_size`].
    pub fn for_time<T: Real>(gamma: T, t_max: T) -> Self {
        Self {
            size: Self::required_size(gamma, t_max).next_power_of_two(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Centered window `|x| ≤ (N-1)/2`.
    pub fn window(&self) -> LatticeWindow {
        LatticeWindow::new((self.size - 1) / 2).expect("ring size of at least 3")
    }

    /// Momentum of each transform slot, folded into `(-π, π]`.
    pub fn momenta<T: Real>(&self) -> Vec<T> {
        let n = T::from_index(self.size);
        let two_pi = T::lit(2.0) * T::PI();
        (0..self.size)
            .map(|j| {
                let k = two_pi * T::from_index(j) / n;
                if k > T::PI() {
                    k - two_pi
                } else {
                    k
                }
            })
            .collect()
    }

    fn slot(&self, x: i64) -> usize {
        x.rem_euclid(self.size as i64) as usize
    }

    fn check<T: Real>(&self, gamma: T, t: T) -> Result<()> {
        let required = Self::required_size(gamma, t);
        if self.size < required {
            return Err(Error::RingTooSmall {
                required,
                actual: self.size,
                time: t.as_f64(),
            });
        }
        Ok(())
    }
}

/// Diagonal propagation in the ring's momentum basis.
///
/// Forward transform `ψ̂_j = Σ_x e^{-i k_j x} ψ_x`, phase
/// `e^{-iE(k_j)t} = e^{i 2γt cos(α - k_j)}`, inverse transform with `1/N`.
pub struct SpectralPropagator<T: Real> {
    params: WalkParams<T>,
    ring: RingSpec,
    momenta: Vec<T>,
    forward: Arc<dyn Fft<T>>,
    inverse: Arc<dyn Fft<T>>,
    initial: Vec<Complex<T>>,
}

impl<T: Real> SpectralPropagator<T> {
    pub fn new(params: WalkParams<T>, ring: RingSpec) -> Self {
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(ring.size());
        let inverse = planner.plan_fft_inverse(ring.size());
        let mut propagator = Self {
            params,
            ring,
            momenta: ring.momenta(),
            forward,
            inverse,
            initial: Vec::new(),
        };
        let start =
            initial_state_position(&params, ring.window()).expect("ring window is nonempty");
        propagator.initial = propagator.transform(&start);
        propagator
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    fn transform(&self, state: &WaveState<T>) -> Vec<Complex<T>> {
        let mut buf = vec![Complex::default(); self.ring.size()];
        for (x, a) in state.window().sites().zip(state.amplitudes()) {
            buf[self.ring.slot(x)] += *a;
        }
        self.forward.process(&mut buf);
        buf
    }

    fn synthesize(&self, mut spectrum: Vec<Complex<T>>, dt: T, time: T) -> WaveState<T> {
        let z = T::lit(2.0) * self.params.gamma() * dt;
        let alpha = self.params.alpha();
        for (c, &k) in spectrum.iter_mut().zip(&self.momenta) {
            *c *= Complex::from_polar(T::one(), z * (alpha - k).cos());
        }
        self.inverse.process(&mut spectrum);
        let scale = T::from_index(self.ring.size()).recip();
        let window = self.ring.window();
        let amplitudes = window
            .sites()
            .map(|x| spectrum[self.ring.slot(x)] * scale)
            .collect();
        WaveState::from_amplitudes(time, window, amplitudes)
    }

    /// Evolves an arbitrary state by `dt` (either sign). Sites of `state`
    /// beyond the ring wrap modulo `N`.
    pub fn evolve(&self, state: &WaveState<T>, dt: T) -> WaveState<T> {
        let spectrum = self.transform(state);
        self.synthesize(spectrum, dt, state.time() + dt)
    }

    /// Evolves the three-site initial state to time `t ≥ 0`.
    pub fn propagate(&self, t: T) -> Result<WaveState<T>> {
        if !(t.is_finite() && t >= T::zero()) {
            return Err(Error::InvalidTime(t.as_f64()));
        }
        self.ring.check(self.params.gamma(), t)?;
        Ok(self.synthesize(self.initial.clone(), t, t))
    }
}

/// `ψ(k_j, 0)` from a discrete transform of the position-space initial state,
/// scaled by `1/√(2π)` to match the continuum normalization.
pub fn initial_spectrum<T: Real>(params: &WalkParams<T>, ring: RingSpec) -> Vec<Complex<T>> {
    let prop = SpectralPropagator::new(*params, ring);
    let scale = (T::lit(2.0) * T::PI()).sqrt().recip();
    prop.initial.iter().map(|c| *c * scale).collect()
}

/// Spectral evolution of the initial state to time `t` on `ring`.
pub fn propagate_spectral<T: Real>(
    params: &WalkParams<T>,
    ring: RingSpec,
    t: T,
) -> Result<WaveState<T>> {
    if !(t.is_finite() && t >= T::zero()) {
        return Err(Error::InvalidTime(t.as_f64()));
    }
    ring.check(params.gamma(), t)?;
    SpectralPropagator::new(*params, ring).propagate(t)
}
