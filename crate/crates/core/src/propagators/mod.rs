//! Numerical evolutions that serve as independent checks on the closed form:
//! exact spectral propagation on a periodic ring, and fixed-step RK4
//! integration of the truncated Schrödinger equation.

mod ode;
mod spectral;

pub use ode::{propagate_ode, propagate_ode_series, OdeSpec};
pub use spectral::{initial_spectrum, propagate_spectral, RingSpec, SpectralPropagator};
