//! Continuous-time quantum walks on a one-dimensional chain with complex
//! hopping `-γ e^{±iα}`, started from the tunable three-site state
//! `√(1-D)|0⟩ + √(D/2)(|1⟩ + |-1⟩)`.
//!
//! The crate provides the exact Bessel-function solution, two independent
//! numerical propagators (spectral on a ring, RK4 on a truncated chain), and
//! the transport observables derived from them: drift, mean square
//! displacement, MSD crossing time, survival probability and its decay
//! exponent.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`). The `*64`
//! aliases below name the double-precision instantiations used by the CLI.

pub mod analytic;
pub mod bessel;
mod error;
pub mod fit;
pub mod grid;
pub mod model;
pub mod observables;
pub mod propagators;
mod real;

pub use analytic::{
    analytic_probability, analytic_wavefunction, is_fine_tuned, survival_asymptotic, survival_at,
    survival_exact, survival_mean_asymptotic, SurvivalCurve,
};
pub use bessel::{bessel_row, BesselRow};
pub use error::{Error, Result};
pub use fit::{fit_power_law, moving_average, PowerLawFit};
pub use grid::{Spacing, TimeGrid};
pub use model::{
    dispersion, group_velocity, initial_state_momentum, initial_state_position,
    required_half_width, LatticeWindow, WalkParams, WaveState,
};
pub use observables::{
    backfire_ordering, crossing_time, evolve, mean_velocity, msd_closed_form,
    observables_from_state, BackfireReport, Moments, MsdOrdering, ObservableSeries,
    PropagatorSettings, Source,
};
pub use propagators::{
    initial_spectrum, propagate_ode, propagate_ode_series, propagate_spectral, OdeSpec, RingSpec,
    SpectralPropagator,
};
pub use real::Real;

pub type WalkParams64 = WalkParams<f64>;
pub type WaveState64 = WaveState<f64>;
pub type BesselRow64 = BesselRow<f64>;
pub type SurvivalCurve64 = SurvivalCurve<f64>;
pub type ObservableSeries64 = ObservableSeries<f64>;
pub type PowerLawFit64 = PowerLawFit<f64>;
pub type TimeGrid64 = TimeGrid<f64>;
pub type OdeSpec64 = OdeSpec<f64>;

pub type WalkParams32 = WalkParams<f32>;
pub type WaveState32 = WaveState<f32>;
pub type BesselRow32 = BesselRow<f32>;
