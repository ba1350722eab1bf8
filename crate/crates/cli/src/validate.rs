//! Oracle triangle: the exact solution, the spectral propagator and RK4
//! must agree site by site on a fixed grid of parameters and times.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6};

use ctqw_core::{
    analytic_probability, propagate_ode_series, LatticeWindow, OdeSpec, RingSpec,
    SpectralPropagator, WalkParams64, WaveState64,
};
use rayon::prelude::*;

use crate::config::ScenarioConfig;
use crate::scenario::Outcome;
use crate::table::{Cell, Table};
use crate::CliError;

pub const D_VALUES: [f64; 4] = [0.0, 0.3, 0.5, 1.0];
pub const ALPHAS: [f64; 4] = [0.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_2];
/// Dimensionless times `γt`.
pub const TIMES: [f64; 3] = [1.0, 10.0, 50.0];
pub const SPECTRAL_TOL: f64 = 1e-10;
pub const ODE_TOL: f64 = 1e-8;

/// Maximum site-wise probability deviations at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrianglePoint {
    pub dparam: f64,
    pub alpha: f64,
    pub gamma_t: f64,
    pub spectral: f64,
    pub ode: f64,
    pub spectral_ode: f64,
}

impl TrianglePoint {
    pub fn passed(&self) -> bool {
        self.spectral < SPECTRAL_TOL && self.ode < ODE_TOL && self.spectral_ode < ODE_TOL
    }
}

fn max_dev(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn probabilities(state: &WaveState64, window: LatticeWindow) -> Vec<f64> {
    state.restricted(window).probabilities()
}

/// Runs the whole grid at hopping rate `gamma`; each `(D, α)` pair evolves
/// once through all three times.
pub fn oracle_triangle(gamma: f64) -> Result<Vec<TrianglePoint>, CliError> {
    let pairs: Vec<(f64, f64)> = D_VALUES
        .iter()
        .flat_map(|&d| ALPHAS.iter().map(move |&a| (d, a)))
        .collect();
    let t_last = TIMES[TIMES.len() - 1] / gamma;
    let times: Vec<f64> = TIMES.iter().map(|s| s / gamma).collect();
    let blocks = pairs
        .par_iter()
        .map(|&(d, a)| -> Result<Vec<TrianglePoint>, CliError> {
            let p = WalkParams64::new(gamma, a, d)?;
            let window = LatticeWindow::light_cone(gamma, t_last);
            let ode = propagate_ode_series(&p, window, OdeSpec::for_gamma(gamma), &times)?;
            let spectral = SpectralPropagator::new(p, RingSpec::for_time(gamma, t_last));
            let mut out = Vec::with_capacity(times.len());
            for (i, &t) in times.iter().enumerate() {
                let exact = analytic_probability(&p, window, t)?;
                let spec = probabilities(&spectral.propagate(t)?, window);
                let rk = probabilities(&ode[i], window);
                out.push(TrianglePoint {
                    dparam: d,
                    alpha: a,
                    gamma_t: TIMES[i],
                    spectral: max_dev(&exact, &spec),
                    ode: max_dev(&exact, &rk),
                    spectral_ode: max_dev(&spec, &rk),
                });
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(blocks.into_iter().flatten().collect())
}

pub fn run(cfg: &ScenarioConfig) -> Result<Outcome, CliError> {
    let points = oracle_triangle(cfg.gamma)?;
    let mut table = Table::new(&[
        "dparam",
        "alpha",
        "t",
        "dev_spectral",
        "dev_ode",
        "dev_spectral_ode",
        "status",
    ]);
    for p in &points {
        table.push(vec![
            p.dparam.into(),
            p.alpha.into(),
            p.gamma_t.into(),
            p.spectral.into(),
            p.ode.into(),
            p.spectral_ode.into(),
            Cell::from(if p.passed() { "pass" } else { "fail" }),
        ]);
    }
    let passed = points.iter().filter(|p| p.passed()).count();
    let worst = |f: fn(&TrianglePoint) -> f64| points.iter().map(f).fold(0.0, f64::max);
    let summary = format!(
        "oracle triangle: {passed}/{} points pass (max spectral {:.2e} < {SPECTRAL_TOL:e}, max ode {:.2e} < {ODE_TOL:e})",
        points.len(),
        worst(|p| p.spectral),
        worst(|p| p.ode.max(p.spectral_ode)),
    );
    Ok(Outcome {
        table,
        passed: passed == points.len(),
        summary: Some(summary),
    })
}
