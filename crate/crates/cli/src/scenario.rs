//! Dispatch from a resolved [`ScenarioConfig`] to the computed table.

use ctqw_core::{
    crossing_time, evolve, mean_velocity, observables_from_state, survival_asymptotic,
    survival_exact, LatticeWindow, ObservableSeries, PropagatorSettings, TimeGrid64, WalkParams64,
    WaveState64,
};
use rayon::prelude::*;

use crate::config::{Command, ScenarioConfig};
use crate::table::{Cell, Table};
use crate::{figures, validate, CliError};

/// Result of one scenario. `passed` is false only when `validate` finds a
/// deviation above tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub table: Table,
    pub passed: bool,
    pub summary: Option<String>,
}

impl From<Table> for Outcome {
    fn from(table: Table) -> Self {
        Self {
            table,
            passed: true,
            summary: None,
        }
    }
}

pub fn run_scenario(cfg: &ScenarioConfig) -> Result<Outcome, CliError> {
    match cfg.command {
        Command::Wavefunction => wavefunction(cfg).map(Outcome::from),
        Command::Observables => observables(cfg).map(Outcome::from),
        Command::Survival => survival(cfg, cfg.dparam, cfg.alpha).map(Outcome::from),
        Command::Sweep => sweep(cfg).map(Outcome::from),
        Command::Figure(id) => figures::run(cfg, id).map(Outcome::from),
        Command::Validate => validate::run(cfg),
    }
}

pub(crate) fn params(
    cfg: &ScenarioConfig,
    dparam: f64,
    alpha: f64,
) -> Result<WalkParams64, CliError> {
    Ok(WalkParams64::new(cfg.gamma, alpha, dparam)?)
}

/// Overrides with the step converted from units of `1/γ`.
pub(crate) fn settings(cfg: &ScenarioConfig) -> PropagatorSettings<f64> {
    PropagatorSettings {
        half_width: cfg.half_width,
        ring_size: cfg.ring_size,
        step: cfg.step.map(|h| cfg.physical(h)),
    }
}

/// Sample times in `γt`.
pub(crate) fn grid(cfg: &ScenarioConfig) -> Result<Vec<f64>, CliError> {
    Ok(
        TimeGrid64::new(cfg.spacing, cfg.tmin, cfg.tmax, cfg.npoints)?
            .points()
            .to_vec(),
    )
}

/// One state at `γt = gamma_t` on the light-cone window (or the
/// `half_width` override), whatever lattice the source used internally.
pub(crate) fn state_at(
    cfg: &ScenarioConfig,
    dparam: f64,
    alpha: f64,
    gamma_t: f64,
) -> Result<WaveState64, CliError> {
    let p = params(cfg, dparam, alpha)?;
    let t = cfg.physical(gamma_t);
    let mut states = evolve(&p, &[t], cfg.source, &settings(cfg))?;
    let state = states.pop().expect("one requested time");
    let window = match cfg.half_width {
        Some(w) => LatticeWindow::new(w)?,
        None => LatticeWindow::light_cone(cfg.gamma, t),
    };
    Ok(state.restricted(window))
}

pub(crate) fn push_wave_rows(table: &mut Table, prefix: &[Cell], state: &WaveState64) {
    for (x, a) in state.window().sites().zip(state.amplitudes()) {
        let mut row = prefix.to_vec();
        row.extend([Cell::Int(x), a.norm_sqr().into(), a.re.into(), a.im.into()]);
        table.push(row);
    }
}

fn wavefunction(cfg: &ScenarioConfig) -> Result<Table, CliError> {
    let state = state_at(cfg, cfg.dparam, cfg.alpha, cfg.tmax)?;
    let mut table = Table::new(&["x", "prob", "re_psi", "im_psi"]);
    push_wave_rows(&mut table, &[], &state);
    Ok(table)
}

fn observables(cfg: &ScenarioConfig) -> Result<Table, CliError> {
    let p = params(cfg, cfg.dparam, cfg.alpha)?;
    let scaled = grid(cfg)?;
    let times: Vec<f64> = scaled.iter().map(|&s| cfg.physical(s)).collect();
    let series = ObservableSeries::compute(&p, &times, cfg.source, &settings(cfg))?;
    let mut table = Table::new(&["t", "mean_x", "msd", "survival"]);
    for (i, &s) in scaled.iter().enumerate() {
        table.push(vec![
            s.into(),
            series.mean_position[i].into(),
            series.msd[i].into(),
            series.survival[i].into(),
        ]);
    }
    Ok(table)
}

/// Exact survival next to the long-time law; the law diverges at `t = 0`.
pub(crate) fn survival(cfg: &ScenarioConfig, dparam: f64, alpha: f64) -> Result<Table, CliError> {
    let p = params(cfg, dparam, alpha)?;
    let scaled = grid(cfg)?;
    let times: Vec<f64> = scaled.iter().map(|&s| cfg.physical(s)).collect();
    let curve = survival_exact(&p, &times)?;
    let mut table = Table::new(&["t", "P_surv_exact", "P_asymptotic"]);
    for ((&s, &t), &v) in scaled.iter().zip(&times).zip(curve.values()) {
        let law = if t > 0.0 {
            survival_asymptotic(&p, t)?
        } else {
            f64::INFINITY
        };
        table.push(vec![s.into(), v.into(), law.into()]);
    }
    Ok(table)
}

fn sweep(cfg: &ScenarioConfig) -> Result<Table, CliError> {
    let points: Vec<(f64, f64)> = cfg
        .dvalues
        .iter()
        .flat_map(|&d| cfg.alphas.iter().map(move |&a| (d, a)))
        .collect();
    let rows = points
        .par_iter()
        .map(|&(d, a)| -> Result<Vec<Cell>, CliError> {
            let p = params(cfg, d, a)?;
            let m = observables_from_state(&state_at(cfg, d, a, cfg.tmax)?)?;
            let t_cross = crossing_time(a).unwrap_or(f64::INFINITY);
            Ok(vec![
                d.into(),
                a.into(),
                mean_velocity(&p).into(),
                m.mean_position.into(),
                m.msd.into(),
                m.survival.into(),
                t_cross.into(),
            ])
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(&[
        "dparam",
        "alpha",
        "mean_velocity",
        "mean_x",
        "msd",
        "survival",
        "t_cross",
    ]);
    rows.into_iter().for_each(|r| table.push(r));
    Ok(table)
}
