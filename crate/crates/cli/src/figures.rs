//! Data behind the five figures, at their caption parameters unless
//! overridden.

use ctqw_core::{crossing_time, mean_velocity, msd_closed_form, ObservableSeries, WalkParams64};
use rayon::prelude::*;

use crate::config::{FigureId, ScenarioConfig};
use crate::scenario::{grid, params, push_wave_rows, settings, state_at, survival};
use crate::table::{Cell, Table};
use crate::CliError;

pub fn run(cfg: &ScenarioConfig, id: FigureId) -> Result<Table, CliError> {
    match id {
        FigureId::Fig1 => fig1(cfg),
        FigureId::Fig2 => fig2(cfg),
        FigureId::Fig3 => fig3(cfg),
        FigureId::Fig4 => Ok(fig4()),
        FigureId::Fig5 => survival(cfg, cfg.dparam, cfg.alpha),
    }
}

/// Site distributions at `γt = tmax` for each `D`, one panel per value.
fn fig1(cfg: &ScenarioConfig) -> Result<Table, CliError> {
    let panels = cfg
        .dvalues
        .par_iter()
        .map(|&d| state_at(cfg, d, cfg.alpha, cfg.tmax).map(|s| (d, s)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(&["dparam", "x", "prob", "re_psi", "im_psi"]);
    for (d, state) in &panels {
        push_wave_rows(&mut table, &[Cell::Real(*d)], state);
    }
    Ok(table)
}

/// Drift speed `|⟨v_g⟩/γ|` against `D` for each phase.
fn fig2(cfg: &ScenarioConfig) -> Result<Table, CliError> {
    let mut table = Table::new(&["alpha", "dparam", "abs_v_over_gamma"]);
    for &a in &cfg.alphas {
        for &d in &cfg.dvalues {
            let p = params(cfg, d, a)?;
            table.push(vec![
                a.into(),
                d.into(),
                (mean_velocity(&p) / cfg.gamma).abs().into(),
            ]);
        }
    }
    Ok(table)
}

/// MSD against `γt`, computed from the chosen source next to the closed form.
fn fig3(cfg: &ScenarioConfig) -> Result<Table, CliError> {
    let scaled = grid(cfg)?;
    let times: Vec<f64> = scaled.iter().map(|&s| cfg.physical(s)).collect();
    let panels: Vec<(f64, f64)> = cfg
        .alphas
        .iter()
        .flat_map(|&a| cfg.dvalues.iter().map(move |&d| (a, d)))
        .collect();
    let series = panels
        .par_iter()
        .map(|&(a, d)| {
            let p = params(cfg, d, a)?;
            let s = ObservableSeries::compute(&p, &times, cfg.source, &settings(cfg))?;
            Ok((p, s))
        })
        .collect::<Result<Vec<(WalkParams64, ObservableSeries<f64>)>, CliError>>()?;
    let mut table = Table::new(&["alpha", "dparam", "t", "msd", "msd_closed_form"]);
    for ((a, d), (p, s)) in panels.iter().zip(&series) {
        for (i, &g) in scaled.iter().enumerate() {
            table.push(vec![
                (*a).into(),
                (*d).into(),
                g.into(),
                s.msd[i].into(),
                msd_closed_form(p, times[i]).into(),
            ]);
        }
    }
    Ok(table)
}

/// `γ t_cross` over `α = jπ/200`, `j = 0..=200`.
fn fig4() -> Table {
    let mut table = Table::new(&["alpha", "t_cross", "regime"]);
    for j in 0..=200 {
        let a = j as f64 * std::f64::consts::PI / 200.0;
        let (t, regime) = match crossing_time(a) {
            Some(t) => (t, "crossing"),
            None => (f64::INFINITY, "no_crossing"),
        };
        table.push(vec![a.into(), t.into(), regime.into()]);
    }
    table
}
