use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ctqw_cli::config::{parse_alpha, parse_alpha_list, parse_f64_list};
use ctqw_cli::{
    emit_table, run_scenario, CliError, Command, FigureId, Format, RawConfig, ScenarioConfig,
};
use ctqw_core::{Source, Spacing};

/// Continuous-time quantum walk with complex hopping on a 1D chain.
///
/// All times (tmin, tmax, step) are dimensionless, in units of 1/gamma.
#[derive(Debug, Parser)]
#[command(name = "ctqw", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Amplitudes and site probabilities at gamma*t = tmax.
    Wavefunction,
    /// Mean position, MSD and survival on a time grid.
    Observables,
    /// Exact survival probability next to its long-time law.
    Survival,
    /// Observables at tmax over a grid of D and alpha values.
    Sweep,
    /// Data for one figure (fig1..fig5).
    Figure {
        #[arg(value_parser = |s: &str| s.parse::<FigureId>())]
        id: FigureId,
    },
    /// Cross-check the exact, spectral and RK4 solutions.
    Validate,
}

fn spacing(s: &str) -> Result<Spacing, String> {
    s.parse::<Spacing>().map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
struct Flags {
    /// Flat `key = value` file; flags given here take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    gamma: Option<f64>,
    /// Hopping phase; accepts multiples of pi such as `pi/2`.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_alpha)]
    alpha: Option<f64>,
    /// Delocalization D in [0, 1].
    #[arg(long, global = true)]
    dparam: Option<f64>,
    #[arg(long, global = true)]
    tmin: Option<f64>,
    #[arg(long, global = true)]
    tmax: Option<f64>,
    #[arg(long, global = true)]
    npoints: Option<usize>,
    /// lin or log.
    #[arg(long, global = true, value_parser = spacing)]
    spacing: Option<Spacing>,
    /// analytic, spectral or ode.
    #[arg(long, global = true, value_parser = |s: &str| s.parse::<Source>())]
    source: Option<Source>,
    /// csv or json.
    #[arg(long, global = true, value_parser = |s: &str| s.parse::<Format>())]
    format: Option<Format>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Lattice half-width override.
    #[arg(long, global = true)]
    half_width: Option<usize>,
    /// Ring size override for the spectral source.
    #[arg(long, global = true)]
    ring_size: Option<usize>,
    /// RK4 step override.
    #[arg(long, global = true)]
    step: Option<f64>,
    /// Comma-separated D values for sweep and figures.
    #[arg(long, global = true)]
    dvalues: Option<String>,
    /// Comma-separated phases for sweep and figures.
    #[arg(long, global = true, allow_hyphen_values = true)]
    alphas: Option<String>,
}

impl Flags {
    fn into_raw(self) -> Result<(Option<PathBuf>, RawConfig), CliError> {
        let flag = |name: &str, e: String| CliError::Config(format!("--{name}: {e}"));
        let dvalues = self
            .dvalues
            .map(|s| parse_f64_list(&s))
            .transpose()
            .map_err(|e| flag("dvalues", e))?;
        let alphas = self
            .alphas
            .map(|s| parse_alpha_list(&s))
            .transpose()
            .map_err(|e| flag("alphas", e))?;
        let raw = RawConfig {
            gamma: self.gamma,
            alpha: self.alpha,
            dparam: self.dparam,
            tmin: self.tmin,
            tmax: self.tmax,
            npoints: self.npoints,
            spacing: self.spacing,
            source: self.source,
            format: self.format,
            out: self.out,
            half_width: self.half_width,
            ring_size: self.ring_size,
            step: self.step,
            dvalues,
            alphas,
        };
        Ok((self.config, raw))
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("CTQW_THREADS") else {
        return Ok(());
    };
    let n: usize = value.trim().parse().map_err(|_| {
        CliError::Config(format!(
            "CTQW_THREADS must be a positive integer, got {value:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(format!("cannot set thread count: {e}")))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    configure_threads()?;
    let command = match cli.command {
        Sub::Wavefunction => Command::Wavefunction,
        Sub::Observables => Command::Observables,
        Sub::Survival => Command::Survival,
        Sub::Sweep => Command::Sweep,
        Sub::Figure { id } => Command::Figure(id),
        Sub::Validate => Command::Validate,
    };
    let (config_path, flags) = cli.flags.into_raw()?;
    let raw = match config_path {
        Some(path) => RawConfig::from_file(&path)?.merged(flags),
        None => flags,
    };
    let cfg = ScenarioConfig::resolve(command, raw)?;
    let outcome = run_scenario(&cfg)?;
    emit_table(&outcome.table, cfg.format, cfg.out.as_deref())?;
    if let Some(summary) = &outcome.summary {
        eprintln!("{summary}");
    }
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("ctqw: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
