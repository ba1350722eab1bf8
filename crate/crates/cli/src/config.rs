//! Scenario configuration: a flat `key = value` file merged with
//! command-line flags (flags win), resolved against per-command defaults.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use ctqw_core::{Source, Spacing};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown format {other:?} (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
}

impl FromStr for FigureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fig1" => Ok(Self::Fig1),
            "fig2" => Ok(Self::Fig2),
            "fig3" => Ok(Self::Fig3),
            "fig4" => Ok(Self::Fig4),
            "fig5" => Ok(Self::Fig5),
            other => Err(format!("unknown figure {other:?} (expected fig1..fig5)")),
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self {
            Self::Fig1 => 1,
            Self::Fig2 => 2,
            Self::Fig3 => 3,
            Self::Fig4 => 4,
            Self::Fig5 => 5,
        };
        write!(f, "fig{n}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Wavefunction,
    Observables,
    Survival,
    Sweep,
    Figure(FigureId),
    Validate,
}

/// Parses a phase: a plain number or a multiple of `pi`, e.g. `pi/2`,
/// `-3pi/4`, `0.5*pi`.
pub fn parse_alpha(text: &str) -> Result<f64, String> {
    let s: String = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_lowercase();
    let bad = || format!("cannot parse phase {text:?}");
    let Some(pos) = s.find("pi") else {
        return s.parse::<f64>().map_err(|_| bad());
    };
    let coeff = s[..pos].trim_end_matches('*');
    let coeff = match coeff {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let rest = &s[pos + 2..];
    let denom = match rest.strip_prefix('/') {
        None if rest.is_empty() => 1.0,
        None => return Err(bad()),
        Some(d) => d.parse::<f64>().map_err(|_| bad())?,
    };
    if denom == 0.0 {
        return Err(bad());
    }
    Ok(coeff * PI / denom)
}

fn parse_list<T>(text: &str, item: impl Fn(&str) -> Result<T, String>) -> Result<Vec<T>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(item)
        .collect()
}

pub fn parse_f64_list(text: &str) -> Result<Vec<f64>, String> {
    parse_list(text, |s| {
        s.parse::<f64>().map_err(|_| format!("not a number: {s:?}"))
    })
}

pub fn parse_alpha_list(text: &str) -> Result<Vec<f64>, String> {
    parse_list(text, parse_alpha)
}

/// Every setting as optionally supplied by a config file or flags.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    pub gamma: Option<f64>,
    pub alpha: Option<f64>,
    pub dparam: Option<f64>,
    pub tmin: Option<f64>,
    pub tmax: Option<f64>,
    pub npoints: Option<usize>,
    pub spacing: Option<Spacing>,
    pub source: Option<Source>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub half_width: Option<usize>,
    pub ring_size: Option<usize>,
    pub step: Option<f64>,
    pub dvalues: Option<Vec<f64>>,
    pub alphas: Option<Vec<f64>>,
}

impl RawConfig {
    /// Sets one key from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn num<T: FromStr>(key: &str, v: &str) -> Result<T, String> {
            v.parse::<T>()
                .map_err(|_| format!("invalid value {v:?} for {key}"))
        }
        match key {
            "gamma" => self.gamma = Some(num(key, value)?),
            "alpha" => self.alpha = Some(parse_alpha(value)?),
            "dparam" => self.dparam = Some(num(key, value)?),
            "tmin" => self.tmin = Some(num(key, value)?),
            "tmax" => self.tmax = Some(num(key, value)?),
            "npoints" => self.npoints = Some(num(key, value)?),
            "spacing" => {
                self.spacing = Some(value.parse().map_err(|e: ctqw_core::Error| e.to_string())?)
            }
            "source" => self.source = Some(value.parse()?),
            "format" => self.format = Some(value.parse()?),
            "out" => self.out = Some(PathBuf::from(value)),
            "half_width" => self.half_width = Some(num(key, value)?),
            "ring_size" => self.ring_size = Some(num(key, value)?),
            "step" => self.step = Some(num(key, value)?),
            "dvalues" => self.dvalues = Some(parse_f64_list(value)?),
            "alphas" => self.alphas = Some(parse_alpha_list(value)?),
            other => return Err(format!("unknown key {other:?}")),
        }
        Ok(())
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse_file_contents(text: &str, origin: &str) -> Result<Self, CliError> {
        let mut raw = Self::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Config(format!(
                    "{origin}:{}: expected `key = value`, got {line:?}",
                    i + 1
                )));
            };
            raw.set(key.trim(), value.trim())
                .map_err(|e| CliError::Config(format!("{origin}:{}: {e}", i + 1)))?;
        }
        Ok(raw)
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse_file_contents(&text, &path.display().to_string())
    }

    /// Fields set in `over` replace those in `self`.
    pub fn merged(self, over: RawConfig) -> Self {
        Self {
            gamma: over.gamma.or(self.gamma),
            alpha: over.alpha.or(self.alpha),
            dparam: over.dparam.or(self.dparam),
            tmin: over.tmin.or(self.tmin),
            tmax: over.tmax.or(self.tmax),
            npoints: over.npoints.or(self.npoints),
            spacing: over.spacing.or(self.spacing),
            source: over.source.or(self.source),
            format: over.format.or(self.format),
            out: over.out.or(self.out),
            half_width: over.half_width.or(self.half_width),
            ring_size: over.ring_size.or(self.ring_size),
            step: over.step.or(self.step),
            dvalues: over.dvalues.or(self.dvalues),
            alphas: over.alphas.or(self.alphas),
        }
    }
}

/// Fully resolved scenario. Times are dimensionless `γt` throughout.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub command: Command,
    pub gamma: f64,
    pub alpha: f64,
    pub dparam: f64,
    pub tmin: f64,
    pub tmax: f64,
    pub npoints: usize,
    pub spacing: Spacing,
    pub source: Source,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub half_width: Option<usize>,
    pub ring_size: Option<usize>,
    pub step: Option<f64>,
    pub dvalues: Vec<f64>,
    pub alphas: Vec<f64>,
}

fn even_grid(n: usize) -> Vec<f64> {
    (0..=n).map(|i| i as f64 / n as f64).collect()
}

impl ScenarioConfig {
    /// Fills unset fields with the command's defaults; figures default to
    /// their caption parameters.
    pub fn resolve(command: Command, raw: RawConfig) -> Result<Self, CliError> {
        use FigureId::*;
        let (alpha, dparam, tmin, tmax, npoints, spacing, dvalues, alphas) = match command {
            Command::Figure(Fig1) => (
                FRAC_PI_2,
                0.5,
                0.0,
                50.0,
                2,
                Spacing::Linear,
                vec![0.0, 0.5, 1.0],
                vec![],
            ),
            Command::Figure(Fig2) => (
                FRAC_PI_2,
                0.5,
                0.0,
                1.0,
                2,
                Spacing::Linear,
                even_grid(100),
                vec![PI / 8.0, PI / 4.0, 3.0 * PI / 8.0, FRAC_PI_2],
            ),
            Command::Figure(Fig3) => (
                0.0,
                0.5,
                0.0,
                3.0,
                301,
                Spacing::Linear,
                vec![0.0, 0.5, 1.0],
                vec![0.0, FRAC_PI_2],
            ),
            Command::Figure(Fig4) => (0.0, 0.5, 0.0, 1.0, 201, Spacing::Linear, vec![], vec![]),
            Command::Figure(Fig5) => (
                FRAC_PI_2,
                1.0,
                0.1,
                500.0,
                400,
                Spacing::Logarithmic,
                vec![],
                vec![],
            ),
            Command::Sweep => (
                0.0,
                0.5,
                0.0,
                10.0,
                2,
                Spacing::Linear,
                even_grid(10),
                vec![],
            ),
            Command::Survival => (
                0.0,
                0.5,
                0.1,
                100.0,
                200,
                Spacing::Logarithmic,
                vec![],
                vec![],
            ),
            _ => (0.0, 0.5, 0.0, 10.0, 101, Spacing::Linear, vec![], vec![]),
        };
        let alpha = raw.alpha.unwrap_or(alpha);
        let cfg = Self {
            command,
            gamma: raw.gamma.unwrap_or(1.0),
            alpha,
            dparam: raw.dparam.unwrap_or(dparam),
            tmin: raw.tmin.unwrap_or(tmin),
            tmax: raw.tmax.unwrap_or(tmax),
            npoints: raw.npoints.unwrap_or(npoints),
            spacing: raw.spacing.unwrap_or(spacing),
            source: raw.source.unwrap_or(Source::Analytic),
            format: raw.format.unwrap_or(Format::Csv),
            out: raw.out,
            half_width: raw.half_width,
            ring_size: raw.ring_size,
            step: raw.step,
            dvalues: raw.dvalues.unwrap_or(dvalues),
            alphas: raw.alphas.unwrap_or_else(|| {
                if alphas.is_empty() {
                    vec![alpha]
                } else {
                    alphas
                }
            }),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        let fail = |m: String| Err(CliError::Config(m));
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return fail(format!("gamma must be positive, got {}", self.gamma));
        }
        if !(0.0..=1.0).contains(&self.dparam) {
            return fail(format!("dparam must lie in [0, 1], got {}", self.dparam));
        }
        if let Some(d) = self.dvalues.iter().find(|d| !(0.0..=1.0).contains(*d)) {
            return fail(format!("dvalues entry {d} outside [0, 1]"));
        }
        if self.npoints < 2 {
            return fail(format!("npoints must be at least 2, got {}", self.npoints));
        }
        if !(self.tmin >= 0.0 && self.tmax > self.tmin && self.tmax.is_finite()) {
            return fail(format!(
                "need 0 <= tmin < tmax, got tmin={} tmax={}",
                self.tmin, self.tmax
            ));
        }
        if self.spacing == Spacing::Logarithmic && self.tmin <= 0.0 {
            return fail("log spacing requires tmin > 0".into());
        }
        Ok(())
    }

    /// Physical time corresponding to dimensionless `gamma_t`.
    pub fn physical(&self, gamma_t: f64) -> f64 {
        gamma_t / self.gamma
    }
}
