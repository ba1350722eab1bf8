//! Scenario runner behind the `ctqw` binary: configuration, figure data,
//! the oracle validation suite, and CSV/JSON emission.

pub mod config;
pub mod figures;
pub mod scenario;
pub mod table;
pub mod validate;

use std::path::PathBuf;

use thiserror::Error;

pub use config::{Command, FigureId, Format, RawConfig, ScenarioConfig};
pub use scenario::{run_scenario, Outcome};
pub use table::{emit_table, Cell, Table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical error: {0}")]
    Numerical(ctqw_core::Error),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 1 for I/O, 2 for configuration, 3 for numerical validation failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io { .. } => 1,
            Self::Config(_) => 2,
            Self::Numerical(_) => 3,
        }
    }
}

impl From<ctqw_core::Error> for CliError {
    fn from(e: ctqw_core::Error) -> Self {
        use ctqw_core::Error as E;
        match e {
            E::InvalidGamma(_)
            | E::InvalidAlpha(_)
            | E::InvalidDelocalization(_)
            | E::EmptyWindow
            | E::InvalidTime(_)
            | E::InvalidStep(_)
            | E::InvalidGrid(_)
            | E::InvalidDValues(_)
            | E::InvalidFitWindow { .. } => Self::Config(e.to_string()),
            other => Self::Numerical(other),
        }
    }
}
