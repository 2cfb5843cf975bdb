//! Harness for slit diffraction experiments: configuration, orchestration
//! of patterns, comparisons, sweeps and convergence studies, and emission of
//! CSV, JSON and SVG files.
//!
//! Evaluation runs in parallel over grid points and sweep cells, but every
//! result is collected in input order, so output files depend only on the
//! configuration.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;

pub mod app;
pub mod config;
pub mod output;
pub mod plot;
pub mod run;

pub use config::{ConfigError, Format, Layer, RunConfig, WaveScale};
pub use run::{
    run_bandlimit, run_compare, run_convergence, run_pattern, run_sweep, BandlimitRun, ConvergenceRow, SweepRow,
};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(#[from] ConfigError),
    #[error("numerical error: {0}")]
    Numerical(#[from] slitdiff_core::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {message}", path.display())]
    Parse { path: PathBuf, message: String },
}

impl HarnessError {
    /// 1 for configuration and I/O problems, 2 for numerical preconditions.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Numerical(_) => 2,
            _ => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
