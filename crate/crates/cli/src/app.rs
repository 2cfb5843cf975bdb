//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{ConfigError, Layer, RunConfig};
use crate::output::{self, emit};
use crate::plot;
use crate::run;
use crate::{HarnessError, Result};

#[derive(Debug, Parser)]
#[command(name = "slitdiff", version, about = "Scalar diffraction by single and double slits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Intensity pattern for each method
    Pattern(Flags),
    /// Pairwise comparison of the methods' peak-normalized patterns
    Compare(Flags),
    /// Comparison summaries over a grid of regimes
    Sweep(Flags),
    /// Band-limited reconstruction of the slit wavefunction
    Bandlimit(Flags),
    /// Huygens sum convergence toward its continuum limit
    Convergence(Flags),
}

impl Command {
    fn flags(&self) -> &Flags {
        match self {
            Command::Pattern(f)
            | Command::Compare(f)
            | Command::Sweep(f)
            | Command::Bandlimit(f)
            | Command::Convergence(f) => f,
        }
    }
}

/// Flags shared by every subcommand. Values are validated together with the
/// config file so errors name the same keys.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Config file of `key = value` lines
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Methods: marcella, fraunhofer, huygens:N, kirchhoff:VARIANT or all
    #[arg(long, value_name = "NAME[,...]")]
    pub method: Option<String>,
    #[arg(long, value_name = "X", conflicts_with = "wavenumber")]
    pub wavelength: Option<String>,
    #[arg(long, value_name = "X")]
    pub wavenumber: Option<String>,
    #[arg(long, value_name = "X")]
    pub slit_width: Option<String>,
    #[arg(long, value_name = "1|2")]
    pub slits: Option<String>,
    /// Center-to-center slit separation
    #[arg(long, value_name = "X")]
    pub separation: Option<String>,
    #[arg(long, value_name = "X")]
    pub screen_distance: Option<String>,
    /// Half-width of the angle grid in degrees
    #[arg(long, value_name = "DEG")]
    pub theta_max: Option<String>,
    #[arg(long, value_name = "N")]
    pub samples: Option<String>,
    #[arg(long, value_name = "raw|peak|probability")]
    pub normalize: Option<String>,
    /// Output file (a directory for `pattern`); stdout when absent
    #[arg(long, value_name = "PATH")]
    pub output: Option<String>,
    #[arg(long, value_name = "csv|json")]
    pub format: Option<String>,
    /// SVG plot path; the plotted points go to a CSV next to it
    #[arg(long, value_name = "PATH")]
    pub plot: Option<String>,
}

impl Flags {
    /// The command-line layer of the configuration.
    pub fn layer(&self) -> std::result::Result<Layer, ConfigError> {
        let mut layer = Layer::default();
        let pairs = [
            ("methods", &self.method),
            ("wavelength", &self.wavelength),
            ("wavenumber", &self.wavenumber),
            ("slit_width", &self.slit_width),
            ("slits", &self.slits),
            ("separation", &self.separation),
            ("screen_distance", &self.screen_distance),
            ("theta_max", &self.theta_max),
            ("samples", &self.samples),
            ("normalize", &self.normalize),
            ("output", &self.output),
            ("format", &self.format),
            ("plot", &self.plot),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                layer.set(key, v.as_str())?;
            }
        }
        Ok(layer)
    }

    pub fn resolve(&self) -> Result<RunConfig> {
        let file = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
                Layer::parse(&text)?
            }
            None => Layer::default(),
        };
        Ok(RunConfig::from_layers(&file, &self.layer()?)?)
    }
}

/// Runs one parsed command, writing unnamed outputs to `stdout`.
pub fn execute(command: &Command, cfg: &RunConfig, stdout: &mut dyn Write) -> Result<()> {
    let k = cfg.wavenumber();
    match command {
        Command::Pattern(_) => {
            let patterns = run::run_pattern(cfg)?;
            match &cfg.output {
                Some(dir) => {
                    output::write_pattern_dir(dir, &patterns, k, cfg.format)?;
                }
                None if patterns.len() == 1 => {
                    emit(None, stdout, |w| output::write_pattern(w, &patterns[0], k, cfg.format))?;
                }
                None => {
                    return Err(ConfigError {
                        key: "output".into(),
                        line: None,
                        message: "several methods need an output directory".into(),
                    }
                    .into())
                }
            }
            if let Some(p) = &cfg.plot {
                plot::write_plot(&plot::pattern_figure(&patterns), p)?;
            }
        }
        Command::Compare(_) => {
            let (patterns, reports) = run::run_compare(cfg)?;
            emit(cfg.output.as_deref(), stdout, |w| {
                output::write_reports(w, &reports, cfg.format)
            })?;
            if let Some(p) = &cfg.plot {
                plot::write_plot(&plot::pattern_figure(&patterns), p)?;
            }
        }
        Command::Sweep(_) => {
            let rows = run::run_sweep(cfg)?;
            emit(cfg.output.as_deref(), stdout, |w| {
                output::write_sweep(w, &rows, cfg.format)
            })?;
            if let Some(p) = &cfg.plot {
                plot::write_plot(&plot::sweep_figure(&rows), p)?;
            }
        }
        Command::Bandlimit(_) => {
            let result = run::run_bandlimit(cfg)?;
            emit(cfg.output.as_deref(), stdout, |w| {
                output::write_bandlimit(w, &result, cfg.format)
            })?;
            if let Some(p) = &cfg.plot {
                plot::write_plot(&plot::bandlimit_figure(&result), p)?;
            }
        }
        Command::Convergence(_) => {
            let rows = run::run_convergence(cfg)?;
            emit(cfg.output.as_deref(), stdout, |w| {
                output::write_convergence(w, &rows, cfg.format)
            })?;
            if let Some(p) = &cfg.plot {
                plot::write_plot(&plot::convergence_figure(&rows), p)?;
            }
        }
    }
    Ok(())
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = cli
        .command
        .flags()
        .resolve()
        .and_then(|cfg| execute(&cli.command, &cfg, stdout));
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "slitdiff: {e}");
            e.exit_code()
        }
    }
}
