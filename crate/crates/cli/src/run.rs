//! Experiment orchestration. Nothing here touches the filesystem.

use rayon::prelude::*;
use slitdiff_core::{
    compare_patterns, huygens_convergence, reconstruction_profile, smallarg_flatness_condition, AngleGrid,
    BandlimitConfig, ComparisonReport, Error, Experiment, Method, Normalization, Pattern, ProfilePoint,
};

use crate::config::{ConfigError, RunConfig, WaveScale};
use crate::Result;

/// Evaluates `method` on every grid angle in parallel, keeping grid order.
pub fn evaluate(exp: &Experiment, method: Method, grid: &AngleGrid, normalization: Normalization) -> Result<Pattern> {
    let amps = grid
        .thetas()
        .par_iter()
        .map(|&t| exp.amplitude(method, t))
        .collect::<slitdiff_core::Result<Vec<_>>>()?;
    Ok(Pattern::new(method, grid.clone(), amps, normalization)?.with_lambda_over_a(exp.lambda_over_a()))
}

/// One pattern per configured method, in configuration order.
pub fn run_pattern(cfg: &RunConfig) -> Result<Vec<Pattern>> {
    let exp = cfg.experiment()?;
    let grid = cfg.grid()?;
    cfg.methods
        .iter()
        .map(|&m| evaluate(&exp, m, &grid, cfg.normalization))
        .collect()
}

/// Reports for every unordered pair `(i, j)`, `i < j`, in method order.
pub fn pairwise_reports(patterns: &[Pattern]) -> Result<Vec<ComparisonReport>> {
    let mut out = Vec::new();
    for (i, p) in patterns.iter().enumerate() {
        for q in &patterns[i + 1..] {
            out.push(compare_patterns(p, q)?);
        }
    }
    Ok(out)
}

fn require_pairs(cfg: &RunConfig) -> Result<()> {
    if cfg.methods.len() < 2 {
        return Err(ConfigError {
            key: "methods".into(),
            line: None,
            message: "comparison needs at least two methods".into(),
        }
        .into());
    }
    Ok(())
}

/// Patterns for every method plus their pairwise comparison reports.
pub fn run_compare(cfg: &RunConfig) -> Result<(Vec<Pattern>, Vec<ComparisonReport>)> {
    require_pairs(cfg)?;
    let patterns = run_pattern(cfg)?;
    let reports = pairwise_reports(&patterns)?;
    Ok((patterns, reports))
}

/// Summary of one sweep cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub lambda_over_a: f64,
    /// Degrees.
    pub theta_max: f64,
    /// Source count used by Huygens methods in this cell, if any.
    pub huygens_n: Option<usize>,
    pub screen_distance: f64,
    /// Pair with the largest max-abs deviation.
    pub worst_pair: (Method, Method),
    pub max_abs_deviation: f64,
    /// Largest RMS deviation over all pairs.
    pub rms_deviation: f64,
    /// Huygens relative error against its continuum limit at the
    /// convergence angle; `None` without a Huygens method or where the limit
    /// vanishes.
    pub huygens_rel_error: Option<f64>,
}

/// The configuration for each sweep cell, outermost axis first:
/// `λ/a`, then `θ_max`, then `N`, then `L`. Empty axes keep the base value.
pub fn sweep_cells(cfg: &RunConfig) -> Vec<RunConfig> {
    fn axis<T: Copy>(values: &[T]) -> Vec<Option<T>> {
        if values.is_empty() {
            vec![None]
        } else {
            values.iter().copied().map(Some).collect()
        }
    }
    let mut cells = Vec::new();
    for lambda in axis(&cfg.sweep.lambda_over_a) {
        for theta in axis(&cfg.sweep.theta_max) {
            for n in axis(&cfg.sweep.huygens_n) {
                for l in axis(&cfg.sweep.screen_distance) {
                    let mut c = cfg.clone();
                    if let Some(x) = lambda {
                        c.wave = WaveScale::Wavelength(x * c.slit_width);
                    }
                    if let Some(t) = theta {
                        c.theta_max = t;
                    }
                    if let Some(n) = n {
                        for m in &mut c.methods {
                            if let Method::Huygens(_) = m {
                                *m = Method::Huygens(n);
                            }
                        }
                    }
                    if let Some(l) = l {
                        c.screen_distance = l;
                    }
                    cells.push(c);
                }
            }
        }
    }
    cells
}

fn huygens_n(cfg: &RunConfig) -> Option<usize> {
    cfg.methods.iter().find_map(|m| match m {
        Method::Huygens(n) => Some(*n),
        _ => None,
    })
}

fn sweep_cell(cell: &RunConfig) -> Result<SweepRow> {
    let (_, reports) = run_compare(cell)?;
    let worst = reports.iter().fold(&reports[0], |w, r| {
        if r.max_abs_deviation > w.max_abs_deviation {
            r
        } else {
            w
        }
    });
    let rms = reports.iter().map(|r| r.rms_deviation).fold(0.0, f64::max);
    let n = huygens_n(cell);
    let huygens_rel_error = match n {
        None => None,
        Some(n) => match huygens_convergence(
            cell.slit_width,
            cell.wavenumber(),
            &[n],
            cell.convergence_theta.to_radians(),
        ) {
            Ok(points) => Some(points[0].relative_error),
            Err(Error::ClosedFormZero { .. }) => None,
            Err(e) => return Err(e.into()),
        },
    };
    Ok(SweepRow {
        lambda_over_a: cell.lambda_over_a(),
        theta_max: cell.theta_max,
        huygens_n: n,
        screen_distance: cell.screen_distance,
        worst_pair: worst.methods,
        max_abs_deviation: worst.max_abs_deviation,
        rms_deviation: rms,
        huygens_rel_error,
    })
}

/// One row per cell, in [`sweep_cells`] order.
pub fn run_sweep(cfg: &RunConfig) -> Result<Vec<SweepRow>> {
    if cfg.sweep.is_empty() {
        return Err(ConfigError {
            key: "sweep_lambda_over_a".into(),
            line: None,
            message: "a sweep needs at least one sweep_* axis".into(),
        }
        .into());
    }
    require_pairs(cfg)?;
    sweep_cells(cfg).par_iter().map(sweep_cell).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandlimitRun {
    pub config: BandlimitConfig,
    pub profile: Vec<ProfilePoint>,
    /// `k_m a / π`.
    pub flatness: f64,
}

/// Reconstruction profile on `[−extent·a, extent·a]`.
pub fn run_bandlimit(cfg: &RunConfig) -> Result<BandlimitRun> {
    let bl = BandlimitConfig::new(cfg.slit_width, cfg.bandlimit.k_m)?;
    let half = cfg.bandlimit.extent * cfg.slit_width;
    let n = cfg.bandlimit.samples;
    let ys: Vec<f64> = (0..n)
        .map(|i| {
            // mirror the lower half exactly so the profile is symmetric
            let j = i.min(n - 1 - i);
            let y = -half + 2.0 * half * j as f64 / (n - 1) as f64;
            if 2 * i + 1 == n {
                0.0
            } else if i == j {
                y
            } else {
                -y
            }
        })
        .collect();
    let profile = reconstruction_profile(&bl, &ys)?;
    Ok(BandlimitRun {
        config: bl,
        profile,
        flatness: smallarg_flatness_condition(&bl),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub relative_error: f64,
    /// Error at the previous `N` over the error here.
    pub ratio: Option<f64>,
}

/// Huygens sum against its continuum limit for the configured `N` list.
pub fn run_convergence(cfg: &RunConfig) -> Result<Vec<ConvergenceRow>> {
    let points = huygens_convergence(
        cfg.slit_width,
        cfg.wavenumber(),
        &cfg.convergence_n,
        cfg.convergence_theta.to_radians(),
    )?;
    Ok(points
        .iter()
        .enumerate()
        .map(|(i, p)| ConvergenceRow {
            n: p.n,
            relative_error: p.relative_error,
            ratio: i.checked_sub(1).map(|j| points[j].relative_error / p.relative_error),
        })
        .collect())
}

/// `k sin θ` for the configured wave.
pub fn transverse_wavenumber(cfg: &RunConfig, theta: f64) -> f64 {
    cfg.wavenumber() * theta.sin()
}
