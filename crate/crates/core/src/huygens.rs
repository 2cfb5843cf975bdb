//! Discrete Huygens wavelet sum across a slit and its continuum limit.
//!
//! A slit of width `a` carries sources at `n = −N..=N` with phase
//! `α_n sin θ`, `α_n = (ka/2)(n/N)`, for parallel rays toward a distant
//! screen. Overall constants (source strength, time factor) are fixed to 1.

use num_complex::Complex64;

use crate::aperture::ApertureSpec;
use crate::error::{invalid, Error, Result};
use crate::special::sinc;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HuygensConfig {
    a: f64,
    k: f64,
    n: usize,
}

impl HuygensConfig {
    pub fn new(a: f64, k: f64, n: usize) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(invalid("a", format!("slit width must be positive, got {a}")));
        }
        if !(k.is_finite() && k > 0.0) {
            return Err(invalid("k", format!("wavenumber must be positive, got {k}")));
        }
        if n < 1 {
            return Err(invalid("n", "need at least one source on each side"));
        }
        Ok(Self { a, k, n })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Spacing `Δα = ka / (2N)` between adjacent source phases.
    pub fn delta_alpha(&self) -> f64 {
        self.k * self.a / (2 * self.n) as f64
    }
}

/// `Σ_{n=−N}^{N} e^{i α_n sin θ} Δα`.
///
/// Terms `±n` are added as a pair first, so the result is exactly invariant
/// under `n → −n` and its imaginary part is exactly zero.
pub fn huygens_sum(cfg: &HuygensConfig, theta: f64) -> Complex64 {
    let s = theta.sin();
    let step = 0.5 * cfg.k * cfg.a / cfg.n as f64;
    let mut acc = Complex64::new(1.0, 0.0);
    for n in 1..=cfg.n {
        let z = Complex64::from_polar(1.0, step * n as f64 * s);
        acc += z + z.conj();
    }
    acc * cfg.delta_alpha()
}

/// Huygens sum over every slit of an aperture, each slit with `2n + 1`
/// sources and a phase `e^{ik c sin θ}` for its center `c`.
pub fn huygens_aperture_sum(ap: &ApertureSpec, k: f64, n: usize, theta: f64) -> Result<Complex64> {
    let s = theta.sin();
    let mut acc = Complex64::new(0.0, 0.0);
    for slit in ap.slits() {
        let cfg = HuygensConfig::new(slit.width, k, n)?;
        acc += huygens_sum(&cfg, theta) * Complex64::from_polar(1.0, k * slit.center * s);
    }
    Ok(acc)
}

/// Continuum limit `2 sin((ka/2) sin θ) / sin θ`, equal to `ka` at `θ = 0`.
pub fn huygens_closed_form(a: f64, k: f64, theta: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(invalid("a", format!("slit width must be positive, got {a}")));
    }
    if !(k > 0.0) {
        return Err(invalid("k", format!("wavenumber must be positive, got {k}")));
    }
    let ka = k * a;
    Ok(ka * sinc(0.5 * ka * theta.sin()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergencePoint {
    pub n: usize,
    pub relative_error: f64,
}

/// Relative error of the discrete sum against the closed form for each `N`.
pub fn huygens_convergence(a: f64, k: f64, ns: &[usize], theta: f64) -> Result<Vec<ConvergencePoint>> {
    if ns.is_empty() {
        return Err(invalid("ns", "empty source-count list"));
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid("ns", "source counts must be strictly increasing"));
    }
    let exact = huygens_closed_form(a, k, theta)?;
    if exact.abs() <= 1e-12 * k * a {
        return Err(Error::ClosedFormZero { theta });
    }
    ns.iter()
        .map(|&n| {
            let cfg = HuygensConfig::new(a, k, n)?;
            let z = huygens_sum(&cfg, theta);
            Ok(ConvergencePoint {
                n,
                relative_error: (z - exact).norm() / exact.abs(),
            })
        })
        .collect()
}
