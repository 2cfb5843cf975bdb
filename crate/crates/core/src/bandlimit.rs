//! Reconstruction of the slit wavefunction from a band-limited momentum
//! spectrum.
//!
//! Transforming the top-hat `ψ(y) = 1/sqrt(a)` to momentum space and back
//! with only `|k| ≤ k_m` retained gives
//!
//! ```text
//! ψ'(y) = (1 / (π sqrt(a))) ∫_{-a/2}^{a/2} sin(k_m (y − y')) / (y − y') dy'
//!       = (1 / (π sqrt(a))) [Si(k_m (y + a/2)) − Si(k_m (y − a/2))]
//! ```
//!
//! which only approaches the top-hat as `k_m → ∞`, and always rings near
//! the slit edges.

use std::f64::consts::{PI, TAU};

use crate::error::{invalid, Result};
use crate::quadrature::GaussLegendre;
use crate::special::{sinc, sine_integral};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandlimitConfig {
    a: f64,
    k_m: f64,
}

impl BandlimitConfig {
    pub fn new(a: f64, k_m: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(invalid("a", format!("slit width must be positive, got {a}")));
        }
        if !(k_m.is_finite() && k_m > 0.0) {
            return Err(invalid("k_m", format!("band limit must be positive, got {k_m}")));
        }
        Ok(Self { a, k_m })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn k_m(&self) -> f64 {
        self.k_m
    }

    /// The flat-top height `1/sqrt(a)`.
    pub fn top_hat_height(&self) -> f64 {
        1.0 / self.a.sqrt()
    }

    /// The original top-hat at `y` (edges included).
    pub fn top_hat(&self, y: f64) -> f64 {
        if y.abs() <= 0.5 * self.a {
            self.top_hat_height()
        } else {
            0.0
        }
    }
}

/// Band-limited reconstruction `ψ'(y)` via the sine integral.
pub fn bandlimited_reconstruct(cfg: &BandlimitConfig, y: f64) -> f64 {
    let half = 0.5 * cfg.a;
    let upper = sine_integral(cfg.k_m * (y + half));
    let lower = sine_integral(cfg.k_m * (y - half));
    (upper - lower) / (PI * cfg.a.sqrt())
}

/// Same reconstruction by composite Gauss-Legendre on the kernel
/// `sin(k_m (y − y')) / (y − y')` over the slit.
pub fn bandlimited_reconstruct_quadrature(cfg: &BandlimitConfig, y: f64) -> f64 {
    let half = 0.5 * cfg.a;
    let periods = cfg.k_m * cfg.a / TAU;
    let panels = ((10.0 * periods).ceil() as usize).max(64);
    let k_m = cfg.k_m;
    let integral = GaussLegendre::default().composite(-half, half, panels, |yp| k_m * sinc(k_m * (y - yp)));
    integral / (PI * cfg.a.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint {
    pub y: f64,
    pub value: f64,
    /// `ψ'(y) − ψ(y)`.
    pub deviation: f64,
}

/// Reconstruction and signed deviation from the top-hat at each `y`.
///
/// The grid must reach at least `[−a, a]`.
pub fn reconstruction_profile(cfg: &BandlimitConfig, ys: &[f64]) -> Result<Vec<ProfilePoint>> {
    let lo = ys.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ys.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(lo <= -cfg.a && hi >= cfg.a) {
        return Err(invalid(
            "ys",
            format!("grid [{lo}, {hi}] must cover [-{a}, {a}]", a = cfg.a),
        ));
    }
    Ok(ys
        .iter()
        .map(|&y| {
            let value = bandlimited_reconstruct(cfg, y);
            ProfilePoint {
                y,
                value,
                deviation: value - cfg.top_hat(y),
            }
        })
        .collect())
}

/// Small-argument estimate of `ψ'` relative to `1/sqrt(a)`.
///
/// For `k_m (y − y') ≪ 1` the kernel is `≈ k_m`, so `ψ' ≈ (k_m a / π) / sqrt(a)`.
/// The ratio is 1 exactly when `k_m = π/a`, i.e. wavelength `2a`.
pub fn smallarg_flatness_condition(cfg: &BandlimitConfig) -> f64 {
    cfg.k_m * cfg.a / PI
}
