//! Momentum-space slit amplitudes: the Fourier transform of the top-hat
//! aperture wavefunction, in closed form and by direct quadrature.
//!
//! Units are ħ = 1, so transverse momentum and transverse wavenumber
//! coincide: `k_y = k sin θ`. The amplitude is normalized so that
//! `∫|A(k_y)|² dk_y = 1`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::aperture::{aperture_wavefunction, ApertureSpec};
use crate::error::{invalid, Error, Result};
use crate::quadrature::GaussLegendre;
use crate::special::sinc;

/// Transverse-momentum amplitude `⟨k_y|ψ⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumAmplitude {
    pub k_y: f64,
    pub value: Complex64,
}

impl MomentumAmplitude {
    pub fn probability(&self) -> f64 {
        self.value.norm_sqr()
    }
}

/// Closed-form `⟨k_y|ψ⟩` for an arbitrary slit list.
///
/// Each slit of width `w` centered at `c` contributes
/// `w · sinc(k_y w / 2) · e^{−i k_y c} / sqrt(2π W)`.
pub fn momentum_amplitude(ap: &ApertureSpec, k_y: f64) -> Complex64 {
    let norm = 1.0 / (TAU * ap.total_width()).sqrt();
    ap.slits()
        .iter()
        .map(|s| {
            let envelope = s.width * sinc(0.5 * k_y * s.width);
            Complex64::from_polar(envelope * norm, -k_y * s.center)
        })
        .sum()
}

pub fn momentum_amplitude_at(ap: &ApertureSpec, k_y: f64) -> MomentumAmplitude {
    MomentumAmplitude {
        k_y,
        value: momentum_amplitude(ap, k_y),
    }
}

/// Single centered slit: `(a / 2π) · (sin α / α)²` with `α = a k_y / 2`.
pub fn single_slit_probability(a: f64, k_y: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(invalid("a", format!("slit width must be positive, got {a}")));
    }
    let s = sinc(0.5 * a * k_y);
    Ok(a / TAU * s * s)
}

/// Two slits of width `a` centered at `±d/2`:
/// `(a / π) · cos²(k_y d / 2) · (sin α / α)²`.
pub fn double_slit_probability(a: f64, d: f64, k_y: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(invalid("a", format!("slit width must be positive, got {a}")));
    }
    if !(d > a) {
        return Err(Error::OverlappingSlits {
            width: a,
            separation: d,
        });
    }
    let s = sinc(0.5 * a * k_y);
    let c = (0.5 * k_y * d).cos();
    Ok(a / PI * c * c * s * s)
}

/// Panels per slit that resolve the integrand at ten panels per oscillation,
/// never fewer than `minimum`.
pub fn oracle_panels(ap: &ApertureSpec, k_y: f64, minimum: usize) -> usize {
    let periods = k_y.abs() * ap.max_width() / TAU;
    ((10.0 * periods).ceil() as usize).max(minimum).max(2)
}

/// `(1/sqrt(2π)) ∫ e^{−i k_y y} ψ(y) dy` by composite Gauss-Legendre over
/// each slit, with `panels` panels per slit. Independent of the closed form.
pub fn momentum_amplitude_numeric(ap: &ApertureSpec, k_y: f64, panels: usize) -> Result<Complex64> {
    momentum_amplitude_numeric_with_rule(ap, k_y, panels, &GaussLegendre::default())
}

pub fn momentum_amplitude_numeric_with_rule(
    ap: &ApertureSpec,
    k_y: f64,
    panels: usize,
    rule: &GaussLegendre,
) -> Result<Complex64> {
    if panels < 2 {
        return Err(Error::InsufficientPanels {
            given: panels,
            required: 2,
        });
    }
    let integrand = |y: f64| Complex64::from_polar(aperture_wavefunction(ap, y), -k_y * y);
    let total: Complex64 = ap
        .slits()
        .iter()
        .map(|s| rule.composite_complex(s.lower(), s.upper(), panels, integrand))
        .sum();
    Ok(total / TAU.sqrt())
}

/// Result of integrating `|⟨k_y|ψ⟩|²` over all `k_y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParsevalEstimate {
    /// Quadrature over `|k_y| ≤ cutoff`.
    pub interior: f64,
    /// Tail mass beyond the cutoff from the mean of `k_y² |A|²`.
    pub tail_estimate: f64,
    /// Rigorous upper bound on the tail mass.
    pub tail_bound: f64,
    pub cutoff: f64,
}

impl ParsevalEstimate {
    pub fn total(&self) -> f64 {
        self.interior + self.tail_estimate
    }
}

/// Default cutoff: `2·10⁴ / (narrowest slit width)`.
pub fn parseval_norm(ap: &ApertureSpec) -> ParsevalEstimate {
    let narrowest = ap.slits().iter().map(|s| s.width).fold(f64::INFINITY, f64::min);
    parseval_norm_with_cutoff(ap, 2.0e4 / narrowest)
}

/// Integrates `|A(k_y)|²` over `[−K, K]` and adds the tail beyond `K`.
///
/// Past the cutoff `|A|² = g(k_y)/k_y²` with `g` bounded and quasi-periodic,
/// so the tail is `ḡ / K` to `O(K⁻²)`, where `ḡ` is the mean of `g` over
/// `[K, 2K]`. The bound uses `g ≤ (2n)² / (2πW)` for `n` slits.
pub fn parseval_norm_with_cutoff(ap: &ApertureSpec, cutoff: f64) -> ParsevalEstimate {
    let rule = GaussLegendre::default();
    // |A(-k)| = |A(k)| for a real wavefunction
    let density = |k: f64| momentum_amplitude(ap, k).norm_sqr();
    let panels_for = |len: f64| ((10.0 * len * ap.extent() / TAU).ceil() as usize).max(16);

    let interior = 2.0 * rule.composite(0.0, cutoff, panels_for(cutoff), density);

    let window = rule.composite(cutoff, 2.0 * cutoff, panels_for(cutoff), |k| k * k * density(k));
    let g_mean = window / cutoff;
    let tail_estimate = 2.0 * g_mean / cutoff;

    let n = ap.slits().len() as f64;
    let g_max = 4.0 * n * n / (TAU * ap.total_width());
    let tail_bound = 2.0 * g_max / cutoff;

    ParsevalEstimate {
        interior,
        tail_estimate,
        tail_bound,
        cutoff,
    }
}
