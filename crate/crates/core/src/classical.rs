//! Kirchhoff-type diffraction integrals over a slit aperture, with the four
//! classical obliquity choices, and the Fraunhofer limit.
//!
//! Geometry: the screen is the plane `x = 0` with slits along `y`; waves
//! travel toward `+x`. An observation point at distance `L` and angle `θ`
//! sits at `(L cos θ, L sin θ)`. A finite source at distance `R` and
//! incidence angle `θ'` sits at `−R (cos θ', sin θ')`.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::aperture::{ApertureSpec, Slit};
use crate::error::{invalid, Error, Result};
use crate::quadrature::GaussLegendre;
use crate::special::sinc;
use crate::wave::{Source, WaveSpec};

/// Obliquity factor `f(θ, θ')` weighting each secondary wavelet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObliquityVariant {
    /// Forward-only wavelets with no angular weighting.
    Freshman,
    /// `(cos θ + cos θ') / 2`.
    Kirchhoff,
    /// `cos θ`: wavefunction prescribed in the aperture.
    Dirichlet,
    /// `cos θ'`: normal derivative prescribed in the aperture.
    Neumann,
}

impl ObliquityVariant {
    pub const ALL: [ObliquityVariant; 4] = [
        ObliquityVariant::Freshman,
        ObliquityVariant::Kirchhoff,
        ObliquityVariant::Dirichlet,
        ObliquityVariant::Neumann,
    ];
}

impl fmt::Display for ObliquityVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObliquityVariant::Freshman => "freshman",
            ObliquityVariant::Kirchhoff => "kirchhoff",
            ObliquityVariant::Dirichlet => "dirichlet",
            ObliquityVariant::Neumann => "neumann",
        })
    }
}

impl FromStr for ObliquityVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "freshman" | "huygens-basic" => Ok(ObliquityVariant::Freshman),
            "kirchhoff" => Ok(ObliquityVariant::Kirchhoff),
            "dirichlet" => Ok(ObliquityVariant::Dirichlet),
            "neumann" => Ok(ObliquityVariant::Neumann),
            other => Err(format!("unknown obliquity variant `{other}`")),
        }
    }
}

/// Radial falloff of each secondary wavelet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Kernel {
    /// `e^{ikr} / r`
    #[default]
    Spherical,
    /// `e^{ikr} / sqrt(r)`, the two-dimensional (line-source) falloff.
    Cylindrical,
}

impl FromStr for Kernel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "spherical" => Ok(Kernel::Spherical),
            "cylindrical" => Ok(Kernel::Cylindrical),
            other => Err(format!("unknown kernel `{other}`")),
        }
    }
}

impl Kernel {
    fn falloff(self, r: f64) -> f64 {
        match self {
            Kernel::Spherical => 1.0 / r,
            Kernel::Cylindrical => 1.0 / r.sqrt(),
        }
    }
}

/// Observation point `P` at `distance` from the aperture origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservationPoint {
    distance: f64,
    angle: f64,
}

impl ObservationPoint {
    pub fn new(distance: f64, angle: f64) -> Result<Self> {
        if !(distance.is_finite() && distance > 0.0) {
            return Err(invalid("distance", format!("must be positive, got {distance}")));
        }
        if !(angle.abs() < FRAC_PI_2) {
            return Err(invalid("angle", format!("must lie in (-pi/2, pi/2), got {angle}")));
        }
        Ok(Self { distance, angle })
    }

    pub fn distance(&self) -> f64 {
        self.distance
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }
}

pub fn obliquity_factor(variant: ObliquityVariant, theta: f64, theta_prime: f64) -> f64 {
    match variant {
        ObliquityVariant::Freshman => 1.0,
        ObliquityVariant::Kirchhoff => 0.5 * (theta.cos() + theta_prime.cos()),
        ObliquityVariant::Dirichlet => theta.cos(),
        ObliquityVariant::Neumann => theta_prime.cos(),
    }
}

/// Same as [`obliquity_factor`] but from cosines already in hand.
fn obliquity_from_cosines(variant: ObliquityVariant, cos_theta: f64, cos_theta_prime: f64) -> f64 {
    match variant {
        ObliquityVariant::Freshman => 1.0,
        ObliquityVariant::Kirchhoff => 0.5 * (cos_theta + cos_theta_prime),
        ObliquityVariant::Dirichlet => cos_theta,
        ObliquityVariant::Neumann => cos_theta_prime,
    }
}

/// Exact geometry of one aperture point relative to the observer and source.
struct PathGeometry {
    /// `r − L`, computed without cancellation.
    obs_excess: f64,
    obs_distance: f64,
    cos_theta: f64,
    /// Incident phase over `k`: `r₀ − R` for a point source, `y sin θ'` for a plane wave.
    src_phase: f64,
    /// `r₀` for a point source; `None` for a plane wave.
    src_distance: Option<f64>,
    cos_theta_prime: f64,
}

fn path_geometry(wave: &WaveSpec, obs: &ObservationPoint, y: f64) -> PathGeometry {
    let (l, theta) = (obs.distance, obs.angle);
    let (sin_t, cos_t) = theta.sin_cos();
    let r = (l * l - 2.0 * l * y * sin_t + y * y).sqrt();
    let obs_excess = (y * y - 2.0 * l * y * sin_t) / (r + l);
    let cos_theta = l * cos_t / r;

    let (sin_tp, cos_tp) = wave.theta_incident().sin_cos();
    let (src_phase, src_distance, cos_theta_prime) = match wave.source() {
        Source::PlaneWave => (y * sin_tp, None, cos_tp),
        Source::Finite(big_r) => {
            let r0 = (big_r * big_r + 2.0 * big_r * y * sin_tp + y * y).sqrt();
            let excess = (y * y + 2.0 * big_r * y * sin_tp) / (r0 + big_r);
            (excess, Some(r0), big_r * cos_tp / r0)
        }
    };
    PathGeometry {
        obs_excess,
        obs_distance: r,
        cos_theta,
        src_phase,
        src_distance,
        cos_theta_prime,
    }
}

/// Minimum panel count for one slit: ten panels per oscillation of the
/// kernel phase across the slit, and never fewer than 32.
fn required_panels_for_slit(slit: &Slit, wave: &WaveSpec, obs: &ObservationPoint) -> usize {
    const PROBES: usize = 64;
    let path = |y: f64| {
        let g = path_geometry(wave, obs, y);
        g.obs_excess + g.src_phase
    };
    let h = slit.width / PROBES as f64;
    let mut variation = 0.0;
    let mut prev = path(slit.lower());
    for i in 1..=PROBES {
        let cur = path(slit.lower() + i as f64 * h);
        variation += (cur - prev).abs();
        prev = cur;
    }
    let periods = wave.k() * (slit.width + variation) / TAU;
    ((10.0 * periods).ceil() as usize).max(32)
}

/// Panels per slit needed by [`kirchhoff_amplitude`] at this observation point.
pub fn required_panels(ap: &ApertureSpec, wave: &WaveSpec, obs: &ObservationPoint) -> usize {
    ap.slits()
        .iter()
        .map(|s| required_panels_for_slit(s, wave, obs))
        .max()
        .unwrap_or(32)
}

/// Kirchhoff integral with the spherical kernel; see
/// [`kirchhoff_amplitude_with_kernel`].
pub fn kirchhoff_amplitude(
    ap: &ApertureSpec,
    wave: &WaveSpec,
    variant: ObliquityVariant,
    obs: &ObservationPoint,
    panels: usize,
) -> Result<Complex64> {
    kirchhoff_amplitude_with_kernel(ap, wave, variant, obs, panels, Kernel::Spherical)
}

/// `ψ(P) = −(ik/4π) ∫ K(r) K(r₀) e^{ik(r+r₀)} · 2f(θ, θ') dy` over the slit
/// union, with `A = 1` and `θ, θ'` recomputed at every aperture point.
///
/// For a plane wave the source factor is `e^{ik y sin θ'}` and `θ'` is
/// constant. `panels` is per slit and must reach [`required_panels`].
pub fn kirchhoff_amplitude_with_kernel(
    ap: &ApertureSpec,
    wave: &WaveSpec,
    variant: ObliquityVariant,
    obs: &ObservationPoint,
    panels: usize,
    kernel: Kernel,
) -> Result<Complex64> {
    let required = required_panels(ap, wave, obs);
    if panels < required {
        return Err(Error::InsufficientPanels {
            given: panels,
            required,
        });
    }
    let k = wave.k();
    let integrand = |y: f64| {
        let g = path_geometry(wave, obs, y);
        let mut weight =
            kernel.falloff(g.obs_distance) * 2.0 * obliquity_from_cosines(variant, g.cos_theta, g.cos_theta_prime);
        if let Some(r0) = g.src_distance {
            weight *= kernel.falloff(r0);
        }
        Complex64::from_polar(weight, k * (g.obs_excess + g.src_phase))
    };
    let rule = GaussLegendre::default();
    let integral: Complex64 = ap
        .slits()
        .iter()
        .map(|s| rule.composite_complex(s.lower(), s.upper(), panels, integrand))
        .sum();

    let reference_path = obs.distance
        + match wave.source() {
            Source::Finite(r) => r,
            Source::PlaneWave => 0.0,
        };
    let prefactor = Complex64::new(0.0, -k / (2.0 * TAU)) * Complex64::from_polar(1.0, k * reference_path);
    Ok(prefactor * integral)
}

/// Far-field slit integral `C ∫ e^{−ik sin θ y} dy` over the slit union with
/// `C = 1 / sqrt(2π W)`.
pub fn fraunhofer_amplitude(ap: &ApertureSpec, k: f64, theta: f64) -> Complex64 {
    let c = 1.0 / (TAU * ap.total_width()).sqrt();
    let q = k * theta.sin();
    let mut acc = Complex64::new(0.0, 0.0);
    for s in ap.slits() {
        // ∫_{c-w/2}^{c+w/2} e^{-iqy} dy = w sinc(q w / 2) e^{-iqc}
        acc += Complex64::from_polar(s.width * sinc(0.5 * q * s.width), -q * s.center);
    }
    acc * c
}
