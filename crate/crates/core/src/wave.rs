use std::f64::consts::{FRAC_PI_2, TAU};

use crate::error::{Error, Result};

/// Where the incident wave comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Source {
    /// Point source at the given distance from the aperture center.
    Finite(f64),
    /// Infinitely distant source: uniform amplitude across the aperture.
    PlaneWave,
}

/// Incident wave: wavenumber, incidence angle (radians, from the screen
/// normal) and source distance. With ħ = 1 the transverse momentum of a
/// ray leaving at angle θ is `k sin θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSpec {
    k: f64,
    theta_incident: f64,
    source: Source,
}

impl WaveSpec {
    pub fn new(k: f64, theta_incident: f64, source: Source) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::InvalidWave(format!("wavenumber must be positive, got {k}")));
        }
        if !(theta_incident.abs() < FRAC_PI_2) {
            return Err(Error::InvalidWave(format!(
                "incidence angle must lie in (-pi/2, pi/2), got {theta_incident}"
            )));
        }
        if let Source::Finite(r) = source {
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::InvalidWave(format!("source distance must be positive, got {r}")));
            }
        }
        Ok(Self {
            k,
            theta_incident,
            source,
        })
    }

    /// Normally incident plane wave.
    pub fn plane(k: f64) -> Result<Self> {
        Self::new(k, 0.0, Source::PlaneWave)
    }

    pub fn from_wavelength(lambda: f64, theta_incident: f64, source: Source) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidWave(format!("wavelength must be positive, got {lambda}")));
        }
        Self::new(TAU / lambda, theta_incident, source)
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn wavelength(&self) -> f64 {
        TAU / self.k
    }

    pub fn theta_incident(&self) -> f64 {
        self.theta_incident
    }

    pub fn source(&self) -> Source {
        self.source
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_inputs() {
        assert!(WaveSpec::plane(0.0).is_err());
        assert!(WaveSpec::new(1.0, FRAC_PI_2, Source::PlaneWave).is_err());
        assert!(WaveSpec::new(1.0, 0.1, Source::Finite(0.0)).is_err());
        assert!(WaveSpec::new(1.0, -0.1, Source::Finite(10.0)).is_ok());
    }

    #[test]
    fn wavelength_round_trip() {
        let w = WaveSpec::from_wavelength(0.05, 0.0, Source::PlaneWave).unwrap();
        assert!((w.wavelength() - 0.05).abs() < 1e-16);
    }
}
