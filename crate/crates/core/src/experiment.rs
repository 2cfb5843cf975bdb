//! A single diffraction setup evaluated by any [`Method`].

use num_complex::Complex64;

use crate::aperture::ApertureSpec;
use crate::classical::{
    fraunhofer_amplitude, kirchhoff_amplitude_with_kernel, required_panels, Kernel, ObservationPoint,
};
use crate::error::Result;
use crate::grid::AngleGrid;
use crate::huygens::huygens_aperture_sum;
use crate::marcella::momentum_amplitude;
use crate::pattern::{Method, Normalization, Pattern};
use crate::wave::WaveSpec;

#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    pub aperture: ApertureSpec,
    pub wave: WaveSpec,
    /// Distance from the aperture origin to the observation arc.
    pub screen_distance: f64,
    pub kernel: Kernel,
    /// Fixed panels per slit for Kirchhoff integrals; `None` picks the
    /// minimum resolving count at each angle.
    pub kirchhoff_panels: Option<usize>,
}

impl Experiment {
    pub fn new(aperture: ApertureSpec, wave: WaveSpec, screen_distance: f64) -> Self {
        Self {
            aperture,
            wave,
            screen_distance,
            kernel: Kernel::Spherical,
            kirchhoff_panels: None,
        }
    }

    /// Wavelength over the widest slit.
    pub fn lambda_over_a(&self) -> f64 {
        self.wave.wavelength() / self.aperture.max_width()
    }

    /// Amplitude of `method` at scattering angle `theta`.
    pub fn amplitude(&self, method: Method, theta: f64) -> Result<Complex64> {
        let k = self.wave.k();
        match method {
            Method::Marcella => Ok(momentum_amplitude(&self.aperture, k * theta.sin())),
            Method::Fraunhofer => Ok(fraunhofer_amplitude(&self.aperture, k, theta)),
            Method::Huygens(n) => huygens_aperture_sum(&self.aperture, k, n, theta),
            Method::Kirchhoff(variant) => {
                let obs = ObservationPoint::new(self.screen_distance, theta)?;
                let panels = match self.kirchhoff_panels {
                    Some(p) => p,
                    None => required_panels(&self.aperture, &self.wave, &obs),
                };
                kirchhoff_amplitude_with_kernel(&self.aperture, &self.wave, variant, &obs, panels, self.kernel)
            }
        }
    }

    /// Evaluates `method` over `grid` sequentially.
    pub fn pattern(&self, method: Method, grid: &AngleGrid, normalization: Normalization) -> Result<Pattern> {
        let amps = grid
            .thetas()
            .iter()
            .map(|&t| self.amplitude(method, t))
            .collect::<Result<Vec<_>>>()?;
        Ok(Pattern::new(method, grid.clone(), amps, normalization)?.with_lambda_over_a(self.lambda_over_a()))
    }
}
