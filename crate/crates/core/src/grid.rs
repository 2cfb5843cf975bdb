use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Strictly increasing scattering angles, each in `(-π/2, π/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleGrid {
    thetas: Vec<f64>,
}

impl AngleGrid {
    pub fn new(thetas: Vec<f64>) -> Result<Self> {
        if thetas.is_empty() {
            return Err(Error::InvalidGrid("grid is empty".into()));
        }
        if let Some(t) = thetas.iter().find(|t| !(t.abs() < FRAC_PI_2)) {
            return Err(Error::InvalidGrid(format!("angle {t} lies outside (-pi/2, pi/2)")));
        }
        if thetas.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidGrid("angles must be strictly increasing".into()));
        }
        Ok(Self { thetas })
    }

    /// `samples` equally spaced angles from `-theta_max` to `theta_max`.
    ///
    /// Points are mirrored about the middle so that `thetas[i] == -thetas[n-1-i]`
    /// holds exactly, and the center sample is exactly zero for odd counts.
    pub fn symmetric(theta_max: f64, samples: usize) -> Result<Self> {
        if samples < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 samples, got {samples}")));
        }
        if !(theta_max > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "theta_max must be positive, got {theta_max}"
            )));
        }
        let n = samples;
        let step = 2.0 * theta_max / (n - 1) as f64;
        let mut thetas = vec![0.0; n];
        for i in 0..n / 2 {
            let t = -theta_max + i as f64 * step;
            thetas[i] = t;
            thetas[n - 1 - i] = -t;
        }
        Self::new(thetas)
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    /// Largest `|θ|` on the grid.
    pub fn theta_max(&self) -> f64 {
        self.thetas.iter().fold(0.0, |m, t| m.max(t.abs()))
    }
}
