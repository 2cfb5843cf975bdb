//! Fixtures shared by the criterion benchmarks.

use slitdiff_core::{AngleGrid, ApertureSpec, Experiment, Source, WaveSpec};

/// Single slit of unit width, λ = a/20, screen at 10⁴ a.
pub fn short_wavelength_single_slit() -> Experiment {
    Experiment::new(
        ApertureSpec::single(1.0).expect("valid aperture"),
        WaveSpec::from_wavelength(0.05, 0.0, Source::PlaneWave).expect("valid wave"),
        1e4,
    )
}

/// Double slit (a = 1, d = 4) at λ = a.
pub fn long_wavelength_double_slit() -> Experiment {
    Experiment::new(
        ApertureSpec::double(1.0, 4.0).expect("valid aperture"),
        WaveSpec::from_wavelength(1.0, 0.0, Source::PlaneWave).expect("valid wave"),
        1e4,
    )
}

pub fn grid(theta_max_deg: f64, samples: usize) -> AngleGrid {
    AngleGrid::symmetric(theta_max_deg.to_radians(), samples).expect("valid grid")
}
