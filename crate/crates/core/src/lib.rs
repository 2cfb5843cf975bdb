//! Scalar diffraction by slit apertures.
//!
//! The same single- and double-slit patterns are computed several ways:
//!
//! * [`marcella`]: Fourier transform of the normalized top-hat aperture
//!   wavefunction into transverse momentum (ħ = 1).
//! * [`classical`]: Kirchhoff-type integrals with freshman, Kirchhoff,
//!   Dirichlet or Neumann obliquity, plus the Fraunhofer far-field limit.
//! * [`huygens`]: a discrete sum of Huygens wavelets and its continuum limit.
//! * [`bandlimit`]: reconstruction of the aperture from a band-limited
//!   momentum spectrum.
//!
//! Patterns from different methods share an [`AngleGrid`] and are compared
//! after peak normalization with [`compare_patterns`].

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Test reference values are quoted at full tabulated precision.
#![cfg_attr(test, allow(clippy::excessive_precision, clippy::approx_constant))]

pub mod aperture;
pub mod bandlimit;
pub mod classical;
pub mod error;
pub mod experiment;
pub mod grid;
pub mod huygens;
pub mod marcella;
pub mod pattern;
pub mod quadrature;
pub mod special;
pub mod wave;

pub use aperture::{aperture_wavefunction, total_probability, ApertureSpec, Slit};
pub use bandlimit::{
    bandlimited_reconstruct, bandlimited_reconstruct_quadrature, reconstruction_profile, smallarg_flatness_condition,
    BandlimitConfig, ProfilePoint,
};
pub use classical::{
    fraunhofer_amplitude, kirchhoff_amplitude, kirchhoff_amplitude_with_kernel, obliquity_factor, required_panels,
    Kernel, ObliquityVariant, ObservationPoint,
};
pub use error::{Error, Result};
pub use experiment::Experiment;
pub use grid::AngleGrid;
pub use huygens::{
    huygens_aperture_sum, huygens_closed_form, huygens_convergence, huygens_sum, ConvergencePoint, HuygensConfig,
};
pub use marcella::{
    double_slit_probability, momentum_amplitude, momentum_amplitude_numeric, oracle_panels, parseval_norm,
    single_slit_probability, MomentumAmplitude, ParsevalEstimate,
};
pub use num_complex::Complex64;
pub use pattern::{compare_patterns, ComparisonReport, Method, Normalization, Pattern, Regime};
pub use wave::{Source, WaveSpec};
