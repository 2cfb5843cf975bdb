use thiserror::Error;

/// Errors raised by the diffraction routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid aperture: {0}")]
    InvalidAperture(String),

    #[error("invalid wave: {0}")]
    InvalidWave(String),

    #[error("invalid angle grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("angle grids differ between patterns")]
    GridMismatch,

    #[error("pattern is identically zero and cannot be normalized")]
    ZeroPattern,

    #[error("slits overlap: separation {separation} must exceed width {width}")]
    OverlappingSlits { width: f64, separation: f64 },

    #[error("insufficient quadrature panels: {given} given, at least {required} required")]
    InsufficientPanels { given: usize, required: usize },

    #[error("closed form vanishes at theta = {theta} rad; relative error is undefined there, pick a different angle")]
    ClosedFormZero { theta: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
