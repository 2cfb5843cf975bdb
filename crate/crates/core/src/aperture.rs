//! Slit apertures in a plane screen and the normalized top-hat wavefunction
//! they carry.

use crate::error::{Error, Result};

/// A single slit: an interval `[center - width/2, center + width/2]` on the
/// transverse axis of the screen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Slit {
    pub center: f64,
    pub width: f64,
}

impl Slit {
    pub fn new(center: f64, width: f64) -> Self {
        Self { center, width }
    }

    pub fn lower(&self) -> f64 {
        self.center - 0.5 * self.width
    }

    pub fn upper(&self) -> f64 {
        self.center + 0.5 * self.width
    }

    pub fn contains(&self, y: f64) -> bool {
        y >= self.lower() && y <= self.upper()
    }
}

/// One or more pairwise-disjoint slits. Slits are stored sorted by center.
#[derive(Debug, Clone, PartialEq)]
pub struct ApertureSpec {
    slits: Vec<Slit>,
    total_width: f64,
}

impl ApertureSpec {
    pub fn new(mut slits: Vec<Slit>) -> Result<Self> {
        if slits.is_empty() {
            return Err(Error::InvalidAperture("no slits".into()));
        }
        for s in &slits {
            if !(s.width.is_finite() && s.width > 0.0) {
                return Err(Error::InvalidAperture(format!(
                    "slit width must be positive and finite, got {}",
                    s.width
                )));
            }
            if !s.center.is_finite() {
                return Err(Error::InvalidAperture(format!(
                    "slit center must be finite, got {}",
                    s.center
                )));
            }
        }
        slits.sort_by(|a, b| a.center.total_cmp(&b.center));
        for pair in slits.windows(2) {
            // closed intervals: touching edges count as overlap
            if pair[0].upper() >= pair[1].lower() {
                return Err(Error::InvalidAperture(format!(
                    "slits centered at {} and {} overlap",
                    pair[0].center, pair[1].center
                )));
            }
        }
        let total_width = slits.iter().map(|s| s.width).sum();
        Ok(Self { slits, total_width })
    }

    /// A single slit of width `a` centered on the origin.
    pub fn single(a: f64) -> Result<Self> {
        Self::new(vec![Slit::new(0.0, a)])
    }

    /// Two slits of width `a` with centers at `±d/2`.
    pub fn double(a: f64, d: f64) -> Result<Self> {
        if !(d > a) {
            return Err(Error::OverlappingSlits {
                width: a,
                separation: d,
            });
        }
        Self::new(vec![Slit::new(-0.5 * d, a), Slit::new(0.5 * d, a)])
    }

    pub fn slits(&self) -> &[Slit] {
        &self.slits
    }

    pub fn total_width(&self) -> f64 {
        self.total_width
    }

    /// Largest slit width; the natural length scale for oscillation counts.
    pub fn max_width(&self) -> f64 {
        self.slits.iter().map(|s| s.width).fold(0.0, f64::max)
    }

    /// Distance from the lowest slit edge to the highest.
    pub fn extent(&self) -> f64 {
        self.slits[self.slits.len() - 1].upper() - self.slits[0].lower()
    }

    /// True when the slit set is mirror symmetric about `y = 0`.
    pub fn is_symmetric(&self) -> bool {
        let n = self.slits.len();
        (0..n).all(|i| {
            let (a, b) = (self.slits[i], self.slits[n - 1 - i]);
            a.center == -b.center && a.width == b.width
        })
    }

    /// A copy with every slit center moved by `delta`.
    pub fn shifted(&self, delta: f64) -> Result<Self> {
        Self::new(
            self.slits
                .iter()
                .map(|s| Slit::new(s.center + delta, s.width))
                .collect(),
        )
    }
}

/// Position-space amplitude of the aperture: `1/sqrt(W)` on the slit union
/// (W the summed width), zero elsewhere.
pub fn aperture_wavefunction(ap: &ApertureSpec, y: f64) -> f64 {
    if ap.slits.iter().any(|s| s.contains(y)) {
        1.0 / ap.total_width.sqrt()
    } else {
        0.0
    }
}

/// `∫|ψ(y)|² dy` in closed form: each slit contributes `width / W`.
pub fn total_probability(ap: &ApertureSpec) -> f64 {
    let density = 1.0 / ap.total_width;
    ap.slits.iter().map(|s| s.width * density).sum()
}
