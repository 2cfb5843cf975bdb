//! Angular patterns produced by the diffraction methods and the metrics used
//! to compare them.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::classical::ObliquityVariant;
use crate::error::{Error, Result};
use crate::grid::AngleGrid;

/// Which computation produced a pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Marcella,
    Fraunhofer,
    /// Discrete Huygens sum with `2n + 1` sources per slit.
    Huygens(usize),
    Kirchhoff(ObliquityVariant),
}

impl Method {
    /// A filesystem-friendly identifier (`huygens-10000`, `kirchhoff-dirichlet`).
    pub fn slug(&self) -> String {
        self.to_string().replace(':', "-")
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Marcella => f.write_str("marcella"),
            Method::Fraunhofer => f.write_str("fraunhofer"),
            Method::Huygens(n) => write!(f, "huygens:{n}"),
            Method::Kirchhoff(v) => write!(f, "kirchhoff:{v}"),
        }
    }
}

impl FromStr for Method {
    type Err = String;

    /// Accepts `marcella`, `fraunhofer`, `huygens:N`, `kirchhoff:VARIANT`, and
    /// the bare variant names `freshman`, `kirchhoff`, `dirichlet`, `neumann`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        match s.split_once(':') {
            None => match s {
                "marcella" => Ok(Method::Marcella),
                "fraunhofer" => Ok(Method::Fraunhofer),
                "huygens" => Err("huygens requires a source count, e.g. huygens:1000".into()),
                other => other.parse().map(Method::Kirchhoff),
            },
            Some(("huygens", n)) => match n.trim().parse::<usize>() {
                Ok(n) if n >= 1 => Ok(Method::Huygens(n)),
                _ => Err(format!("invalid huygens source count `{n}`")),
            },
            Some(("kirchhoff", v)) => v.parse().map(Method::Kirchhoff),
            Some(_) => Err(format!("unknown method `{s}`")),
        }
    }
}

/// How intensities are scaled relative to `|amplitude|²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Normalization {
    /// `intensity = |amplitude|²`.
    #[default]
    Raw,
    /// Scaled so the maximum is exactly 1.0 at a single grid point.
    Peak,
    /// Scaled so the intensities sum to 1 over the grid samples.
    Probability,
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::Raw => "raw",
            Normalization::Peak => "peak",
            Normalization::Probability => "probability",
        })
    }
}

impl FromStr for Normalization {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "raw" => Ok(Normalization::Raw),
            "peak" => Ok(Normalization::Peak),
            "probability" => Ok(Normalization::Probability),
            other => Err(format!("unknown normalization `{other}`")),
        }
    }
}

/// Complex amplitude and intensity per angle for one method.
#[derive(Debug, Clone, PartialEq)]
pub struct Pattern {
    method: Method,
    grid: AngleGrid,
    amplitudes: Vec<Complex64>,
    intensities: Vec<f64>,
    normalization: Normalization,
    lambda_over_a: Option<f64>,
}

impl Pattern {
    /// Builds a pattern from raw amplitudes, deriving intensities under the
    /// requested normalization. Amplitudes are stored unscaled.
    pub fn new(
        method: Method,
        grid: AngleGrid,
        amplitudes: Vec<Complex64>,
        normalization: Normalization,
    ) -> Result<Self> {
        if amplitudes.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "{} amplitudes for {} grid points",
                amplitudes.len(),
                grid.len()
            )));
        }
        let raw: Vec<f64> = amplitudes.iter().map(|a| a.norm_sqr()).collect();
        let intensities = normalize_intensities(&raw, normalization)?;
        Ok(Self {
            method,
            grid,
            amplitudes,
            intensities,
            normalization,
            lambda_over_a: None,
        })
    }

    /// Reassembles a pattern from stored columns (e.g. a parsed CSV file)
    /// without recomputing intensities.
    pub fn from_parts(
        method: Method,
        grid: AngleGrid,
        amplitudes: Vec<Complex64>,
        intensities: Vec<f64>,
        normalization: Normalization,
    ) -> Result<Self> {
        if amplitudes.len() != grid.len() || intensities.len() != grid.len() {
            return Err(Error::InvalidGrid("column lengths differ from grid length".into()));
        }
        if intensities.iter().any(|i| !(*i >= 0.0)) {
            return Err(Error::InvalidGrid("intensities must be non-negative".into()));
        }
        Ok(Self {
            method,
            grid,
            amplitudes,
            intensities,
            normalization,
            lambda_over_a: None,
        })
    }

    /// Attaches the wavelength-to-slit-width ratio the pattern was computed at.
    pub fn with_lambda_over_a(mut self, lambda_over_a: f64) -> Self {
        self.lambda_over_a = Some(lambda_over_a);
        self
    }

    /// Same amplitudes, intensities recomputed under another normalization.
    pub fn renormalized(&self, normalization: Normalization) -> Result<Self> {
        let raw: Vec<f64> = self.amplitudes.iter().map(|a| a.norm_sqr()).collect();
        Ok(Self {
            intensities: normalize_intensities(&raw, normalization)?,
            normalization,
            ..self.clone()
        })
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn grid(&self) -> &AngleGrid {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn intensities(&self) -> &[f64] {
        &self.intensities
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn lambda_over_a(&self) -> Option<f64> {
        self.lambda_over_a
    }
}

/// Scales raw intensities. Under `Peak` exactly one entry equals 1.0: the
/// first maximum in grid order; later ties are nudged to the next float below.
pub fn normalize_intensities(raw: &[f64], normalization: Normalization) -> Result<Vec<f64>> {
    match normalization {
        Normalization::Raw => Ok(raw.to_vec()),
        Normalization::Peak => {
            let (peak_idx, peak) =
                raw.iter().copied().enumerate().fold(
                    (0, f64::NEG_INFINITY),
                    |(bi, bv), (i, v)| {
                        if v > bv {
                            (i, v)
                        } else {
                            (bi, bv)
                        }
                    },
                );
            if !(peak > 0.0) || !peak.is_finite() {
                return Err(Error::ZeroPattern);
            }
            let below_one = f64::from_bits(1.0f64.to_bits() - 1);
            Ok(raw
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let x = v / peak;
                    if i != peak_idx && x >= 1.0 {
                        below_one
                    } else {
                        x
                    }
                })
                .collect())
        }
        Normalization::Probability => {
            let total: f64 = raw.iter().sum();
            if !(total > 0.0) || !total.is_finite() {
                return Err(Error::ZeroPattern);
            }
            Ok(raw.iter().map(|v| v / total).collect())
        }
    }
}

/// Regime in which two patterns were compared.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regime {
    pub lambda_over_a: Option<f64>,
    pub theta_max: f64,
}

/// Deviation between two peak-normalized intensity patterns on a shared grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub methods: (Method, Method),
    pub grid: AngleGrid,
    pub max_abs_deviation: f64,
    pub rms_deviation: f64,
    pub regime: Regime,
}

/// Peak-normalizes both patterns and reports the max-abs and RMS intensity
/// deviation over their common grid.
pub fn compare_patterns(p1: &Pattern, p2: &Pattern) -> Result<ComparisonReport> {
    if p1.grid != p2.grid {
        return Err(Error::GridMismatch);
    }
    let i1 = normalize_intensities(&p1.intensities, Normalization::Peak)?;
    let i2 = normalize_intensities(&p2.intensities, Normalization::Peak)?;
    let mut max_abs: f64 = 0.0;
    let mut sum_sq = 0.0;
    for (a, b) in i1.iter().zip(&i2) {
        let d = (a - b).abs();
        max_abs = max_abs.max(d);
        sum_sq += d * d;
    }
    let rms = (sum_sq / i1.len() as f64).sqrt();
    let lambda_over_a = match (p1.lambda_over_a, p2.lambda_over_a) {
        (Some(x), Some(y)) if x == y => Some(x),
        (Some(x), None) | (None, Some(x)) => Some(x),
        _ => None,
    };
    Ok(ComparisonReport {
        methods: (p1.method, p2.method),
        grid: p1.grid.clone(),
        // rounding can leave the RMS a hair above the max for constant offsets
        max_abs_deviation: max_abs.max(rms),
        rms_deviation: rms,
        regime: Regime {
            lambda_over_a,
            theta_max: p1.grid.theta_max(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid(n: usize) -> AngleGrid {
        AngleGrid::symmetric(0.5, n).unwrap()
    }

    fn pattern(amps: Vec<Complex64>) -> Pattern {
        let n = amps.len();
        Pattern::new(Method::Marcella, grid(n), amps, Normalization::Raw).unwrap()
    }

    #[test]
    fn method_names_round_trip() {
        for s in [
            "marcella",
            "fraunhofer",
            "huygens:10000",
            "kirchhoff:freshman",
            "kirchhoff:kirchhoff",
            "kirchhoff:dirichlet",
            "kirchhoff:neumann",
        ] {
            assert_eq!(s.parse::<Method>().unwrap().to_string(), s);
        }
        assert_eq!(
            "dirichlet".parse::<Method>().unwrap(),
            Method::Kirchhoff(ObliquityVariant::Dirichlet)
        );
        assert!("huygens".parse::<Method>().is_err());
        assert!("huygens:0".parse::<Method>().is_err());
        assert!("fresnel".parse::<Method>().is_err());
        assert_eq!(Method::Huygens(7).slug(), "huygens-7");
    }

    #[test]
    fn raw_intensity_is_norm_squared() {
        let p = pattern(vec![
            Complex64::new(3.0, 4.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(1.0, 0.0),
        ]);
        assert_eq!(p.intensities(), &[25.0, 1.0, 1.0]);
    }

    #[test]
    fn peak_ties_break_toward_smallest_theta() {
        let v = normalize_intensities(&[1.0, 4.0, 2.0, 4.0, 4.0], Normalization::Peak).unwrap();
        assert_eq!(v.iter().filter(|x| **x == 1.0).count(), 1);
        assert_eq!(v[1], 1.0);
        assert!(v[3] < 1.0 && v[3] > 0.999_999_999_999);
    }

    #[test]
    fn probability_sums_to_one() {
        let v = normalize_intensities(&[1.0, 3.0, 4.0], Normalization::Probability).unwrap();
        assert_eq!(v, vec![0.125, 0.375, 0.5]);
    }

    #[test]
    fn zero_pattern_cannot_be_normalized() {
        assert_eq!(
            normalize_intensities(&[0.0, 0.0], Normalization::Peak),
            Err(Error::ZeroPattern)
        );
    }

    #[test]
    fn identical_patterns_have_zero_deviation() {
        let p = pattern(vec![
            Complex64::new(1.0, 0.5),
            Complex64::new(0.2, 0.0),
            Complex64::new(0.1, 0.1),
        ]);
        let r = compare_patterns(&p, &p).unwrap();
        assert_eq!(r.max_abs_deviation, 0.0);
        assert_eq!(r.rms_deviation, 0.0);
    }

    #[test]
    fn grid_mismatch_is_an_error() {
        let p = pattern(vec![Complex64::new(1.0, 0.0); 3]);
        let q = Pattern::new(
            Method::Fraunhofer,
            AngleGrid::symmetric(0.4, 3).unwrap(),
            vec![Complex64::new(1.0, 0.0); 3],
            Normalization::Raw,
        )
        .unwrap();
        assert_eq!(compare_patterns(&p, &q), Err(Error::GridMismatch));
    }

    proptest! {
        #[test]
        fn peak_normalization_is_projective(
            amps in proptest::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 2..40),
            scale in 1e-3f64..1e3,
        ) {
            let a: Vec<Complex64> = amps.iter().map(|&(r, i)| Complex64::new(r, i)).collect();
            prop_assume!(a.iter().any(|z| z.norm_sqr() > 1e-6));
            let b: Vec<Complex64> = a.iter().map(|z| z * scale.sqrt()).collect();
            let r = compare_patterns(&pattern(a), &pattern(b)).unwrap();
            prop_assert!(r.max_abs_deviation < 1e-12);
            prop_assert!(r.max_abs_deviation >= r.rms_deviation);
            prop_assert!(r.rms_deviation >= 0.0);
        }
    }

    #[test]
    fn doubled_raw_pattern_has_zero_deviation() {
        let a = vec![
            Complex64::new(0.3, 0.1),
            Complex64::new(1.0, -0.2),
            Complex64::new(0.5, 0.0),
        ];
        let p1 = pattern(a.clone());
        let p2 = Pattern::from_parts(
            Method::Marcella,
            grid(3),
            a,
            p1.intensities().iter().map(|i| 2.0 * i).collect(),
            Normalization::Raw,
        )
        .unwrap();
        assert_eq!(compare_patterns(&p1, &p2).unwrap().max_abs_deviation, 0.0);
    }
}
