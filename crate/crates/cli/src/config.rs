//! Run configuration: flat `key = value` files layered under CLI flags.
//!
//! Precedence is CLI flag, then config-file key, then the documented default.
//! Unknown keys, duplicate keys and malformed values are hard errors that
//! name the key (and the line, for file input).

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::path::PathBuf;

use slitdiff_core::{
    AngleGrid, ApertureSpec, Experiment, Kernel, Method, Normalization, ObliquityVariant, Source, WaveSpec,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub struct ConfigError {
    pub key: String,
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: key `{}`: {}", self.key, self.message),
            None => write!(f, "key `{}`: {}", self.key, self.message),
        }
    }
}

impl ConfigError {
    fn new(key: &str, line: Option<usize>, message: impl Into<String>) -> Self {
        Self {
            key: key.to_string(),
            line,
            message: message.into(),
        }
    }
}

/// Every recognized key.
pub const KEYS: &[&str] = &[
    "slits",
    "slit_width",
    "separation",
    "wavelength",
    "wavenumber",
    "incidence_angle",
    "source_distance",
    "screen_distance",
    "theta_max",
    "samples",
    "methods",
    "kernel",
    "kirchhoff_panels",
    "normalize",
    "output",
    "format",
    "plot",
    "bandlimit_km",
    "bandlimit_extent",
    "bandlimit_samples",
    "sweep_lambda_over_a",
    "sweep_theta_max",
    "sweep_huygens_n",
    "sweep_screen_distance",
    "convergence_theta",
    "convergence_n",
];

pub const DEFAULT_HUYGENS_N: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Either spelling of the wave scale; they are mutually exclusive inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WaveScale {
    Wavelength(f64),
    Wavenumber(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandlimitSettings {
    /// Band limit `k_m`; defaults to `π / a`.
    pub k_m: f64,
    /// Profile spans `[−extent·a, extent·a]`.
    pub extent: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepAxes {
    pub lambda_over_a: Vec<f64>,
    /// Degrees.
    pub theta_max: Vec<f64>,
    pub huygens_n: Vec<usize>,
    pub screen_distance: Vec<f64>,
}

impl SweepAxes {
    pub fn is_empty(&self) -> bool {
        self.lambda_over_a.is_empty()
            && self.theta_max.is_empty()
            && self.huygens_n.is_empty()
            && self.screen_distance.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub slits: usize,
    pub slit_width: f64,
    pub separation: Option<f64>,
    pub wave: WaveScale,
    /// Degrees.
    pub incidence_angle: f64,
    /// `None` is a plane wave.
    pub source_distance: Option<f64>,
    pub screen_distance: f64,
    /// Degrees.
    pub theta_max: f64,
    pub samples: usize,
    pub methods: Vec<Method>,
    pub kernel: Kernel,
    pub kirchhoff_panels: Option<usize>,
    pub normalization: Normalization,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub plot: Option<PathBuf>,
    pub bandlimit: BandlimitSettings,
    pub sweep: SweepAxes,
    /// Degrees.
    pub convergence_theta: f64,
    pub convergence_n: Vec<usize>,
}

pub fn default_methods() -> Vec<Method> {
    let mut m = vec![Method::Marcella, Method::Fraunhofer, Method::Huygens(DEFAULT_HUYGENS_N)];
    m.extend(ObliquityVariant::ALL.map(Method::Kirchhoff));
    m
}

/// Values from one source, keyed by name, with their line number if any.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Layer {
    entries: BTreeMap<String, (String, Option<usize>)>,
}

impl Layer {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut layer = Layer::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::new(line, Some(line_no), "expected `key = value`"));
            };
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(ConfigError::new(key, Some(line_no), "unknown key"));
            }
            if let Some((_, prev)) = layer.entries.get(key) {
                return Err(ConfigError::new(
                    key,
                    Some(line_no),
                    format!("duplicate key (first set on line {})", prev.unwrap_or(0)),
                ));
            }
            layer
                .entries
                .insert(key.to_string(), (value.to_string(), Some(line_no)));
        }
        Ok(layer)
    }

    /// Sets a key from a command-line flag.
    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<(), ConfigError> {
        if !KEYS.contains(&key) {
            return Err(ConfigError::new(key, None, "unknown key"));
        }
        self.entries.insert(key.to_string(), (value.into(), None));
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn get(&self, key: &str) -> Option<(&str, Option<usize>)> {
        self.entries.get(key).map(|(v, l)| (v.as_str(), *l))
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str, line: Option<usize>) -> Result<T, ConfigError> {
    value
        .parse()
        .map_err(|_| ConfigError::new(key, line, format!("malformed value `{value}`")))
}

fn parse_list<T: std::str::FromStr>(key: &str, value: &str, line: Option<usize>) -> Result<Vec<T>, ConfigError> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_value(key, s, line))
        .collect()
}

fn positive(key: &str, v: f64, line: Option<usize>) -> Result<f64, ConfigError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(ConfigError::new(key, line, format!("must be positive, got {v}")))
    }
}

/// Merged view: CLI layer over file layer.
struct Merged<'a> {
    file: &'a Layer,
    cli: &'a Layer,
}

impl Merged<'_> {
    fn get(&self, key: &str) -> Option<(&str, Option<usize>)> {
        if let Some(v) = self.cli.get(key) {
            return Some(v);
        }
        // a CLI wave scale in either spelling replaces the file's wave scale
        let wave_keys = ["wavelength", "wavenumber"];
        if wave_keys.contains(&key) && wave_keys.iter().any(|k| self.cli.get(k).is_some()) {
            return None;
        }
        self.file.get(key)
    }

    fn num(&self, key: &str) -> Result<Option<(f64, Option<usize>)>, ConfigError> {
        self.get(key)
            .map(|(v, line)| parse_value::<f64>(key, v, line).map(|x| (x, line)))
            .transpose()
    }
}

impl RunConfig {
    /// Defaults only.
    pub fn defaults() -> Self {
        Self::from_layers(&Layer::default(), &Layer::default()).expect("defaults are valid")
    }

    pub fn from_text(text: &str) -> Result<Self, ConfigError> {
        Self::from_layers(&Layer::parse(text)?, &Layer::default())
    }

    pub fn from_layers(file: &Layer, cli: &Layer) -> Result<Self, ConfigError> {
        for layer in [file, cli] {
            if layer.get("wavelength").is_some() && layer.get("wavenumber").is_some() {
                let line = layer.get("wavenumber").and_then(|(_, l)| l);
                return Err(ConfigError::new(
                    "wavenumber",
                    line,
                    "wavelength and wavenumber are mutually exclusive",
                ));
            }
        }
        let m = Merged { file, cli };

        let slits = match m.get("slits") {
            None => 1,
            Some((v, line)) => match parse_value::<usize>("slits", v, line)? {
                n @ (1 | 2) => n,
                n => return Err(ConfigError::new("slits", line, format!("must be 1 or 2, got {n}"))),
            },
        };
        let slit_width = match m.num("slit_width")? {
            None => 1.0,
            Some((v, line)) => positive("slit_width", v, line)?,
        };
        let separation = match (slits, m.num("separation")?) {
            (2, None) => {
                return Err(ConfigError::new("separation", None, "required when slits = 2"));
            }
            (2, Some((d, line))) => {
                if !(d > slit_width) {
                    return Err(ConfigError::new(
                        "separation",
                        line,
                        format!("must exceed slit_width {slit_width} so slits do not overlap, got {d}"),
                    ));
                }
                Some(d)
            }
            (_, _) => None,
        };
        let wave = match (m.num("wavelength")?, m.num("wavenumber")?) {
            (Some((l, line)), None) => WaveScale::Wavelength(positive("wavelength", l, line)?),
            (None, Some((k, line))) => WaveScale::Wavenumber(positive("wavenumber", k, line)?),
            (None, None) => WaveScale::Wavelength(slit_width / 20.0),
            (Some(_), Some(_)) => unreachable!("rejected per layer above"),
        };
        let incidence_angle = match m.num("incidence_angle")? {
            None => 0.0,
            Some((v, line)) if v.abs() < 90.0 => {
                let _ = line;
                v
            }
            Some((v, line)) => {
                return Err(ConfigError::new(
                    "incidence_angle",
                    line,
                    format!("must lie in (-90, 90) degrees, got {v}"),
                ))
            }
        };
        let source_distance = match m.get("source_distance") {
            None => None,
            Some(("plane", _)) | Some(("plane-wave", _)) => None,
            Some((v, line)) => Some(positive(
                "source_distance",
                parse_value("source_distance", v, line)?,
                line,
            )?),
        };
        let screen_distance = match m.num("screen_distance")? {
            None => 1e4 * slit_width,
            Some((v, line)) => positive("screen_distance", v, line)?,
        };
        let theta_max = match m.num("theta_max")? {
            None => 15.0,
            Some((v, line)) if v > 0.0 && v < 90.0 => {
                let _ = line;
                v
            }
            Some((v, line)) => {
                return Err(ConfigError::new(
                    "theta_max",
                    line,
                    format!("must lie in (0, 90) degrees, got {v}"),
                ))
            }
        };
        let samples = match m.get("samples") {
            None => 501,
            Some((v, line)) => {
                let n: usize = parse_value("samples", v, line)?;
                if n < 2 {
                    return Err(ConfigError::new("samples", line, format!("need at least 2, got {n}")));
                }
                n
            }
        };
        let methods = match m.get("methods") {
            None => default_methods(),
            Some((v, line)) => {
                let list: Vec<Method> = v
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        if s == "all" {
                            Ok(default_methods())
                        } else if s == "huygens" {
                            Ok(vec![Method::Huygens(DEFAULT_HUYGENS_N)])
                        } else {
                            s.parse::<Method>()
                                .map(|x| vec![x])
                                .map_err(|e| ConfigError::new("methods", line, e))
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?
                    .into_iter()
                    .flatten()
                    .collect();
                let mut dedup = Vec::new();
                for x in list {
                    if !dedup.contains(&x) {
                        dedup.push(x);
                    }
                }
                if dedup.is_empty() {
                    return Err(ConfigError::new("methods", line, "at least one method is required"));
                }
                dedup
            }
        };
        let kernel = match m.get("kernel") {
            None => Kernel::Spherical,
            Some((v, line)) => v.parse().map_err(|e: String| ConfigError::new("kernel", line, e))?,
        };
        let kirchhoff_panels = match m.get("kirchhoff_panels") {
            None => None,
            Some((v, line)) => Some(parse_value::<usize>("kirchhoff_panels", v, line)?),
        };
        let normalization = match m.get("normalize") {
            None => Normalization::Peak,
            Some((v, line)) => v.parse().map_err(|e: String| ConfigError::new("normalize", line, e))?,
        };
        let format = match m.get("format") {
            None | Some(("csv", _)) => Format::Csv,
            Some(("json", _)) => Format::Json,
            Some((v, line)) => {
                return Err(ConfigError::new(
                    "format",
                    line,
                    format!("expected csv or json, got `{v}`"),
                ))
            }
        };
        let output = m.get("output").map(|(v, _)| PathBuf::from(v));
        let plot = m.get("plot").map(|(v, _)| PathBuf::from(v));

        let bandlimit = BandlimitSettings {
            k_m: match m.num("bandlimit_km")? {
                None => PI / slit_width,
                Some((v, line)) => positive("bandlimit_km", v, line)?,
            },
            extent: match m.num("bandlimit_extent")? {
                None => 3.0,
                Some((v, line)) if v >= 1.0 => {
                    let _ = line;
                    v
                }
                Some((v, line)) => {
                    return Err(ConfigError::new(
                        "bandlimit_extent",
                        line,
                        format!("must be at least 1, got {v}"),
                    ))
                }
            },
            samples: match m.get("bandlimit_samples") {
                None => 1201,
                Some((v, line)) => {
                    let n: usize = parse_value("bandlimit_samples", v, line)?;
                    if n < 2 {
                        return Err(ConfigError::new("bandlimit_samples", line, "need at least 2"));
                    }
                    n
                }
            },
        };

        let mut sweep = SweepAxes::default();
        if let Some((v, line)) = m.get("sweep_lambda_over_a") {
            sweep.lambda_over_a = parse_list("sweep_lambda_over_a", v, line)?;
            for &x in &sweep.lambda_over_a {
                positive("sweep_lambda_over_a", x, line)?;
            }
        }
        if let Some((v, line)) = m.get("sweep_theta_max") {
            sweep.theta_max = parse_list("sweep_theta_max", v, line)?;
            if let Some(bad) = sweep.theta_max.iter().find(|t| !(**t > 0.0 && **t < 90.0)) {
                return Err(ConfigError::new(
                    "sweep_theta_max",
                    line,
                    format!("{bad} outside (0, 90) degrees"),
                ));
            }
        }
        if let Some((v, line)) = m.get("sweep_huygens_n") {
            sweep.huygens_n = parse_list("sweep_huygens_n", v, line)?;
            if sweep.huygens_n.contains(&0) {
                return Err(ConfigError::new(
                    "sweep_huygens_n",
                    line,
                    "source counts must be at least 1",
                ));
            }
        }
        if let Some((v, line)) = m.get("sweep_screen_distance") {
            sweep.screen_distance = parse_list("sweep_screen_distance", v, line)?;
            for &x in &sweep.screen_distance {
                positive("sweep_screen_distance", x, line)?;
            }
        }

        let convergence_theta = match m.num("convergence_theta")? {
            None => 20.0,
            Some((v, line)) if v.abs() < 90.0 => {
                let _ = line;
                v
            }
            Some((v, line)) => {
                return Err(ConfigError::new(
                    "convergence_theta",
                    line,
                    format!("must lie in (-90, 90), got {v}"),
                ))
            }
        };
        let convergence_n = match m.get("convergence_n") {
            None => vec![625, 1250, 2500, 5000, 10_000],
            Some((v, line)) => {
                let ns: Vec<usize> = parse_list("convergence_n", v, line)?;
                if ns.is_empty() || ns.contains(&0) || ns.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(ConfigError::new(
                        "convergence_n",
                        line,
                        "must be a strictly increasing list of positive counts",
                    ));
                }
                ns
            }
        };

        Ok(Self {
            slits,
            slit_width,
            separation,
            wave,
            incidence_angle,
            source_distance,
            screen_distance,
            theta_max,
            samples,
            methods,
            kernel,
            kirchhoff_panels,
            normalization,
            output,
            format,
            plot,
            bandlimit,
            sweep,
            convergence_theta,
            convergence_n,
        })
    }

    pub fn wavenumber(&self) -> f64 {
        match self.wave {
            WaveScale::Wavelength(l) => std::f64::consts::TAU / l,
            WaveScale::Wavenumber(k) => k,
        }
    }

    pub fn lambda_over_a(&self) -> f64 {
        std::f64::consts::TAU / self.wavenumber() / self.slit_width
    }

    pub fn aperture(&self) -> Result<ApertureSpec, ConfigError> {
        let built = match self.separation {
            Some(d) if self.slits == 2 => ApertureSpec::double(self.slit_width, d),
            _ => ApertureSpec::single(self.slit_width),
        };
        built.map_err(|e| ConfigError::new("slit_width", None, e.to_string()))
    }

    pub fn wave_spec(&self) -> Result<WaveSpec, ConfigError> {
        let source = match self.source_distance {
            Some(r) => Source::Finite(r),
            None => Source::PlaneWave,
        };
        WaveSpec::new(self.wavenumber(), self.incidence_angle.to_radians(), source)
            .map_err(|e| ConfigError::new("wavelength", None, e.to_string()))
    }

    pub fn experiment(&self) -> Result<Experiment, ConfigError> {
        let mut exp = Experiment::new(self.aperture()?, self.wave_spec()?, self.screen_distance);
        exp.kernel = self.kernel;
        exp.kirchhoff_panels = self.kirchhoff_panels;
        Ok(exp)
    }

    pub fn grid(&self) -> Result<AngleGrid, ConfigError> {
        let t = self.theta_max.to_radians();
        debug_assert!(t < FRAC_PI_2);
        AngleGrid::symmetric(t, self.samples).map_err(|e| ConfigError::new("theta_max", None, e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_gives_documented_defaults() {
        let c = RunConfig::from_text("").unwrap();
        assert_eq!(c.slits, 1);
        assert_eq!(c.slit_width, 1.0);
        assert_eq!(c.wave, WaveScale::Wavelength(0.05));
        assert_eq!(c.source_distance, None);
        assert_eq!(c.theta_max, 15.0);
        assert_eq!(c.samples, 501);
        assert_eq!(c.methods, default_methods());
        assert_eq!(c.methods.len(), 7);
        assert_eq!(c.screen_distance, 1e4);
        assert_eq!(c, RunConfig::defaults());
    }

    #[test]
    fn comments_and_blank_lines() {
        let c = RunConfig::from_text("# header\n\nslit_width = 2 # trailing\n  samples=11\n").unwrap();
        assert_eq!(c.slit_width, 2.0);
        assert_eq!(c.samples, 11);
        assert_eq!(c.wave, WaveScale::Wavelength(0.1));
    }

    #[test]
    fn double_slit_requires_separation() {
        let e = RunConfig::from_text("slits = 2\n").unwrap_err();
        assert_eq!(e.key, "separation");
        let c = RunConfig::from_text("slits = 2\nseparation = 4\n").unwrap();
        assert_eq!(c.separation, Some(4.0));
        let e = RunConfig::from_text("slits = 2\nseparation = 0.5\n").unwrap_err();
        assert_eq!((e.key.as_str(), e.line), ("separation", Some(2)));
    }

    #[test]
    fn unknown_and_malformed_keys_name_the_line() {
        let e = RunConfig::from_text("samples = 5\ncolour = red\n").unwrap_err();
        assert_eq!((e.key.as_str(), e.line), ("colour", Some(2)));
        let e = RunConfig::from_text("\n\nsamples = many\n").unwrap_err();
        assert_eq!((e.key.as_str(), e.line), ("samples", Some(3)));
        assert!(e.to_string().contains("line 3"));
        let e = RunConfig::from_text("samples 5\n").unwrap_err();
        assert_eq!(e.line, Some(1));
        let e = RunConfig::from_text("samples = 5\nsamples = 6\n").unwrap_err();
        assert_eq!((e.key.as_str(), e.line), ("samples", Some(2)));
    }

    #[test]
    fn invariants_are_enforced() {
        assert_eq!(RunConfig::from_text("samples = 1").unwrap_err().key, "samples");
        assert_eq!(RunConfig::from_text("theta_max = 90").unwrap_err().key, "theta_max");
        assert_eq!(RunConfig::from_text("methods = ").unwrap_err().key, "methods");
        assert_eq!(RunConfig::from_text("methods = fresnel").unwrap_err().key, "methods");
        assert_eq!(
            RunConfig::from_text("wavelength = 1\nwavenumber = 2").unwrap_err().key,
            "wavenumber"
        );
        assert_eq!(RunConfig::from_text("slits = 3").unwrap_err().key, "slits");
    }

    #[test]
    fn cli_overrides_file() {
        let file = Layer::parse("wavelength = 0.5\nsamples = 11\n").unwrap();
        let mut cli = Layer::default();
        cli.set("wavelength", "0.25").unwrap();
        let c = RunConfig::from_layers(&file, &cli).unwrap();
        assert_eq!(c.wave, WaveScale::Wavelength(0.25));
        assert_eq!(c.samples, 11);

        // either spelling on the command line replaces the file's scale
        let mut cli = Layer::default();
        cli.set("wavenumber", "3").unwrap();
        let c = RunConfig::from_layers(&file, &cli).unwrap();
        assert_eq!(c.wave, WaveScale::Wavenumber(3.0));
    }

    #[test]
    fn method_lists() {
        let c =
            RunConfig::from_text("methods = marcella, huygens:100, dirichlet, kirchhoff:neumann, marcella").unwrap();
        assert_eq!(
            c.methods,
            vec![
                Method::Marcella,
                Method::Huygens(100),
                Method::Kirchhoff(ObliquityVariant::Dirichlet),
                Method::Kirchhoff(ObliquityVariant::Neumann),
            ]
        );
        assert_eq!(
            RunConfig::from_text("methods = all").unwrap().methods,
            default_methods()
        );
    }

    #[test]
    fn sweep_and_convergence_lists() {
        let c = RunConfig::from_text(
            "sweep_lambda_over_a = 0.01, 0.1, 1\nsweep_huygens_n = 10,20\nconvergence_n = 1,2,4\n",
        )
        .unwrap();
        assert_eq!(c.sweep.lambda_over_a, vec![0.01, 0.1, 1.0]);
        assert_eq!(c.sweep.huygens_n, vec![10, 20]);
        assert_eq!(c.convergence_n, vec![1, 2, 4]);
        assert_eq!(
            RunConfig::from_text("convergence_n = 4,2").unwrap_err().key,
            "convergence_n"
        );
    }

    #[test]
    fn source_distance_spellings() {
        assert_eq!(
            RunConfig::from_text("source_distance = plane").unwrap().source_distance,
            None
        );
        assert_eq!(
            RunConfig::from_text("source_distance = 50").unwrap().source_distance,
            Some(50.0)
        );
        assert!(RunConfig::from_text("source_distance = -1").is_err());
    }
}
