//! File formats. Floats are written as the shortest decimal that parses back
//! to the same binary64, so every CSV re-parses to identical values.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use slitdiff_core::{AngleGrid, ComparisonReport, Complex64, Method, Normalization, Pattern};

use crate::config::Format;
use crate::run::{BandlimitRun, ConvergenceRow, SweepRow};
use crate::{HarnessError, Result};

pub const PATTERN_HEADER: [&str; 6] = ["theta_rad", "sin_theta", "k_y", "re_amp", "im_amp", "intensity"];

/// Shortest round-trip decimal.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

fn fmt_opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// File name for a method's pattern inside an output directory.
pub fn pattern_file_name(method: Method, format: Format) -> String {
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    format!("pattern_{}.{ext}", method.slug())
}

fn csv_rows<W: Write>(out: W, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_pattern_csv<W: Write>(out: W, pattern: &Pattern, k: f64) -> csv::Result<()> {
    let rows = pattern
        .grid()
        .thetas()
        .iter()
        .zip(pattern.amplitudes())
        .zip(pattern.intensities())
        .map(|((&t, a), &i)| {
            let s = t.sin();
            vec![
                fmt_f64(t),
                fmt_f64(s),
                fmt_f64(k * s),
                fmt_f64(a.re),
                fmt_f64(a.im),
                fmt_f64(i),
            ]
        });
    csv_rows(out, &PATTERN_HEADER, rows)
}

/// Parses a pattern CSV. Method and normalization are not stored in the
/// columns and must be supplied.
pub fn read_pattern_csv<R: Read>(
    input: R,
    method: Method,
    normalization: Normalization,
) -> std::result::Result<Pattern, String> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(|e| e.to_string())?;
    if header.iter().ne(PATTERN_HEADER) {
        return Err(format!(
            "unexpected header `{}`",
            header.iter().collect::<Vec<_>>().join(",")
        ));
    }
    let (mut thetas, mut amps, mut intensities) = (Vec::new(), Vec::new(), Vec::new());
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| e.to_string())?;
        let field = |j: usize| -> std::result::Result<f64, String> {
            rec[j]
                .parse::<f64>()
                .map_err(|_| format!("row {}: bad {} `{}`", i + 1, PATTERN_HEADER[j], &rec[j]))
        };
        let t = field(0)?;
        if field(1)? != t.sin() {
            return Err(format!("row {}: sin_theta disagrees with theta_rad", i + 1));
        }
        thetas.push(t);
        amps.push(Complex64::new(field(3)?, field(4)?));
        intensities.push(field(5)?);
    }
    let grid = AngleGrid::new(thetas).map_err(|e| e.to_string())?;
    Pattern::from_parts(method, grid, amps, intensities, normalization).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternPoint {
    pub theta_rad: f64,
    pub sin_theta: f64,
    pub k_y: f64,
    pub re_amp: f64,
    pub im_amp: f64,
    pub intensity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternRecord {
    pub method: String,
    pub normalization: String,
    pub lambda_over_a: Option<f64>,
    pub points: Vec<PatternPoint>,
}

impl PatternRecord {
    pub fn new(pattern: &Pattern, k: f64) -> Self {
        let points = pattern
            .grid()
            .thetas()
            .iter()
            .zip(pattern.amplitudes())
            .zip(pattern.intensities())
            .map(|((&t, a), &i)| PatternPoint {
                theta_rad: t,
                sin_theta: t.sin(),
                k_y: k * t.sin(),
                re_amp: a.re,
                im_amp: a.im,
                intensity: i,
            })
            .collect();
        Self {
            method: pattern.method().to_string(),
            normalization: pattern.normalization().to_string(),
            lambda_over_a: pattern.lambda_over_a(),
            points,
        }
    }

    pub fn to_pattern(&self) -> std::result::Result<Pattern, String> {
        let method: Method = self.method.parse()?;
        let normalization: Normalization = self.normalization.parse()?;
        let grid = AngleGrid::new(self.points.iter().map(|p| p.theta_rad).collect()).map_err(|e| e.to_string())?;
        let amps = self.points.iter().map(|p| Complex64::new(p.re_amp, p.im_amp)).collect();
        let intensities = self.points.iter().map(|p| p.intensity).collect();
        let p = Pattern::from_parts(method, grid, amps, intensities, normalization).map_err(|e| e.to_string())?;
        Ok(match self.lambda_over_a {
            Some(x) => p.with_lambda_over_a(x),
            None => p,
        })
    }
}

fn write_json<W: Write, T: Serialize>(mut out: W, value: &T) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")
}

pub fn write_pattern<W: Write>(out: W, pattern: &Pattern, k: f64, format: Format) -> std::io::Result<()> {
    match format {
        Format::Csv => write_pattern_csv(out, pattern, k).map_err(std::io::Error::other),
        Format::Json => write_json(out, &PatternRecord::new(pattern, k)),
    }
}

/// Writes `pattern_<method>.<ext>` for each pattern into `dir`, creating it.
pub fn write_pattern_dir(dir: &Path, patterns: &[Pattern], k: f64, format: Format) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    patterns
        .iter()
        .map(|p| {
            let path = dir.join(pattern_file_name(p.method(), format));
            emit(Some(&path), &mut std::io::sink(), |w| write_pattern(w, p, k, format))?;
            Ok(path)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRecord {
    pub method_a: String,
    pub method_b: String,
    pub lambda_over_a: Option<f64>,
    pub theta_max_rad: f64,
    pub samples: usize,
    pub max_abs_deviation: f64,
    pub rms_deviation: f64,
}

impl From<&ComparisonReport> for ReportRecord {
    fn from(r: &ComparisonReport) -> Self {
        Self {
            method_a: r.methods.0.to_string(),
            method_b: r.methods.1.to_string(),
            lambda_over_a: r.regime.lambda_over_a,
            theta_max_rad: r.regime.theta_max,
            samples: r.grid.len(),
            max_abs_deviation: r.max_abs_deviation,
            rms_deviation: r.rms_deviation,
        }
    }
}

pub const REPORT_HEADER: [&str; 7] = [
    "method_a",
    "method_b",
    "lambda_over_a",
    "theta_max_rad",
    "samples",
    "max_abs_deviation",
    "rms_deviation",
];

pub fn write_reports<W: Write>(out: W, reports: &[ComparisonReport], format: Format) -> std::io::Result<()> {
    let records: Vec<ReportRecord> = reports.iter().map(ReportRecord::from).collect();
    match format {
        Format::Json => write_json(out, &records),
        Format::Csv => csv_rows(
            out,
            &REPORT_HEADER,
            records.iter().map(|r| {
                vec![
                    r.method_a.clone(),
                    r.method_b.clone(),
                    fmt_opt(r.lambda_over_a.map(fmt_f64)),
                    fmt_f64(r.theta_max_rad),
                    r.samples.to_string(),
                    fmt_f64(r.max_abs_deviation),
                    fmt_f64(r.rms_deviation),
                ]
            }),
        )
        .map_err(std::io::Error::other),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub lambda_over_a: f64,
    pub theta_max_deg: f64,
    pub huygens_n: Option<usize>,
    pub screen_distance: f64,
    pub worst_pair: String,
    pub max_abs_deviation: f64,
    pub rms_deviation: f64,
    pub huygens_rel_error: Option<f64>,
}

impl From<&SweepRow> for SweepRecord {
    fn from(r: &SweepRow) -> Self {
        Self {
            lambda_over_a: r.lambda_over_a,
            theta_max_deg: r.theta_max,
            huygens_n: r.huygens_n,
            screen_distance: r.screen_distance,
            worst_pair: format!("{}/{}", r.worst_pair.0, r.worst_pair.1),
            max_abs_deviation: r.max_abs_deviation,
            rms_deviation: r.rms_deviation,
            huygens_rel_error: r.huygens_rel_error,
        }
    }
}

pub const SWEEP_HEADER: [&str; 8] = [
    "lambda_over_a",
    "theta_max_deg",
    "huygens_n",
    "screen_distance",
    "worst_pair",
    "max_abs_deviation",
    "rms_deviation",
    "huygens_rel_error",
];

pub fn write_sweep<W: Write>(out: W, rows: &[SweepRow], format: Format) -> std::io::Result<()> {
    let records: Vec<SweepRecord> = rows.iter().map(SweepRecord::from).collect();
    match format {
        Format::Json => write_json(out, &records),
        Format::Csv => csv_rows(
            out,
            &SWEEP_HEADER,
            records.iter().map(|r| {
                vec![
                    fmt_f64(r.lambda_over_a),
                    fmt_f64(r.theta_max_deg),
                    fmt_opt(r.huygens_n),
                    fmt_f64(r.screen_distance),
                    r.worst_pair.clone(),
                    fmt_f64(r.max_abs_deviation),
                    fmt_f64(r.rms_deviation),
                    fmt_opt(r.huygens_rel_error.map(fmt_f64)),
                ]
            }),
        )
        .map_err(std::io::Error::other),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileRecord {
    pub y: f64,
    pub y_over_a: f64,
    pub value: f64,
    pub scaled_value: f64,
    pub top_hat: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandlimitRecord {
    pub slit_width: f64,
    pub k_m: f64,
    pub flatness: f64,
    pub profile: Vec<ProfileRecord>,
}

pub const PROFILE_HEADER: [&str; 6] = ["y", "y_over_a", "value", "scaled_value", "top_hat", "deviation"];

impl From<&BandlimitRun> for BandlimitRecord {
    fn from(run: &BandlimitRun) -> Self {
        let a = run.config.a();
        let root = a.sqrt();
        Self {
            slit_width: a,
            k_m: run.config.k_m(),
            flatness: run.flatness,
            profile: run
                .profile
                .iter()
                .map(|p| ProfileRecord {
                    y: p.y,
                    y_over_a: p.y / a,
                    value: p.value,
                    scaled_value: p.value * root,
                    top_hat: run.config.top_hat(p.y),
                    deviation: p.deviation,
                })
                .collect(),
        }
    }
}

pub fn write_bandlimit<W: Write>(out: W, run: &BandlimitRun, format: Format) -> std::io::Result<()> {
    let record = BandlimitRecord::from(run);
    match format {
        Format::Json => write_json(out, &record),
        Format::Csv => csv_rows(
            out,
            &PROFILE_HEADER,
            record.profile.iter().map(|p| {
                [p.y, p.y_over_a, p.value, p.scaled_value, p.top_hat, p.deviation]
                    .into_iter()
                    .map(fmt_f64)
                    .collect()
            }),
        )
        .map_err(std::io::Error::other),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRecord {
    pub n: usize,
    pub relative_error: f64,
    pub ratio: Option<f64>,
}

pub fn write_convergence<W: Write>(out: W, rows: &[ConvergenceRow], format: Format) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let records: Vec<ConvergenceRecord> = rows
                .iter()
                .map(|r| ConvergenceRecord {
                    n: r.n,
                    relative_error: r.relative_error,
                    ratio: r.ratio,
                })
                .collect();
            write_json(out, &records)
        }
        Format::Csv => csv_rows(
            out,
            &["n", "relative_error", "ratio"],
            rows.iter().map(|r| {
                vec![
                    r.n.to_string(),
                    fmt_f64(r.relative_error),
                    fmt_opt(r.ratio.map(fmt_f64)),
                ]
            }),
        )
        .map_err(std::io::Error::other),
    }
}

/// Writes to `path` if given, otherwise to `stdout`.
pub fn emit<F>(path: Option<&Path>, stdout: &mut dyn Write, write: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> std::io::Result<()>,
{
    match path {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(parent).map_err(|e| HarnessError::io(parent, e))?;
            }
            let file = fs::File::create(p).map_err(|e| HarnessError::io(p, e))?;
            let mut w = std::io::BufWriter::new(file);
            write(&mut w)
                .and_then(|_| w.flush())
                .map_err(|e| HarnessError::io(p, e))
        }
        None => write(stdout).map_err(|e| HarnessError::io("<stdout>", e)),
    }
}

pub(crate) fn read_error(path: &Path, message: String) -> HarnessError {
    HarnessError::Parse {
        path: path.to_path_buf(),
        message,
    }
}

/// Reads a pattern file written by [`write_pattern_dir`], taking the method
/// from the file name (CSV) or the record (JSON).
pub fn read_pattern_file(path: &Path, normalization: Normalization) -> Result<Pattern> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    let is_json = path.extension().is_some_and(|e| e == "json");
    if is_json {
        let record: PatternRecord = serde_json::from_str(&text).map_err(|e| read_error(path, e.to_string()))?;
        return record.to_pattern().map_err(|e| read_error(path, e));
    }
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .and_then(|s| s.strip_prefix("pattern_"))
        .ok_or_else(|| read_error(path, "expected a pattern_<method>.csv file name".into()))?;
    let method: Method = stem
        .replacen('-', ":", 1)
        .parse()
        .map_err(|e: String| read_error(path, e))?;
    read_pattern_csv(text.as_bytes(), method, normalization).map_err(|e| read_error(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use slitdiff_core::{Experiment, ObliquityVariant};

    fn sample_pattern(method: Method, normalization: Normalization) -> Pattern {
        let exp = Experiment::new(
            slitdiff_core::ApertureSpec::double(1.0, 3.0).unwrap(),
            slitdiff_core::WaveSpec::plane(40.0).unwrap(),
            1e3,
        );
        let grid = AngleGrid::symmetric(0.4, 33).unwrap();
        exp.pattern(method, &grid, normalization).unwrap()
    }

    #[test]
    fn float_format_round_trips() {
        for x in [0.0, -0.0, 1.0, 0.1, 1e-300, 5e-324, f64::MAX, 1.0 / 3.0, -2.5e17] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn csv_round_trip_is_exact() {
        for (m, n) in [
            (Method::Marcella, Normalization::Peak),
            (Method::Kirchhoff(ObliquityVariant::Neumann), Normalization::Raw),
            (Method::Huygens(7), Normalization::Probability),
        ] {
            let p = sample_pattern(m, n);
            let mut buf = Vec::new();
            write_pattern_csv(&mut buf, &p, 40.0).unwrap();
            let back = read_pattern_csv(buf.as_slice(), m, n)
                .unwrap()
                .with_lambda_over_a(p.lambda_over_a().unwrap());
            assert_eq!(back, p);
        }
    }

    #[test]
    fn json_round_trip_is_exact() {
        let p = sample_pattern(Method::Fraunhofer, Normalization::Peak);
        let mut buf = Vec::new();
        write_pattern(&mut buf, &p, 40.0, Format::Json).unwrap();
        let rec: PatternRecord = serde_json::from_slice(&buf).unwrap();
        assert_eq!(rec.to_pattern().unwrap(), p);
    }

    #[test]
    fn csv_header_and_row_count() {
        let p = sample_pattern(Method::Marcella, Normalization::Peak);
        let mut buf = Vec::new();
        write_pattern_csv(&mut buf, &p, 40.0).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("theta_rad,sin_theta,k_y,re_amp,im_amp,intensity"));
        assert_eq!(lines.count(), 33);
    }

    #[test]
    fn corrupted_csv_is_rejected() {
        let bad_header = "theta,sin_theta,k_y,re_amp,im_amp,intensity\n0.0,0.0,0.0,1.0,0.0,1.0\n";
        assert!(read_pattern_csv(bad_header.as_bytes(), Method::Marcella, Normalization::Raw).is_err());
        let bad_sin = "theta_rad,sin_theta,k_y,re_amp,im_amp,intensity\n0.1,0.2,0.0,1.0,0.0,1.0\n";
        assert!(read_pattern_csv(bad_sin.as_bytes(), Method::Marcella, Normalization::Raw).is_err());
    }

    #[test]
    fn file_names_use_slugs() {
        assert_eq!(
            pattern_file_name(Method::Huygens(100), Format::Csv),
            "pattern_huygens-100.csv"
        );
        assert_eq!(
            pattern_file_name(Method::Kirchhoff(ObliquityVariant::Dirichlet), Format::Json),
            "pattern_kirchhoff-dirichlet.json"
        );
    }
}
