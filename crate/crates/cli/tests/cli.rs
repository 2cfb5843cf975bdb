use std::f64::consts::TAU;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use slitdiff_cli::output::read_pattern_file;
use slitdiff_cli::{run_compare, run_pattern, run_sweep, RunConfig};
use slitdiff_core::{compare_patterns, double_slit_probability, huygens_convergence, Method, Normalization};

fn slitdiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slitdiff"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("run.cfg");
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn marcella_defaults_to_stdout() {
    let out = slitdiff(&["pattern", "--method", "marcella"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("theta_rad,sin_theta,k_y,re_amp,im_amp,intensity\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 501);
    let peaks: Vec<_> = rows.iter().filter(|r| r[5] == 1.0).collect();
    assert_eq!(peaks.len(), 1);
    assert_eq!(peaks[0][0], 0.0);
    assert_eq!(rows[0][0], -15f64.to_radians());
}

#[test]
fn pattern_directory_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("patterns");
    let cfg_path = write_config(
        dir.path(),
        "slits = 2\nseparation = 3\nsamples = 41\nmethods = marcella, huygens:50, kirchhoff:dirichlet\nnormalize = probability\n",
    );
    for format in ["csv", "json"] {
        let out = slitdiff(&[
            "pattern",
            "--config",
            &cfg_path,
            "--output",
            out_dir.to_str().unwrap(),
            "--format",
            format,
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        let cfg = RunConfig::from_text(&fs::read_to_string(&cfg_path).unwrap()).unwrap();
        for p in run_pattern(&cfg).unwrap() {
            let file = out_dir.join(format!("pattern_{}.{format}", p.method().slug()));
            let mut back = read_pattern_file(&file, Normalization::Probability).unwrap();
            if format == "csv" {
                back = back.with_lambda_over_a(p.lambda_over_a().unwrap());
            }
            assert_eq!(back, p, "{}", file.display());
        }
    }
}

#[test]
fn cli_flag_beats_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "wavelength = 0.5\nsamples = 3\nmethods = marcella\n");
    let rows = csv_rows(&stdout(&slitdiff(&[
        "pattern",
        "--config",
        &cfg,
        "--wavelength",
        "0.1",
    ])));
    let k = rows[2][2] / rows[2][1];
    assert!((k - TAU / 0.1).abs() < 1e-9, "{k}");
    let rows = csv_rows(&stdout(&slitdiff(&["pattern", "--config", &cfg, "--wavenumber", "3"])));
    assert!((rows[2][2] / rows[2][1] - 3.0).abs() < 1e-12);
    let rows = csv_rows(&stdout(&slitdiff(&["pattern", "--config", &cfg])));
    assert!((rows[2][2] / rows[2][1] - TAU / 0.5).abs() < 1e-9);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();

    let cfg = write_config(dir.path(), "samples = 5\nmagnification = 2\n");
    let out = slitdiff(&["pattern", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 2") && stderr(&out).contains("magnification"));

    let out = slitdiff(&["pattern", "--slits", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("separation"));

    let out = slitdiff(&["pattern", "--samples", "many"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("samples"));

    let out = slitdiff(&["pattern", "--wavelength", "1", "--wavenumber", "2"]);
    assert_eq!(out.status.code(), Some(1));

    let out = slitdiff(&["pattern", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));

    let out = slitdiff(&["compare", "--method", "marcella"]);
    assert_eq!(out.status.code(), Some(1));

    let out = slitdiff(&["pattern", "--config", dir.path().join("missing.cfg").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let cfg = write_config(dir.path(), "kirchhoff_panels = 4\nmethods = dirichlet\nsamples = 5\n");
    let out = slitdiff(&["pattern", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("panels"));

    let cfg = write_config(dir.path(), "wavenumber = 12.566370614359172\nconvergence_theta = 30\n");
    let out = slitdiff(&["convergence", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));

    assert_eq!(slitdiff(&["--help"]).status.code(), Some(0));
}

#[test]
fn double_slit_zeros_match_closed_form() {
    let out = slitdiff(&[
        "pattern",
        "--method",
        "marcella",
        "--slits",
        "2",
        "--separation",
        "4",
        "--normalize",
        "raw",
    ]);
    let rows = csv_rows(&stdout(&out));
    for r in &rows {
        let p = double_slit_probability(1.0, 4.0, r[2]).unwrap();
        assert!((r[5] - p).abs() < 1e-14);
        // (a/π) cos²(k_y d/2) bounds the intensity, so it vanishes with the cosine
        let c = (r[2] * 2.0).cos();
        assert!(r[5] <= c * c / std::f64::consts::PI + 1e-15);
    }
}

#[test]
fn huygens_converges_to_marcella_on_defaults() {
    let cfg = RunConfig::from_text("methods = huygens:10000, marcella").unwrap();
    let (_, reports) = run_compare(&cfg).unwrap();
    assert!(reports[0].max_abs_deviation < 1e-3, "{}", reports[0].max_abs_deviation);
}

#[test]
fn compare_with_self_is_zero_and_json_has_metadata() {
    let cfg = RunConfig::from_text("methods = neumann, fraunhofer\nsamples = 51").unwrap();
    let (patterns, _) = run_compare(&cfg).unwrap();
    for p in &patterns {
        let r = compare_patterns(p, p).unwrap();
        assert_eq!((r.max_abs_deviation, r.rms_deviation), (0.0, 0.0));
    }
    let out = slitdiff(&[
        "compare",
        "--method",
        "neumann,fraunhofer",
        "--samples",
        "51",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0]["method_a"], "kirchhoff:neumann");
    assert_eq!(v[0]["lambda_over_a"], 0.05);
    assert_eq!(v[0]["samples"], 51);
}

#[test]
fn single_cell_sweep_matches_compare() {
    let text = "methods = marcella, huygens:500, kirchhoff\nsamples = 101\nsweep_lambda_over_a = 0.2\n";
    let cfg = RunConfig::from_text(text).unwrap();
    let rows = run_sweep(&cfg).unwrap();
    assert_eq!(rows.len(), 1);
    let mut base = cfg.clone();
    base.wave = slitdiff_cli::WaveScale::Wavelength(0.2);
    let (_, reports) = run_compare(&base).unwrap();
    let worst = reports.iter().map(|r| r.max_abs_deviation).fold(0.0, f64::max);
    assert_eq!(rows[0].max_abs_deviation, worst);
}

#[test]
fn deviation_grows_with_wavelength() {
    let cfg = RunConfig::from_text("sweep_lambda_over_a = 0.01, 0.1, 1\n").unwrap();
    let rows = run_sweep(&cfg).unwrap();
    assert!(rows.windows(2).all(|w| w[0].max_abs_deviation < w[1].max_abs_deviation));
}

#[test]
fn huygens_axis_delegates_to_convergence() {
    let ns = [100, 200, 400, 800];
    let cfg = RunConfig::from_text(
        "methods = marcella, huygens\nsamples = 21\nwavelength = 1\nsweep_huygens_n = 100, 200, 400, 800\n",
    )
    .unwrap();
    let rows = run_sweep(&cfg).unwrap();
    let expected = huygens_convergence(1.0, TAU, &ns, 20f64.to_radians()).unwrap();
    for (r, e) in rows.iter().zip(&expected) {
        assert_eq!(r.huygens_n, Some(e.n));
        assert_eq!(r.huygens_rel_error, Some(e.relative_error));
    }
}

#[test]
fn plots_are_written_with_data() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("plots/five.svg");
    let out = slitdiff(&[
        "compare",
        "--method",
        "marcella,fraunhofer,kirchhoff,dirichlet,neumann",
        "--samples",
        "31",
        "--output",
        dir.path().join("report.csv").to_str().unwrap(),
        "--plot",
        svg.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<polyline").count(), 5);
    assert!(text.contains("sin θ") && text.contains("normalized intensity"));
    let data = fs::read_to_string(dir.path().join("plots/five.csv")).unwrap();
    assert_eq!(data.lines().count(), 1 + 5 * 31);

    let svg = dir.path().join("bl.svg");
    let out = slitdiff(&["bandlimit", "--plot", svg.to_str().unwrap()]);
    assert!(out.status.success());
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.contains("y/a") && text.contains("top-hat"));
    assert_eq!(text.matches("<polyline").count(), 2);
}

#[test]
fn bandlimit_and_convergence_outputs() {
    let rows = csv_rows(&stdout(&slitdiff(&["bandlimit"])));
    assert_eq!(rows.len(), 1201);
    let center = &rows[600];
    assert_eq!(center[0], 0.0);
    assert!((center[2] - 0.872654299460602).abs() < 1e-12);

    let out = slitdiff(&["convergence", "--wavelength", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0]["n"], 625);
    assert!(v[0]["ratio"].is_null());
    let r = v[4]["ratio"].as_f64().unwrap();
    assert!((1.7..=2.3).contains(&r));
}

#[test]
fn method_names_in_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = slitdiff(&["pattern", "--samples", "11", "--output", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let mut names: Vec<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(
        names,
        [
            "pattern_fraunhofer.csv",
            "pattern_huygens-10000.csv",
            "pattern_kirchhoff-dirichlet.csv",
            "pattern_kirchhoff-freshman.csv",
            "pattern_kirchhoff-kirchhoff.csv",
            "pattern_kirchhoff-neumann.csv",
            "pattern_marcella.csv",
        ]
    );
    assert!(matches!(
        read_pattern_file(&dir.path().join("pattern_huygens-10000.csv"), Normalization::Peak)
            .unwrap()
            .method(),
        Method::Huygens(10_000)
    ));
}
