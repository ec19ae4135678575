use std::path::Path;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pulse-density")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value(text: &str, key: &str) -> f64 {
    let line = text.lines().find(|l| l.starts_with(key)).unwrap_or_else(|| panic!("no {key} in\n{text}"));
    line.split('=').nth(1).unwrap().trim().parse().unwrap()
}

fn data_rows(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(str::to_owned).collect();
    let rows = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows)
}

#[test]
fn bound_reference_value() {
    let o = bin(&["bound", "--alpha", "0.5", "--beta", "1.5", "--n-mean", "1"]);
    assert!(o.status.success());
    assert!((value(&stdout(&o), "bound_normalized") - 0.0211086).abs() < 1e-6);
}

#[test]
fn bound_scales_with_photon_number() {
    let one = value(&stdout(&bin(&["bound", "--n-mean", "1"])), "bound_normalized");
    let many = value(&stdout(&bin(&["bound", "--n-mean", "250"])), "bound_normalized");
    assert!((many - 250.0 * one).abs() <= 1e-12 * many);
}

#[test]
fn precondition_failure_exits_one() {
    let o = bin(&["bound", "--alpha", "2", "--beta", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("beta must be ≥ alpha"));
    assert!(o.stdout.is_empty());
    assert_eq!(bin(&["synthesize", "--axis", "0,0,0"]).status.code(), Some(1));
    assert_eq!(bin(&["mc", "--trials", "0"]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    for args in [&["nonsense"][..], &["bound", "--frequency", "3"], &["scan", "--x", "1:2"], &[]] {
        let o = bin(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn scan_csv_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let args = [
        "scan",
        "--n-omega",
        "12",
        "--n-theta",
        "12",
        "--n-phi",
        "8",
        "--axis",
        "0,1,1",
        "--x",
        "-3:3:4",
        "--z",
        "-1:1:3",
        "--t",
        "-2:2:3",
        "--classical",
        "--output",
    ];
    let o = Command::new(env!("CARGO_BIN_EXE_pulse-density")).args(args).arg(&path).output().unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# tool = pulse-density"));
    assert!(text.lines().last().unwrap().starts_with("# summary"));
    let (header, rows) = data_rows(&text);
    assert_eq!(header[..18].join(","), "x,y,z,t,Ue,Ub,ReEx,ImEx,ReEy,ImEy,ReEz,ImEz,ReBx,ImBx,ReBy,ImBy,ReBz,ImBz");
    assert_eq!(header[18..], ["UeClassical", "UbClassical"]);
    assert_eq!(rows.len(), 4 * 3 * 3);
    for r in &rows {
        let ue: f64 = r[6..12].iter().map(|v| v * v).sum();
        let ub: f64 = r[12..18].iter().map(|v| v * v).sum();
        assert!((ue - r[4]).abs() <= 1e-9 * r[4]);
        assert!((ub - r[5]).abs() <= 1e-9 * r[5].max(1e-300));
        // (1/2)(2 Re E)^2
        let classical: f64 = 2.0 * [6, 8, 10].iter().map(|&i| r[i] * r[i]).sum::<f64>();
        assert!((classical - r[18]).abs() <= 1e-12 * classical.max(1e-300));
    }
    // rows run x fastest, t slowest
    assert_eq!((rows[0][0], rows[1][0], rows[4][2]), (-3.0, -1.0, 0.0));
}

fn run_to(args: &[&str], path: &Path) -> Vec<u8> {
    let o = Command::new(env!("CARGO_BIN_EXE_pulse-density")).args(args).arg("--output").arg(path).output().unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::read(path).unwrap()
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 3] = [
        &["scan", "--random-seed", "7", "--n-omega", "8", "--n-theta", "8", "--n-phi", "6", "--x", "-2:2:9"],
        &["mc", "--trials", "300", "--n-omega", "6", "--n-theta", "6", "--n-phi", "6", "--seed", "3"],
        &["spectrum", "--alpha", "0.6", "--beta", "1.4"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let a = run_to(args, &dir.path().join(format!("a{i}")));
        let b = run_to(args, &dir.path().join(format!("b{i}")));
        assert!(!a.is_empty());
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn spectrum_reports_cubic_slope() {
    let o = bin(&["spectrum"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let (header, rows) = data_rows(&text);
    assert_eq!(header, ["omega", "amplitude", "power"]);
    assert!(rows.iter().all(|r| (r[2] - r[1] * r[1]).abs() <= 1e-15 * r[2].max(1e-300)));
    let last = text.lines().last().unwrap();
    let slope: f64 = last.split_whitespace().nth(3).unwrap().parse().unwrap();
    assert!((slope - 3.0).abs() < 0.05, "{last}");
}

#[test]
fn mc_histogram_counts_every_trial() {
    let o = bin(&["mc", "--trials", "500", "--n-omega", "8", "--n-theta", "8", "--n-phi", "8"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let (header, rows) = data_rows(&text);
    assert_eq!(header, ["log10_lo", "log10_hi", "lo", "hi", "count"]);
    assert_eq!(rows.iter().map(|r| r[4]).sum::<f64>(), 500.0);
    assert!(text.contains("passed = true"));
}

#[test]
fn synthesize_at_focus_hits_bound_in_si() {
    let o = bin(&["synthesize", "--lambda0-nm", "800", "--lambda-min-nm", "600", "--lambda-max-nm", "1200"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (_, rows) = data_rows(&stdout(&o));
    let b = bin(&["bound", "--lambda0-nm", "800", "--lambda-min-nm", "600", "--lambda-max-nm", "1200"]);
    let bound = value(&stdout(&b), "bound_si_j_per_m3");
    assert!((rows[0][4] / bound - 1.0).abs() < 1e-8);
}

#[test]
fn verify_small_grid_passes() {
    // the tau = 50 oracle point needs the default spectral order
    let o = bin(&["verify", "--trials", "200", "--n-theta", "16", "--n-phi", "8"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("14 checks, 14 passed, 0 failed"));
}
