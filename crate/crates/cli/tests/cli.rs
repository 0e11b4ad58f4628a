use dunkl_cesaro::operators::l2_norm_exact;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dunkl-cesaro"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines().map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn help_succeeds() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["norms", "--help"])), 0);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["norms", "--bogus", "1"])), 2);
    assert_eq!(code(&run(&["norms", "--d", "two"])), 2);
    assert_eq!(code(&run(&["norms", "--N", "5..3"])), 2);
    assert_eq!(code(&run(&["kernel", "--form", "nope"])), 2);
    assert_eq!(code(&run(&["verify", "--suite", "nope"])), 2);
    assert_eq!(code(&run(&["verify", "--tol-profile", "tight"])), 2);
}

#[test]
fn domain_errors_exit_1_with_message() {
    let out = run(&["kernel", "--form", "complex_extended", "--p", "1.5"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("p must exceed 2"));
    let out = run(&["norms", "--p", "0.5", "--N", "2", "--m", "0"]);
    assert_eq!(code(&out), 1);
    let out = run(&["kernel", "--form", "funk_hecke_d_plus_1", "--gamma", "0.3"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn kernel_below_order_is_zero() {
    let out = run(&["kernel", "--form", "laguerre_sum", "--N", "3", "--m", "5", "--r", "0.2:2:4"]);
    assert_eq!(code(&out), 0);
    let table = rows(&stdout(&out));
    assert_eq!(table[0], ["r", "s", "form", "re", "im"]);
    assert_eq!(table.len(), 1 + 16);
    for row in &table[1..] {
        assert_eq!(row[2], "laguerre_sum");
        assert_eq!(row[3].parse::<f64>().unwrap(), 0.0);
        assert_eq!(row[4].parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn kernel_forms_agree() {
    let args = ["--N", "6", "--m", "2", "--gamma", "0.6", "--r", "0.4,1.3", "--s", "0.9"];
    let eval = |form: &str| -> Vec<f64> {
        let out = run(&[&["kernel", "--form", form][..], &args[..]].concat());
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        rows(&stdout(&out))[1..].iter().map(|r| r[3].parse().unwrap()).collect()
    };
    let lag = eval("laguerre_sum");
    for form in ["funk_hecke_d", "funk_hecke_d_plus_1"] {
        for (a, b) in lag.iter().zip(eval(form)) {
            assert!((a - b).abs() < 1e-8 * a.abs().max(1.0), "{form}: {a} vs {b}");
        }
    }
}

#[test]
fn p2_norm_rows_match_diagonalization() {
    let out = run(&["norms", "--d", "2", "--gamma", "0.3", "--delta", "2.1", "--p", "2", "--N", "0..60", "--m", "0..10"]);
    assert_eq!(code(&out), 0);
    let table = rows(&stdout(&out));
    assert_eq!(table[0], ["N", "m", "p", "delta", "gamma", "norm", "method"]);
    assert_eq!(table.len(), 1 + 61 * 11);
    for row in &table[1..] {
        let n: usize = row[0].parse().unwrap();
        let m: usize = row[1].parse().unwrap();
        let exact = l2_norm_exact(n, m, 2.1).unwrap();
        assert_eq!(row[5].parse::<f64>().unwrap(), exact);
        assert_eq!(row[6], "exact");
        // 17 significant digits
        assert_eq!(row[5].split('e').next().unwrap().len(), 18);
    }
}

#[test]
fn runs_are_byte_identical() {
    let args = ["norms", "--p", "4", "--N", "3..6", "--m", "0..2", "--seed", "11"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let single = bin().args(args).env("DUNKL_CESARO_THREADS", "1").output().unwrap();
    assert_eq!(single.stdout, a.stdout);
}

#[test]
fn thread_variable_is_validated() {
    let out = bin().args(["norms", "--N", "1"]).env("DUNKL_CESARO_THREADS", "zero").output().unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn config_file_then_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"gamma": 0.4, "delta": 1.9, "N": "2..3", "m": 1, "p": [2]}"#).unwrap();
    let cfg = cfg.to_str().unwrap();
    let out = run(&["norms", "--config", cfg]);
    assert_eq!(code(&out), 0);
    let table = rows(&stdout(&out));
    assert_eq!(table.len(), 3);
    assert_eq!(table[1][4].parse::<f64>().unwrap(), 0.4);
    let out = run(&["norms", "--config", cfg, "--N", "5", "--gamma", "0.2"]);
    let table = rows(&stdout(&out));
    assert_eq!(table.len(), 2);
    assert_eq!(table[1][0], "5");
    assert_eq!(table[1][4].parse::<f64>().unwrap(), 0.2);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"gama": 0.4}"#).unwrap();
    assert_eq!(code(&run(&["norms", "--config", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["norms", "--config", "/nonexistent/run.json"])), 2);
}

#[test]
fn converge_writes_decreasing_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("conv.csv");
    let out = run(&["converge", "--N", "4..30", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let table = rows(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(table[0], ["N", "error"]);
    assert_eq!(table[1][0], "4");
    assert_eq!(table.len(), 1 + 27);
    let errs: Vec<f64> = table[1..].iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(errs.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn pairing_respects_dual_bound() {
    let out = run(&["pairing", "--N", "0..6", "--betas", "-1,0,1"]);
    assert_eq!(code(&out), 0);
    let table = rows(&stdout(&out));
    assert_eq!(table[0], ["N", "zeta_re", "zeta_im", "re", "im", "dual_bound"]);
    assert_eq!(table.len(), 1 + 7 * 3 * 3);
    for row in &table[1..] {
        let v: Vec<f64> = row[3..].iter().map(|x| x.parse().unwrap()).collect();
        assert!(v[0].hypot(v[1]) <= v[2] * (1.0 + 1e-12));
    }
}

#[test]
fn verify_quick_suite_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["verify", "--suite", "quick", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["pass"], true);
    assert!(report.get("wall_time_s").is_none());
    assert!(!report["checks"].as_array().unwrap().is_empty());
    assert!(Path::new(&path).exists());
}
