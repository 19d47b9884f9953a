use std::process::{Command, Output};

fn exbeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exbeta"))
        .args(args)
        .env_remove("EXBETA_REL_TOL")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn records(out: &Output) -> Vec<serde_json::Value> {
    stdout(out).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn value(out: &Output) -> f64 {
    records(out)[0]["value"].as_f64().unwrap()
}

const UNIFORM: [&str; 10] = ["--xi1", "1", "--xi2", "1", "--p", "0", "--q", "0", "--eta", "0"];
const SYMMETRIC: [&str; 10] = ["--xi1", "2", "--xi2", "2", "--p", "0.3", "--q", "0.3", "--eta", "0.5"];

fn with(head: &[&str], params: &[&str], tail: &[&str]) -> Vec<String> {
    head.iter().chain(params).chain(tail).map(|s| s.to_string()).collect()
}

fn run(args: Vec<String>) -> Output {
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    exbeta(&refs)
}

#[test]
fn kernel_point_and_rejection() {
    let out = exbeta(&["kernel", "--eta", "-0.5", "--t", "1"]);
    assert_eq!(code(&out), 0);
    assert!((value(&out) - std::f64::consts::E).abs() < 1e-15);
    let rec = &records(&out)[0];
    assert_eq!(rec["status"], "ok");
    assert!(rec["error_estimate"].as_f64().unwrap() >= 0.0);

    let out = exbeta(&["kernel", "--eta", "-1.5", "--t", "0"]);
    assert_eq!(code(&out), 2);
    let rec = &records(&out)[0];
    assert_eq!(rec["status"], "domain_error");
    assert!(rec.get("value").is_none() && rec.get("error_estimate").is_none());
}

#[test]
fn kernel_grid_csv_has_one_row_per_point() {
    let out = exbeta(&["kernel", "--eta", "0", "--t-grid", "-5:5:11", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "eta,t,value,error_estimate,status");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|r| r.ends_with(",ok")));
}

#[test]
fn cancellation_is_exit_three() {
    let out = exbeta(&["kernel", "--eta", "-0.9", "--t", "-45"]);
    assert_eq!(code(&out), 3);
    assert_eq!(records(&out)[0]["status"], "cancellation_loss");
    assert!(!out.stderr.is_empty());
}

#[test]
fn numbers_round_trip() {
    let out = exbeta(&["kernel", "--eta", "0.3", "--t", "-2.7"]);
    let text = stdout(&out);
    let raw = text.split("\"value\":").nth(1).unwrap().split(',').next().unwrap();
    let mantissa = raw.split('e').next().unwrap();
    assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17);
    let v: f64 = raw.parse().unwrap();
    assert_eq!(v.to_bits(), value(&out).to_bits());
}

#[test]
fn beta_and_representations() {
    let args = ["beta", "--xi1", "2", "--xi2", "3", "--p", "0", "--q", "0", "--eta", "0.5"];
    let out = exbeta(&args);
    assert_eq!(code(&out), 0);
    assert!((value(&out) - 1.0 / 12.0).abs() < 1e-12);
    let semi = exbeta(&[&args[..], &["--rep", "semiinf"]].concat());
    assert!((value(&semi) - 1.0 / 12.0).abs() < 1e-12);
    let params = ["beta", "--xi1", "1.2", "--xi2", "2.2", "--p", "0.3", "--q", "0.1", "--eta", "0"];
    let direct = value(&exbeta(&params));
    for rep in [&["--rep", "trig"][..], &["--rep", "symmetric"], &["--rep", "affine", "--a", "-3", "--c", "7"]] {
        let v = value(&exbeta(&[&params[..], rep].concat()));
        assert!((v - direct).abs() < 1e-8 * direct);
    }
    let missing = exbeta(&["beta", "--xi1", "2", "--xi2", "3", "--p", "0", "--eta", "0.5"]);
    assert_eq!(code(&missing), 1);
    assert!(missing.stdout.is_empty());
}

#[test]
fn beta_incomplete_and_weight_grid() {
    let lower = run(with(&["beta"], &SYMMETRIC, &["--incomplete", "lower", "--x", "0.5"]));
    let full = run(with(&["beta"], &SYMMETRIC, &[]));
    assert!((2.0 * value(&lower) - value(&full)).abs() < 1e-10 * value(&full));
    let grid = exbeta(&["beta", "--xi1", "2", "--xi2", "2", "--p", "0", "--q", "0", "--eta", "0", "--p-grid", "0:1:5"]);
    assert_eq!(code(&grid), 0);
    let vs: Vec<f64> = records(&grid).iter().map(|r| r["value"].as_f64().unwrap()).collect();
    assert_eq!(vs.len(), 5);
    assert!(vs.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn distribution_queries() {
    let cdf = run(with(&["dist", "cdf"], &UNIFORM, &["--x", "1"]));
    assert_eq!(code(&cdf), 0);
    assert_eq!(value(&cdf), 1.0);
    let mean = run(with(&["dist", "mean"], &SYMMETRIC, &[]));
    assert!((value(&mean) - 0.5).abs() < 1e-12);
    let var = run(with(&["dist", "variance"], &UNIFORM, &[]));
    assert!((value(&var) - 1.0 / 12.0).abs() < 1e-12);
    let cv = run(with(&["dist", "cv"], &UNIFORM, &[]));
    assert!((value(&cv) - 1.0 / 3f64.sqrt()).abs() < 1e-10);
    let m = run(with(&["dist", "moment"], &UNIFORM, &["--n", "2"]));
    assert!((value(&m) - 1.0 / 3.0).abs() < 1e-12);
    let mgf = run(with(&["dist", "mgf"], &UNIFORM, &["--t", "1"]));
    assert!((value(&mgf) - (std::f64::consts::E - 1.0)).abs() < 1e-12);
    let pdf = run(with(&["dist", "pdf"], &UNIFORM, &["--x-grid", "-0.5:1.5:5"]));
    let vs: Vec<f64> = records(&pdf).iter().map(|r| r["value"].as_f64().unwrap()).collect();
    assert_eq!(vs, vec![0.0, 0.0, 1.0, 0.0, 0.0]);
    let rel = run(with(&["dist", "reliability"], &UNIFORM, &["--x", "0.25"]));
    assert!((value(&rel) - 0.75).abs() < 1e-12);
}

#[test]
fn characteristic_function_pairs() {
    let out = run(with(&["dist", "charfn"], &UNIFORM, &["--t", "1"]));
    let v = &records(&out)[0]["value"];
    let (re, im) = (v[0].as_f64().unwrap(), v[1].as_f64().unwrap());
    assert!((re - 1f64.sin()).abs() < 1e-12 && (im - (1.0 - 1f64.cos())).abs() < 1e-12);
    let csv = run(with(&["--format", "csv", "dist", "charfn"], &UNIFORM, &["--t", "1"]));
    assert!(stdout(&csv).lines().next().unwrap().contains("value_re,value_im"));
}

#[test]
fn sampling_is_reproducible() {
    let args = with(&["dist", "sample"], &SYMMETRIC, &["--n", "5", "--seed", "7"]);
    let a = run(args.clone());
    let b = run(args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let xs: Vec<f64> = records(&a).iter().map(|r| r["value"].as_f64().unwrap()).collect();
    assert_eq!(xs.len(), 5);
    assert!(xs.iter().all(|&x| x > 0.0 && x < 1.0));
}

#[test]
fn hypergeometric_methods() {
    let base = ["hyp", "gauss", "--xi1", "1.3", "--xi2", "0.8", "--xi3", "2.2", "--p", "0", "--q", "0", "--eta", "0.4"];
    let at_zero = exbeta(&[&base[..], &["--x", "0"]].concat());
    assert!((value(&at_zero) - 1.0).abs() < 1e-12);
    let series = value(&exbeta(&[&base[..], &["--x", "0.6", "--method", "series"]].concat()));
    let integral = value(&exbeta(&[&base[..], &["--x", "0.6", "--method", "integral"]].concat()));
    assert!((series - integral).abs() < 1e-7 * series);
    let outside = exbeta(&[&base[..], &["--x", "1.5"]].concat());
    assert_eq!(code(&outside), 2);

    let conf = ["hyp", "confluent", "--xi2", "1", "--xi3", "2", "--p", "0", "--q", "0", "--eta", "0", "--x", "1"];
    for method in ["series", "integral", "integral-alt"] {
        let v = value(&exbeta(&[&conf[..], &["--method", method]].concat()));
        assert!((v - (std::f64::consts::E - 1.0)).abs() < 1e-9, "{method}");
    }
}

#[test]
fn verify_passes_and_is_reproducible() {
    let a = exbeta(&["verify", "--seed", "42", "--cases", "20"]);
    let b = exbeta(&["verify", "--seed", "42", "--cases", "20"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let passing = text.lines().filter(|l| l.trim_end().ends_with("pass")).count();
    assert!(passing >= 9, "{text}");
    assert!(!text.lines().any(|l| l.trim_end().ends_with("FAIL")));
}

#[test]
fn verify_fails_under_impossible_tolerance() {
    let out = exbeta(&["verify", "--seed", "42", "--cases", "3", "--tol", "1e-30"]);
    assert_ne!(code(&out), 0);
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn output_file_and_tolerance_flags() {
    let dir = std::env::temp_dir().join(format!("exbeta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.jsonl");
    let out = exbeta(&["--out", path.to_str().unwrap(), "kernel", "--eta", "1", "--t", "-3"]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"status\":\"ok\""));
    std::fs::remove_dir_all(&dir).unwrap();

    let coarse = exbeta(&["--rel-tol", "1e-6", "beta", "--xi1", "1.5", "--xi2", "2", "--p", "0.2", "--q", "0.2", "--eta", "0"]);
    assert_eq!(code(&coarse), 0);
    let bad = exbeta(&["--rel-tol", "-1", "beta", "--xi1", "1.5", "--xi2", "2", "--p", "0.2", "--q", "0.2", "--eta", "0"]);
    assert_ne!(code(&bad), 0);
    let help = exbeta(&["--help"]);
    assert_eq!(code(&help), 0);
}
