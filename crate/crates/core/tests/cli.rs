use std::process::{Command, Output};

use mlradii::{MLParams, Normalization, ProblemSpec, RadiusResult, RadiusSolver, WiVerdict, ZeroTable};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mlradii")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = run(&a);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

const SINE: [&str; 6] = ["--omega", "2", "--beta", "2", "--gamma", "1"];

fn with_sine<'a>(head: &[&'a str], tail: &[&'a str]) -> Vec<&'a str> {
    head.iter().chain(SINE.iter()).chain(tail.iter()).copied().collect()
}

#[test]
fn eval_examples() {
    let v = json(&["eval", "--omega", "1", "--beta", "1", "--gamma", "1", "--x", "1"]);
    assert!((v["result"]["value"].as_f64().unwrap() - std::f64::consts::E).abs() < 1e-15);
    let v = json(&with_sine(&["eval"], &["--x", "-9.869604401"]));
    assert!(v["result"]["value"].as_f64().unwrap().abs() < 1e-9);
    let o = run(&["eval", "--omega", "0", "--beta", "1", "--gamma", "1", "--x", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("omega"));
}

#[test]
fn radius_examples_and_json_round_trip() {
    let v = json(&with_sine(&["radius", "--problem", "star", "--norm", "g"], &["--rho", "0", "--assume-real-zeros"]));
    let res: RadiusResult = serde_json::from_value(v["result"].clone()).unwrap();
    assert!((res.radius - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
    let direct = RadiusSolver::new(MLParams::new(2.0, 2.0, 1.0).unwrap(), Normalization::G)
        .assume_real_zeros(true)
        .solve(&ProblemSpec::Starlike { rho: 0.0 })
        .unwrap();
    assert_eq!(res, direct);
    assert_eq!(v["settings"]["tol"], 1e-10);
    assert_eq!(v["settings"]["grid"], 720);
    assert_eq!(v["settings"]["delta"], 1e-3);
    assert_eq!(v["settings"]["max_depth"], 64);

    let v = json(&with_sine(
        &["radius", "--problem", "ucv", "--norm", "g"],
        &["--eta", "1", "--rho", "0", "--assume-real-zeros"],
    ));
    assert!((v["result"]["radius"].as_f64().unwrap() - 0.653_271_187_094_403).abs() < 1e-9);

    let o = run(&with_sine(&["radius", "--problem", "strong", "--norm", "g"], &["--rho", "0"]));
    assert_eq!(o.status.code(), Some(2));
    let o = run(&with_sine(&["radius", "--problem", "star", "--norm", "g"], &["--rho", "0"]));
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn radius_with_verification() {
    let v = json(&with_sine(&["radius", "--problem", "convex", "--norm", "g"], &["--assume-real-zeros", "--verify"]));
    assert_eq!(v["result"]["verified"], "passed");
    assert_eq!(v["verification"]["inner_pass"], true);
    assert_eq!(v["verification"]["outer_fail"], true);
}

#[test]
fn csv_has_header_and_full_precision() {
    let o = run(&with_sine(
        &["radius", "--problem", "star", "--norm", "g"],
        &["--assume-real-zeros", "--format", "csv"],
    ));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header = rdr.headers().unwrap().clone();
    let col = header.iter().position(|h| h == "radius").unwrap();
    let row = rdr.records().next().unwrap().unwrap();
    let field = &row[col];
    let mantissa = field.split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 17, "{field}");
    assert!((field.parse::<f64>().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
}

#[test]
fn sweep_examples() {
    let v = json(&with_sine(
        &["sweep", "--problem", "star", "--norm", "g"],
        &["--assume-real-zeros", "--vary", "rho", "--from", "0", "--to", "0.9", "--steps", "5"],
    ));
    let radii: Vec<f64> = v["rows"].as_array().unwrap().iter().map(|r| r["radius"].as_f64().unwrap()).collect();
    assert_eq!(radii.len(), 5);
    assert!(radii.windows(2).all(|w| w[1] < w[0]));
    let values: Vec<f64> = v["rows"].as_array().unwrap().iter().map(|r| r["value"].as_f64().unwrap()).collect();
    assert!(values.windows(2).all(|w| w[0] < w[1]));

    let o = run(&with_sine(
        &["sweep", "--problem", "alphaconvex", "--norm", "g"],
        &["--assume-real-zeros", "--vary", "alpha", "--from", "0", "--to", "1", "--steps", "3", "--format", "csv"],
    ));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let radii: Vec<f64> = rdr.records().map(|r| r.unwrap()[2].parse().unwrap()).collect();
    assert!((radii[0] - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
    assert!((radii[2] - 0.860_333_589_019_379_8).abs() < 1e-9);

    let o = run(&with_sine(
        &["sweep", "--problem", "star", "--norm", "g"],
        &["--vary", "rho", "--from", "0", "--to", "0.9", "--steps", "1"],
    ));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_rows_report_point_errors() {
    // rho = 1 is outside [0, 1) and fails on its own row
    let v = json(&with_sine(
        &["sweep", "--problem", "star", "--norm", "g"],
        &["--assume-real-zeros", "--vary", "rho", "--from", "0.5", "--to", "1", "--steps", "2"],
    ));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows[0]["status"], "ok");
    assert!(rows[1]["radius"].is_null());
    assert_ne!(rows[1]["status"], "ok");
}

#[test]
fn wi_check_examples() {
    let v = json(&["wi-check", "--omega", "3", "--beta", "1"]);
    let verdict: WiVerdict = serde_json::from_value(v["verdict"].clone()).unwrap();
    assert_eq!(format!("{:?}", verdict.status), "Member");
    let w = verdict.witness.unwrap();
    assert!((w.origin.omega() - 1.5).abs() < 1e-12 && w.origin.beta == 1.0);
    assert_eq!(format!("{:?}", w.ops), "[A]");
    for (o, b) in [("1.2", "1"), ("2", "2"), ("0.7", "1")] {
        let v = json(&["wi-check", "--omega", o, "--beta", b]);
        assert_eq!(v["verdict"]["status"], "NonMember", "({o}, {b})");
        assert!(!v["verdict"]["reason"].as_str().unwrap().is_empty());
    }
    let o = run(&["wi-check", "--omega", "3", "--beta", "-1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn zeros_command() {
    let v = json(&["zeros", "--omega", "2", "--beta", "1", "--gamma", "1", "--target", "lambda", "--count", "3"]);
    let t: ZeroTable = serde_json::from_value(v).unwrap();
    for (i, z) in t.zeros.iter().enumerate() {
        assert!((z - (2 * i + 1) as f64 * std::f64::consts::FRAC_PI_2).abs() < 1e-10);
    }
    let o = run(&["zeros", "--omega", "2", "--beta", "1", "--gamma", "1", "--target", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_flags_exit_2() {
    assert_eq!(run(&["radius", "--problem", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--omega", "pi/2", "--beta", "1", "--gamma", "1", "--x", "1"]).status.code(), Some(2));
}
