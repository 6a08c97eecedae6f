mod common;

use common::{c, klein_j_divisor, kronecker_direct, I};
use num_complex::Complex64 as C64;
use serde_json::Value;
use ybkit::cli::{parse_complex, run, EXIT_CONFIG, EXIT_FAIL, EXIT_PASS};

fn ybkit(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ybkit").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = ybkit(args);
    assert!(!out.is_empty(), "no output; stderr: {err}");
    (code, serde_json::from_str(&out).unwrap())
}

fn cx(v: &Value) -> C64 {
    c(v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("ybkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn complex_tokens() {
    assert_eq!(parse_complex("i").unwrap(), I);
    assert_eq!(parse_complex("2i").unwrap(), c(0.0, 2.0));
    assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
    assert_eq!(parse_complex("0.5+0.9j").unwrap(), c(0.5, 0.9));
    assert_eq!(parse_complex("1e-3-2e+1i").unwrap(), c(1e-3, -20.0));
    assert_eq!(parse_complex("0.25").unwrap(), c(0.25, 0.0));
    assert!(parse_complex("abc").is_err());
    assert!(parse_complex("").is_err());
}

#[test]
fn eval_cybe_h_coefficient() {
    // (1 + μ)/(4(1 − μ)) on h⊗h at μ = 2.
    let (code, v) = json(&["eval", "--family", "trig-cybe1", "--mu", "2"]);
    assert_eq!(code, EXIT_PASS);
    let coeffs = &v["points"][0]["value"]["coeffs"];
    assert!((cx(&coeffs[0]) - c(-0.75, 0.0)).norm() < 1e-12);
    assert!((cx(&coeffs[3]) - c(0.75, 0.0)).norm() < 1e-12);
}

#[test]
fn eval_scalar_rational() {
    let (code, v) = json(&["eval", "--family", "scalar-rational", "--a", "1", "--b", "1", "--u", "0.5", "--v", "0.25"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(cx(&v["points"][0]["value"]["coeffs"][0]), c(6.0, 0.0));
}

#[test]
fn eval_elliptic_rank_one_is_kronecker_with_flipped_v() {
    let (_, v) = json(&["eval", "--family", "elliptic", "--d", "1", "--r", "1", "--tau", "i", "--u", "0.2", "--v", "0.3"]);
    let got = cx(&v["points"][0]["value"]["coeffs"][0]);
    let want = kronecker_direct(c(0.2, 0.0), c(-0.3, 0.0), I);
    assert!((got - want).norm() < 1e-10, "{got} vs {want}");
}

#[test]
fn eval_reports_poles_per_point() {
    let (code, v) = json(&["eval", "--family", "trig1", "--u", "0", "--u", "0.2", "--v", "0.3"]);
    assert_eq!(code, EXIT_PASS);
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 2);
    assert!(pts[0]["error"].is_string() && pts[0]["value"].is_null());
    assert!(pts[1]["value"].is_object());
}

#[test]
fn eval_csv_has_index_header() {
    let (code, out, _) = ybkit(&["--csv", "eval", "--family", "trig1", "--u", "0.2", "--v", "0.3"]);
    assert_eq!(code, EXIT_PASS);
    let mut lines = out.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("u_re,u_im,v_re,v_im,c0000_re,c0000_im"));
    assert!(header.ends_with("c1111_re,c1111_im,error"));
    assert_eq!(header.split(',').count(), lines.next().unwrap().split(',').count());
}

#[test]
fn verify_exit_codes() {
    let (code, v) = json(&["verify", "--family", "elliptic", "--d", "2", "--r", "1", "--tau", "i"]);
    assert_eq!(code, EXIT_PASS, "{v}");
    assert!(v.as_array().unwrap().iter().all(|r| r["pass"] == true));

    let (code, v) = json(&["verify", "--family", "trig1", "--perturb", "1e-3"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(v.as_array().unwrap().iter().any(|r| r["pass"] == false));

    let (code, v) = json(&["verify", "--family", "trig1", "--check", "cybe"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["equation"], "cybe");
}

#[test]
fn verify_tolerance_override_can_fail_a_check() {
    let (code, v) = json(&["verify", "--family", "elliptic", "--check", "aybe", "--tol", "aybe=1e-30"]);
    assert_eq!(code, EXIT_FAIL);
    assert_eq!(v[0]["tolerance"].as_f64().unwrap(), 1e-30);
    let (code, _, err) = ybkit(&["verify", "--family", "trig1", "--tol", "bogus=1"]);
    assert_eq!(code, EXIT_CONFIG);
    assert!(err.contains("bogus"));
}

#[test]
fn classify_examples() {
    let (code, v) = json(&["classify", "--family", "scalar-trig"]);
    assert_eq!(code, EXIT_PASS);
    assert!((cx(&v["classification"]["c"]["finite"]) - c(-20.0 / 49.0, 0.0)).norm() < 1e-10);
    assert_eq!(v["classification"]["verdict"], "trigonometric-like");

    let (_, v) = json(&["classify", "--family", "scalar-kronecker", "--tau", "2i"]);
    let want = c(-20.0 / 49.0, 0.0) * (1.0 - 1728.0 / klein_j_divisor(c(0.0, 2.0)));
    assert!((cx(&v["classification"]["c"]["finite"]) - want).norm() < 1e-6);
    assert_eq!(v["classification"]["verdict"], "elliptic-like");

    let (_, v) = json(&["classify", "--family", "scalar-rational"]);
    assert_eq!(v["classification"]["verdict"], "rational-like");
    assert!(v["classification"]["c"].is_null());
}

#[test]
fn classify_rejects_matrix_families() {
    let (code, _, err) = ybkit(&["classify", "--family", "trig1"]);
    assert_eq!(code, EXIT_CONFIG);
    assert!(err.starts_with("error:"));
}

#[test]
fn oracle_examples() {
    for case in ["1", "2"] {
        let (code, v) = json(&["oracle", "--case", case, "--samples", "20"]);
        assert_eq!(code, EXIT_PASS);
        assert!(v["max_deviation"].as_f64().unwrap() < 1e-10);
    }
    let (code, v) = json(&["oracle", "--case", "2", "--trivialization", "constant"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["factors_through_lambda_mu"], false);
    assert_eq!(ybkit(&["oracle", "--case", "3"]).0, EXIT_CONFIG);
}

#[test]
fn sweep_c_over_imaginary_axis_approaches_trig_value() {
    let (code, v) = json(&["sweep", "--quantity", "c", "--range", "1i:3i:5"]);
    assert_eq!(code, EXIT_PASS);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    let trig = c(-20.0 / 49.0, 0.0);
    let gaps: Vec<f64> = rows.iter().map(|r| (c(r["values"][0].as_f64().unwrap(), r["values"][1].as_f64().unwrap()) - trig).norm()).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
    for r in rows {
        let vals: Vec<f64> = r["values"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
        assert!((c(vals[0], vals[1]) - c(vals[2], vals[3])).norm() < 1e-6);
    }
}

#[test]
fn sweep_rank_and_unitarity() {
    let (_, v) = json(&["sweep", "--family", "elliptic", "--d", "2", "--quantity", "rank", "--range", "0.1:0.4:4"]);
    for r in v["rows"].as_array().unwrap() {
        assert_eq!(r["values"][0].as_f64().unwrap(), 4.0);
    }
    let (_, v) = json(&["sweep", "--family", "trig2", "--quantity", "unitarity", "--range", "0.1:0.9:5"]);
    for r in v["rows"].as_array().unwrap() {
        assert!(r["values"][0].as_f64().unwrap() < 1e-10);
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["verify", "--family", "elliptic", "--d", "3", "--tau", "0.5+0.9i", "--seed", "5", "--samples", "4"];
    assert_eq!(ybkit(&args), ybkit(&args));
    let sweep = ["--csv", "sweep", "--quantity", "j-deviation", "--range", "1i:2i:4"];
    assert_eq!(ybkit(&sweep), ybkit(&sweep));
}

#[test]
fn config_file_and_out_path() {
    let cfg = scratch("cfg.json");
    std::fs::write(&cfg, r#"{"family":"elliptic-aybe","d":2,"tau":"i","seed":3,"samples":3}"#).unwrap();
    let out = scratch("report.json");
    let (code, stdout, _) = ybkit(&["verify", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    assert!(stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report[0]["points"].as_array().unwrap().len(), 3);

    std::fs::write(&cfg, r#"{"famly":"trig1"}"#).unwrap();
    assert_eq!(ybkit(&["verify", "--config", cfg.to_str().unwrap()]).0, EXIT_CONFIG);
}

#[test]
fn descriptor_file_input() {
    let d = scratch("handle.json");
    std::fs::write(&d, r#"{"family":"scalar-rational","a":[1.0,0.0],"b":[1.0,0.0]}"#).unwrap();
    let (code, v) = json(&["eval", "--descriptor", d.to_str().unwrap(), "--u", "0.5", "--v", "0.25"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(cx(&v["points"][0]["value"]["coeffs"][0]), c(6.0, 0.0));
    assert_eq!(v["handle"]["family"], "scalar-rational");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ybkit(&[]).0, EXIT_CONFIG);
    assert_eq!(ybkit(&["frobnicate"]).0, EXIT_CONFIG);
    assert_eq!(ybkit(&["eval", "--family", "trig1", "--u", "0.1"]).0, EXIT_CONFIG);
    assert_eq!(ybkit(&["eval", "--family", "trig1", "--u", "x", "--v", "0.1"]).0, EXIT_CONFIG);
    assert_eq!(ybkit(&["verify"]).0, EXIT_CONFIG);
    assert_eq!(ybkit(&["verify", "--family", "elliptic", "--tau", "-i"]).0, EXIT_CONFIG);
    assert_eq!(ybkit(&["--help"]).0, EXIT_PASS);
}
