use std::io::Write;
use std::process::{Command, Output};

use kmweyl_core::calogero::{affine_invariant_potential, partial_sum_potential, PartialSumFamily};
use serde_json::Value;

fn kmweyl(args: &[&str]) -> Output {
    kmweyl_env(args, &[])
}

fn kmweyl_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_kmweyl"));
    c.args(args).env_remove("KMWEYL_THREADS");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = kmweyl(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn data_rows(s: &str) -> Vec<Vec<&str>> {
    s.lines().filter(|l| !l.starts_with('#')).map(|l| l.split('\t').collect()).collect()
}

#[test]
fn affine_sub_word_has_order_three() {
    assert_eq!(ok(&["order", "--algebra", "a2m2", "--word", "1,2"]), "3\n");
    assert_eq!(ok(&["order", "--algebra", "a2m2", "--word", "0,1,2"]), "infinite\n");
    let j: Value = serde_json::from_str(&ok(&["order", "--algebra", "a3m2", "--word", "1,2,3", "--output", "json"])).unwrap();
    assert_eq!(j["order"], 4);
}

#[test]
fn kostant_identity_holds() {
    assert_eq!(ok(&["kostant", "--algebra", "a3m2"]), "kostant: OK\n");
    assert_eq!(ok(&["kostant", "--algebra", "a3m2", "--minus", "-2,0,2", "--plus", "-1,1,3"]), "kostant: OK\n");
    // 0 and 1 are adjacent
    let o = kmweyl(&["kostant", "--algebra", "a3m2", "--minus", "-2,0,1", "--plus", "-1,2,3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn affine_slice_has_thirty_roots() {
    let out = ok(&["roots", "--algebra", "a2m2", "--bounds", "0:0,0:0,0:5,0:5,0:5"]);
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 30);
    assert!(out.starts_with("# a[-2]\ta[-1]\ta[0]\ta[1]\ta[2]\tnorm\n"));
    assert!(rows.iter().all(|r| r.len() == 6 && r[0] == "0" && r[1] == "0" && r[5] == "2"));
}

#[test]
fn orbit_rows_follow_the_window() {
    let out = ok(&["orbit", "--algebra", "a2m2", "--word", "0,1,2", "--seed", "0,0,0,0,1", "--range", "-10:10"]);
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 21);
    assert_eq!(rows[10], ["0", "0", "0", "0", "0", "1"]);
    assert_eq!(rows[11], ["1", "0", "0", "-2", "-1", "-1"]);
    assert_eq!(rows[9], ["-1", "0", "0", "1", "2", "2"]);
}

#[test]
fn recurrence_report_shape() {
    let j: Value = serde_json::from_str(&ok(&["recurrence", "--algebra", "a2m2", "--word", "-1,0,1,2"])).unwrap();
    let order = j["order"].as_u64().unwrap() as usize;
    assert_eq!(j["coeffs"].as_array().unwrap().len(), order);
    assert_eq!(j["char_poly"].as_array().unwrap().len(), order + 1);
    let mult: u64 = j["roots"].as_array().unwrap().iter().map(|r| r["mult"].as_u64().unwrap()).sum();
    assert_eq!(mult as usize, order);
    assert_eq!(j["closed_form"]["ok"], true);
}

#[test]
fn invariants_of_degree_two_and_four() {
    for (deg, dim) in [("1", 0), ("2", 1), ("3", 0)] {
        let j: Value = serde_json::from_str(&ok(&["invariants", "--algebra", "a2m2", "--degree", deg])).unwrap();
        assert_eq!(j.as_array().unwrap().len(), dim, "degree {deg}");
    }
    let j: Value = serde_json::from_str(&ok(&["invariants", "--algebra", "a3m2", "--degree", "4"])).unwrap();
    let basis = j.as_array().unwrap();
    assert_eq!(basis.len(), 1);
    assert_eq!(basis[0]["degree"], 4);
    let m = basis[0]["monomials"].as_array().unwrap();
    assert!(m.iter().all(|t| t["exponents"].as_array().unwrap().iter().map(|e| e.as_u64().unwrap()).sum::<u64>() == 4));
}

#[test]
fn match_summaries() {
    let cases = [
        ("affine", "5", "# terms=30\torbits=9\tunmatched=0"),
        ("hyperbolic", "5", "# terms=84\torbits=32\tunmatched=0"),
        ("lorentzian", "3", "# terms=77\torbits=39\tunmatched=0"),
    ];
    for (mode, level, summary) in cases {
        let out = ok(&["potential", "match", "--algebra", "a2m2", "--mode", mode, "--level", level, "--kwindow", "8"]);
        assert_eq!(out.lines().last().unwrap(), summary, "{mode}");
        let rows = data_rows(&out);
        assert!(rows.iter().all(|r| r.len() == 5));
        assert!(rows.iter().enumerate().all(|(i, r)| r[0] == i.to_string()));
    }
}

#[test]
fn eval_agrees_with_the_library() {
    let q = [0.3, 0.7, 0.1, 0.2, 0.9, 0.4, 0.5];
    let qs = "0.3,0.7,0.1,0.2,0.9,0.4,0.5";
    let j: Value = serde_json::from_str(&ok(&["potential", "eval", "--form", "affine-closed", "--q", qs, "--g", "2"])).unwrap();
    let want = affine_invariant_potential(&q, 2.0).unwrap();
    assert!((j["value"].as_f64().unwrap() - want).abs() <= 1e-10 * want);
    assert_eq!(j["terms"].as_array().unwrap().len(), 9);
    let sum: f64 = j["terms"].as_array().unwrap().iter().map(|t| t["value"].as_f64().unwrap()).sum();
    assert!((sum - want).abs() <= 1e-10 * want);

    for f in PartialSumFamily::ALL {
        let j: Value = serde_json::from_str(&ok(&["potential", "eval", "--form", f.name(), "--q", qs])).unwrap();
        let want = partial_sum_potential(&q, f, 1.0).unwrap();
        assert!((j["value"].as_f64().unwrap() - want).abs() <= 1e-10 * want.abs(), "{}", f.name());
    }
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| kmweyl(args).status.code();
    assert_eq!(code(&["--help"]), Some(0));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["order", "--algebra", "a2m2"]), Some(2));
    assert_eq!(code(&["order", "--algebra", "b2m2", "--word", "1"]), Some(2));
    assert_eq!(code(&["order", "--algebra", "a2m2", "--word", "7"]), Some(2));
    assert_eq!(code(&["orbit", "--algebra", "a2m2", "--word", "0", "--seed", "1,0", "--range", "0:1"]), Some(2));
    assert_eq!(code(&["orbit", "--algebra", "a2m2", "--word", "0", "--seed", "0,0,0,0,1", "--range", "3:1"]), Some(2));
    assert_eq!(code(&["potential", "eval", "--form", "partial-3", "--q", "1,2,3,4,5,6,7"]), Some(2));
    assert_eq!(code(&["potential", "match", "--algebra", "a2m0", "--mode", "hyperbolic"]), Some(2));
    // q1 = q2 puts V12 on its pole
    assert_eq!(code(&["potential", "eval", "--form", "affine-closed", "--q", "0.3,0.3,0.1,0.2,0.9"]), Some(3));
    // b = q4 + q5 + q6 - q7 = 0
    assert_eq!(code(&["potential", "eval", "--form", "partial-1", "--q", "1,2,3,1,1,1,3"]), Some(3));
    let o = kmweyl_env(&["order", "--algebra", "a2m2", "--word", "1,2"], &[("KMWEYL_THREADS", "0")]);
    assert_eq!(o.status.code(), Some(2));
}

fn config_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn config_files() {
    let f = config_file("algebra = \"a2m2\"\nword = [1, 2]\n");
    let path = f.path().to_str().unwrap();
    assert_eq!(ok(&["order", "--config", path]), "3\n");
    // flags win over the file
    assert_eq!(ok(&["order", "--config", path, "--word", "0,1,2"]), "infinite\n");

    let bad = config_file("algebra = \"a2m2\"\nwindow = 8\n");
    let o = kmweyl(&["order", "--config", bad.path().to_str().unwrap(), "--word", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("window"));

    let o = kmweyl(&["order", "--config", "/nonexistent/kmweyl.toml"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn per_term_couplings_from_config() {
    let qs = "0.3,0.7,0.1,0.2,0.9";
    let base: Value = serde_json::from_str(&ok(&["potential", "eval", "--form", "affine-closed", "--q", qs])).unwrap();
    let f = config_file("[couplings]\nV13 = 3.0\n");
    let out = ok(&["potential", "eval", "--config", f.path().to_str().unwrap(), "--form", "affine-closed", "--q", qs]);
    let j: Value = serde_json::from_str(&out).unwrap();
    let v13 = |v: &Value| v["terms"][1]["value"].as_f64().unwrap();
    assert!((v13(&j) - 3.0 * v13(&base)).abs() <= 1e-10 * v13(&j));
    assert!((j["value"].as_f64().unwrap() - base["value"].as_f64().unwrap() - 2.0 * v13(&base)).abs() <= 1e-9);
}

#[test]
fn reruns_are_byte_identical() {
    let runs: [&[&str]; 4] = [
        &["potential", "match", "--algebra", "a2m2", "--mode", "hyperbolic", "--level", "4"],
        &["potential", "match", "--algebra", "a2m2", "--mode", "affine", "--output", "json"],
        &["recurrence", "--algebra", "a3m2", "--word", "-2,0,2,-1,1,3"],
        &["angles", "--algebra", "a3m2", "--output", "json"],
    ];
    for args in runs {
        let a = kmweyl_env(args, &[("KMWEYL_THREADS", "1")]);
        let b = kmweyl_env(args, &[("KMWEYL_THREADS", "4")]);
        let c = kmweyl(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stdout, c.stdout, "{args:?}");
    }
}

#[test]
fn diagram_json_layout() {
    let out = ok(&["diagram", "--algebra", "a2m2"]);
    let j: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(j["labels"], serde_json::json!([-2, -1, 0, 1, 2]));
    assert_eq!(j["edges"], serde_json::json!([[-2, -1], [-1, 0], [0, 1], [1, 2], [0, 2]]));
    assert!(out.trim_start().starts_with("{\n  \"n\": 2,\n  \"m\": 2,"));
}
