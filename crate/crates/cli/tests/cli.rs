use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name).display().to_string()
}

fn pctf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pctf")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

fn scratch(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("pctf-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn hh_on_the_free_monoid() {
    let out = pctf(&["hh", &corpus("n.json"), "--field", "fp:2", "--weight", "2", "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["dims"], serde_json::json!([1, 1, 0]));
    assert_eq!(r["valid"]["valid_through"], 2);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["verb"], "hh");
}

#[test]
fn hh_over_the_integers_lists_invariant_factors() {
    let out = pctf(&["hh", &corpus("n2.json"), "--field", "z", "--element", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["dims"], serde_json::json!([1, 2, 1, 0]));
    assert!(r["results"]["invariant_factors"].as_array().unwrap().iter().all(|d| d.as_array().unwrap().is_empty()));
}

#[test]
fn dilate_on_the_cusp_converges() {
    let out = pctf(&["dilate", &corpus("cusp.json"), "--seq", "2,2,2", "--weight", "6", "--qmax", "2", "--field", "fp:2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["status"], "CONVERGED");
    assert_eq!(r["results"]["stable_value"], serde_json::json!([1, 1, 0]));
}

#[test]
fn a_single_dilation_step_is_inconclusive() {
    let out = pctf(&["dilate", &corpus("cusp.json"), "--seq", "2", "--weight", "2", "--kmax", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(report(&out)["verdict"], "inconclusive");
}

#[test]
fn l312_on_the_blown_up_plane() {
    let out = pctf(&["verify-l312", &corpus("fan_a2.json"), &corpus("fan_a2_blowup.json"), "--m", "1,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["results"]["agree"], true);
}

#[test]
fn squares_of_every_kind() {
    let runs: [&[&str]; 5] = [
        &["--kind", "sn", &corpus("cusp.json")],
        &["--kind", "conductor", &corpus("nonseminormal2.json"), "--window", "6"],
        &["--kind", "closed-cover", &corpus("axes.json"), "--i", "1,0", "--j", "0,1"],
        &["--kind", "zariski", &corpus("fan_p1.json"), "--u", "0", "--v", "1"],
        &["--kind", "blowup", &corpus("fan_a2.json"), "--ray", "1,1", "--box", "2"],
    ];
    for args in runs {
        let mut all = vec!["verify-square"];
        all.extend_from_slice(args);
        let out = pctf(&all);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(report(&out)["results"]["acyclic"], true, "{args:?}");
    }
}

#[test]
fn closed_cover_that_does_not_cover_is_rejected() {
    let out = pctf(&["verify-square", "--kind", "closed-cover", &corpus("n2.json"), "--i", "1,0", "--j", "0,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn reports_are_byte_identical() {
    let args = ["saturate", &corpus("nonseminormal2.json")];
    let a = pctf(&args);
    let b = pctf(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let args = ["verify-square", "--kind", "blowup", &corpus("fan_a2.json"), "--ray", "1,1"];
    assert_eq!(pctf(&args).stdout, pctf(&args).stdout);
}

#[test]
fn input_hash_ignores_names_and_order() {
    let a = scratch("a.json", r#"{"name":"one","rank":2,"generators":[[1,0],[0,1]]}"#);
    let b = scratch("b.json", r#"{"rank":2,"generators":[[0,1],[1,0],[1,1]]}"#);
    let ha = report(&pctf(&["analyze", &a]))["input_hash"].clone();
    let hb = report(&pctf(&["analyze", &b]))["input_hash"].clone();
    assert_eq!(ha, hb);
    let hc = report(&pctf(&["analyze", &corpus("cusp.json")]))["input_hash"].clone();
    assert_ne!(ha, hc);
}

#[test]
fn zero_vector_in_the_ideal_is_a_semantic_error() {
    let p = scratch("zero.json", r#"{"rank":1,"generators":[[1]],"ideal":[[0]]}"#);
    let out = pctf(&["analyze", &p]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("ideal[0]"), "{err}");
}

#[test]
fn truncated_file_is_a_parse_error() {
    let p = scratch("cut.json", "{\"rank\":1,\n\"generators\":[[1]");
    let out = pctf(&["analyze", &p]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("cut.json:2:"), "{err}");
}

#[test]
fn unknown_fields_and_wrong_lengths_are_rejected() {
    let p = scratch("extra.json", r#"{"rank":1,"generators":[[1]],"grading":[1]}"#);
    assert_eq!(pctf(&["analyze", &p]).status.code(), Some(2));
    let p = scratch("short.json", r#"{"rank":2,"generators":[[1,0],[1]]}"#);
    let out = pctf(&["analyze", &p]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("generators[1]"));
}

#[test]
fn bad_options_exit_with_two() {
    assert_eq!(pctf(&["hh", &corpus("n.json"), "--field", "fp:9", "--weight", "1"]).status.code(), Some(2));
    assert_eq!(pctf(&["hh", &corpus("n.json")]).status.code(), Some(2));
    assert_eq!(pctf(&["cech", &corpus("fan_a2.json"), "--m", "1"]).status.code(), Some(2));
    assert_eq!(pctf(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(pctf(&["analyze", &corpus("missing.json")]).status.code(), Some(2));
}

#[test]
fn analyze_reports_primes_and_normality() {
    let r = report(&pctf(&["analyze", &corpus("axes.json")]));
    assert_eq!(r["results"]["primes"].as_array().unwrap().len(), 3);
    assert_eq!(r["results"]["reduced"], true);
    let r = report(&pctf(&["analyze", &corpus("cusp.json")]));
    assert_eq!(r["results"]["normal"], false);
    assert_eq!(r["results"]["seminormal"], false);
}

#[test]
fn subdivide_monoid_and_fan() {
    let r = report(&pctf(&["subdivide", &corpus("n.json"), "--element", "1", "--r", "3"]));
    assert_eq!(r["results"]["delta"]["isomorphism"], true);
    let r = report(&pctf(&["subdivide", &corpus("fan_a2.json"), "--ray", "1,1"]));
    assert_eq!(r["results"]["fan"]["cones"].as_array().unwrap().len(), 2);
    assert_eq!(r["results"]["smooth_after"], true);
}

#[test]
fn cech_on_the_projective_line() {
    // G_m at m = 0 on ℙ¹: the constants, nothing in degree one
    let r = report(&pctf(&["cech", &corpus("fan_p1.json"), "--m", "0", "--presheaf", "omega", "--q", "0"]));
    assert_eq!(r["results"]["cohomology"], serde_json::json!([1, 0]));
}
