//! End-to-end tests of the binary: exit-code discipline and output
//! determinism.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polydefect"))
}

fn fixtures() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn info_reports_invariants() {
    let out = run(&[
        "info",
        fixtures().join("triangle0.json").to_str().unwrap(),
        "--json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["format"], 1);
    assert_eq!(report["invariants"]["dim"], 2);
    assert_eq!(report["invariants"]["ambient_dim"], 4);
    // Unimodular with respect to the saturated lattice of its plane.
    assert_eq!(report["invariants"]["normalized_volume"], 1);
    assert_eq!(report["invariants"]["lattice_point_count"], 3);
}

#[test]
fn info_is_deterministic() {
    let path = fixtures().join("triangle1.json");
    let a = run(&["info", path.to_str().unwrap(), "--json"]);
    let b = run(&["info", path.to_str().unwrap(), "--json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "same input must give identical bytes");
}

#[test]
fn info_rejects_bad_input() {
    let out = run(&["info", "/nonexistent/polytope.json"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "{{\"ambient_dim\": 2, \"vertices\": [[0, \"x\"]]}}").unwrap();
    let out = run(&["info", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_chain_round_trips_through_info() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let out = run(&[
        "construct",
        "product(pyramid(pyramid(pyramid(dilate(2,simplex(2))))),cube(1,2))",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["info", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["invariants"]["dim"], 6);
    assert_eq!(report["invariants"]["degree"], 2);
    assert_eq!(report["invariants"]["codegree"], 5);
    assert_eq!(report["invariants"]["simple"], true);
    assert_eq!(report["invariants"]["c"], 0);
}

#[test]
fn construct_cayley_from_fixture_files() {
    let spec = format!(
        "cayley(file({0}/triangle0.json),file({0}/triangle1.json),file({0}/triangle2.json))",
        fixtures().display()
    );
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cayley.json");
    let out = run(&["construct", &spec, "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["info", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["invariants"]["dim"], 6);
    assert_eq!(report["invariants"]["lattice_point_count"], 9);
    assert_eq!(report["invariants"]["codegree"], 3);
    assert_eq!(report["verdict"]["criterion_met"], false);
}

#[test]
fn construct_rejects_grammar_errors() {
    for spec in ["simplex(2) trailing", "unknown(3)", "product(simplex(1))"] {
        let out = run(&["construct", spec]);
        assert_eq!(out.status.code(), Some(2), "spec {spec:?}");
    }
}

#[test]
fn identities_suites_pass() {
    let out = run(&["identities", "--suite", "alternating-sum", "--n-max", "8"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
}

#[test]
fn identities_probe_pole_is_not_a_failure() {
    let out = run(&["identities", "--probe", "2,2,2,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("OUT OF DOMAIN"));
}

#[test]
fn fuzz_is_seeded_and_deterministic() {
    let args = [
        "fuzz", "--kind", "simplex", "--dim", "2", "--bound", "3", "--count", "15",
        "--seed", "9", "--json",
    ];
    let a = run(&args);
    let b = bin()
        .args(args)
        .env("POLYDEFECT_THREADS", "3")
        .output()
        .unwrap();
    assert!(a.status.success());
    assert_eq!(
        a.stdout, b.stdout,
        "results must not depend on the worker count"
    );
}

#[test]
fn fuzz_zero_count_is_a_noop() {
    let out = run(&["fuzz", "--count", "0"]);
    assert!(out.status.success());
}

#[test]
fn fixture_triangles_share_a_normal_fan() {
    // All three Cayley factors are unimodular triangles; their
    // full-dimensional models have pairwise equal normal fans.
    let triangles: Vec<_> = (0..3)
        .map(|i| {
            polydefect::format::load_polytope(&fixtures().join(format!("triangle{i}.json")))
                .unwrap()
        })
        .collect();
    for i in 0..3 {
        for j in i + 1..3 {
            let (a, _) = triangles[i].full_dimensional_model();
            let (b, _) = triangles[j].full_dimensional_model();
            assert!(a.is_strictly_isomorphic(&b).unwrap());
        }
    }
}

#[test]
fn width_search_handles_lower_dimensional_input() {
    // A Cayley polytope of two segments lives in a hyperplane; the width
    // search must fall back to its affine-hull chart and still find a
    // width-one direction (the Cayley coordinate forces width one).
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cayley.json");
    let out = run(&[
        "construct",
        "cayley(simplex(1),simplex(1))",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["info", path.to_str().unwrap(), "--radius", "1", "--json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["width_one_coordinates"], "affine-chart");
    assert!(!report["width_one_directions"].as_array().unwrap().is_empty());
}

#[test]
fn survey_segre_flags_off_diagonal() {
    let out = run(&["survey", "segre", "--k1-max", "2", "--k2-max", "2", "--json"]);
    assert!(out.status.success());
    let table: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for row in table["rows"].as_array().unwrap() {
        let diagonal = row["k1"] == row["k2"];
        assert_eq!(row["defective"], !diagonal);
        assert_eq!(row["agree"], true);
    }
}
