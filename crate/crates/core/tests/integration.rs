//! End-to-end checks through the command-line binary and the public API.

mod common;

use std::path::PathBuf;
use std::process::{Command, Output};

use zdb_srg::catalog;
use zdb_srg::graphs::{is_isomorphic, parse_graph, srg_parameters, Budget, IsoOutcome};

fn zdbsrg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zdbsrg"))
        .args(args)
        .env("ZDBSRG_WORKERS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("zdbsrg-it-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn analyze_cube() {
    let o = zdbsrg(&["analyze", "--fn", "catalog:14"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("Δ_F = 2") && s.contains("ZDB(2)") && s.contains("algebraic degree: 2"), "{s}");
}

#[test]
fn predict_json() {
    let o = zdbsrg(&["--out", "json", "pds", "predict", "--p", "2", "--t", "1", "--n", "8"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["params"]["v"], 256);
    assert_eq!(v["params"]["k"], 85);
    assert_eq!(v["params"]["lambda"], 24);
    assert_eq!(v["params"]["mu"], 30);
    assert_eq!(v["latin"][0]["epsilon"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(zdbsrg(&["pds", "verify", "--fn", "catalog:3", "--params", "256,85,24,31"]).status.code(), Some(1));
    assert_eq!(zdbsrg(&["pds", "verify", "--fn", "catalog:3", "--params", "256,85,24,30"]).status.code(), Some(0));
    assert_eq!(zdbsrg(&["pds", "verify", "--bogus"]).status.code(), Some(2));
    assert_eq!(zdbsrg(&["analyze", "--fn", "catalog:99"]).status.code(), Some(2));
    assert_eq!(zdbsrg(&["field"]).status.code(), Some(2));
}

#[test]
fn report_written_next_to_input() {
    let dir = scratch("report");
    let path = dir.join("square.fn");
    std::fs::write(&path, "p=3\nn=3\nmodulus=1,2,0,1\nterm 2 1\n").unwrap();
    let o = zdbsrg(&["--out", "json", "zdb-check", "--fn", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report = std::fs::read_to_string(dir.join("square.fn.report.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v, serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap());

    let o = zdbsrg(&["zdb-check", "--fn", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(dir.join("square.fn.report.txt").exists());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn srg_build_then_verify() {
    let dir = scratch("srg");
    let graph = dir.join("cube.graph");
    let o = zdbsrg(&["srg", "build", "--fn", "catalog:14", "--graph-out", graph.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&graph).unwrap();
    assert!(text.starts_with("v=256\n"));
    let g = parse_graph(&text).unwrap();
    assert_eq!(srg_parameters(&g).map(|p| (p.v, p.k, p.lambda, p.mu)), Some((256, 85, 24, 30)));
    assert_eq!(g.adj(), common::catalog_graph(14).adj());

    let o = zdbsrg(&["srg", "verify", "--graph", graph.to_str().unwrap(), "--params", "256,85,24,30"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = zdbsrg(&["srg", "verify", "--graph", graph.to_str().unwrap(), "--params", "256,85,20,30"]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn iso_cli_pair() {
    let o = zdbsrg(&["--out", "json", "iso", "--a", "catalog:2", "--b", "catalog:6"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.to_string().contains("Isomorphic"), "{v}");
}

#[test]
fn ccc_and_field_text() {
    let o = zdbsrg(&["field", "--preset", "f256_paper"]);
    assert!(stdout(&o).contains("modulus=1,0,1,1,1,0,0,0,1"), "{}", stdout(&o));
    let o = zdbsrg(&["ccc", "--fn", "catalog:14"]);
    assert!(stdout(&o).contains("[1, 3^85, 0^170]"), "{}", stdout(&o));
}

#[test]
fn catalog_degrees() {
    let f = catalog::field();
    let degrees: Vec<u32> = catalog::load_catalog(&f).unwrap().iter().map(|(_, p)| p.algebraic_degree()).collect();
    // x^57 is the lone non-quadratic entry
    assert_eq!(degrees.iter().filter(|&&d| d == 2).count(), 17);
    assert_eq!(degrees[16], 4);
}

#[test]
fn api_isomorphism_across_merged_entries() {
    let (a, b) = (common::catalog_graph(13), common::catalog_graph(17));
    match is_isomorphic(&a, &b, Budget::seconds(60.0)).unwrap() {
        IsoOutcome::Isomorphic(map) => assert!(a.maps_onto(&b, &map)),
        other => panic!("{other:?}"),
    }
    let c = common::catalog_graph(1);
    assert!(matches!(is_isomorphic(&a, &c, Budget::seconds(60.0)).unwrap(), IsoOutcome::NonIsomorphic));
}
