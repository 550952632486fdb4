//! End-to-end checks of the `pf` binary: exit codes, formats, determinism,
//! and the witness JSON round-trip.

use std::process::{Command, Output};

use pfaffian_cli::format::{parse_graph, witness_from_json};
use pfaffian_core::characterize::verify_witness;
use pfaffian_core::fixtures::{builtin, FixtureName};

fn pf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_k33_is_non_pfaffian_exit_1() {
    let out = pf(&["check", "builtin:k33"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.starts_with("non-Pfaffian"));
    // The negative certificate: an intractable set within the default bound.
    assert!(text.lines().any(|l| l.starts_with("intractable:")));
    // A tight bound suppresses the certificate without changing the answer.
    let out = pf(&["check", "builtin:k33", "--subset-bound", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("raise --subset-bound"));
}

#[test]
fn check_c4_file_is_pfaffian_exit_0() {
    let dir = std::env::temp_dir().join("pf-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c4.graph");
    std::fs::write(&path, "v 0\nv 1\nv 2\nv 3\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n").unwrap();
    let out = pf(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("Pfaffian"));
    // The reported orientation must validate when passed back in.
    let orient_path = dir.join("c4.orient");
    let orientation_lines: String =
        text.lines().skip(1).map(|l| format!("{l}\n")).collect();
    std::fs::write(&orient_path, orientation_lines).unwrap();
    let out2 = pf(&["check", path.to_str().unwrap(), "--orientation", orient_path.to_str().unwrap()]);
    assert_eq!(out2.status.code(), Some(0));
}

#[test]
fn signs_gamma1_sec6_shows_one_minus() {
    let out = pf(&["signs", "builtin:gamma1_sec6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let minus_rows: Vec<&str> = text.lines().filter(|l| l.trim_end().ends_with('-')).collect();
    assert_eq!(minus_rows.len(), 1);
    // The negative factor is the one using all six chord edges.
    assert!(minus_rows[0].contains("(f,l)"));
    assert_eq!(text.lines().count(), 10);
}

#[test]
fn matchings_counts() {
    let out = pf(&["matchings", "builtin:k33"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 6);
    let out = pf(&["matchings", "builtin:gamma2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 10);
}

#[test]
fn nearbip_gamma2_prints_certificate() {
    let out = pf(&["nearbip", "builtin:gamma2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let certs = v.as_array().unwrap();
    assert_eq!(certs.len(), 1);
    assert_eq!(certs[0]["e1"], serde_json::json!([4, 5]));
    assert_eq!(certs[0]["e2"], serde_json::json!([8, 9]));
    // K3,3 is bipartite: no certificates, exit 1.
    let out = pf(&["nearbip", "builtin:k33"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn witness_json_roundtrip() {
    for name in ["gamma1", "gamma2"] {
        let out = pf(&["witness", &format!("builtin:{name}")]);
        assert_eq!(out.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
        let fx = builtin(FixtureName::parse(name).unwrap());
        let w = witness_from_json(&fx.graph, &v).unwrap();
        verify_witness(&fx.graph, &w).unwrap();
        assert_eq!(v["target"], serde_json::json!(name));
    }
}

#[test]
fn witness_absent_is_exit_1() {
    let dir = std::env::temp_dir().join("pf-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c6.graph");
    std::fs::write(&path, "e 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 0\n").unwrap();
    let out = pf(&["witness", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reduce_triangle_expansion() {
    // K3,3 with one vertex expanded into a triangle reduces back in one step.
    let dir = std::env::temp_dir().join("pf-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("expanded.graph");
    std::fs::write(
        &path,
        "e 10 11\ne 11 12\ne 12 10\ne 10 1\ne 11 3\ne 12 5\n\
         e 2 1\ne 2 3\ne 2 5\ne 4 1\ne 4 3\ne 4 5\n",
    )
    .unwrap();
    let out = pf(&["reduce", path.to_str().unwrap(), "--target", "k33"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("contract"));
    let out = pf(&["reduce", "builtin:gamma1", "--target", "k33"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn subdivide_output_reparses() {
    let out = pf(&["subdivide", "builtin:k33", "--edge", "0,1", "--length", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed = parse_graph(&stdout(&out)).unwrap();
    assert_eq!(parsed.graph.vertex_count(), 8);
    assert_eq!(parsed.graph.edge_count(), 11);
    assert_eq!(parsed.labels[&0], "a");
}

#[test]
fn usage_errors_are_exit_2() {
    assert_eq!(pf(&["check", "builtin:nonesuch"]).status.code(), Some(2));
    assert_eq!(pf(&["check", "/no/such/file.graph"]).status.code(), Some(2));
    assert_eq!(pf(&["frobnicate", "builtin:k33"]).status.code(), Some(2));
    assert_eq!(pf(&["signs"]).status.code(), Some(2));
    // Malformed file: the message carries the line number.
    let dir = std::env::temp_dir().join("pf-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.graph");
    std::fs::write(&path, "v 0\nz oops\n").unwrap();
    let out = pf(&["matchings", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn vertex_cap_is_configurable() {
    let dir = std::env::temp_dir().join("pf-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c18.graph");
    let lines: String = (0..18).map(|i| format!("e {} {}\n", i, (i + 1) % 18)).collect();
    std::fs::write(&path, lines).unwrap();
    // Refused at the default cap, decided once the cap is raised.
    let out = pf(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let out = pf(&["check", path.to_str().unwrap(), "--max-vertices", "18"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_paper_passes_and_is_deterministic_across_jobs() {
    let a = pf(&["verify-paper"]);
    assert_eq!(a.status.code(), Some(0));
    let b = pf(&["verify-paper", "--jobs", "4"]);
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).lines().all(|l| l.starts_with("ok") || l.contains("checks passed")));
}

#[test]
fn json_outputs_have_sorted_keys_and_are_stable() {
    let a = pf(&["witness", "builtin:gamma2"]);
    let b = pf(&["witness", "builtin:gamma2", "--jobs", "3"]);
    assert_eq!(stdout(&a), stdout(&b));
    let text = stdout(&a);
    // Top-level keys appear in sorted order.
    let keys = ["\"J\"", "\"chains\"", "\"complement_factor\"", "\"steps\"", "\"target\""];
    let mut last = 0;
    for k in keys {
        let pos = text.find(k).unwrap();
        assert!(pos >= last, "key {k} out of order");
        last = pos;
    }
}
