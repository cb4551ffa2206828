use std::process::{Command, Output};

use reduct_atlas::field::Space;
use reduct_atlas::geometry::agl_group;
use reduct_atlas::perm::{gl_group, io, Perm};
use serde_json::Value;

fn atlas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reduct-atlas")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_gens(dir: &tempfile::TempDir, name: &str, p: u32, n: u32, gens: &[Perm]) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, io::write(p, n, gens)).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn catalog_writes_file_and_generators() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cat.json");
    let gens = dir.path().join("gens");
    let status = atlas(&[
        "catalog",
        "--p",
        "3",
        "--n",
        "2",
        "--out",
        out.to_str().unwrap(),
        "--gens-dir",
        gens.to_str().unwrap(),
    ]);
    assert_eq!(status.status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let orders: Vec<&str> =
        report["entries"].as_array().unwrap().iter().map(|e| e["record"]["order"].as_str().unwrap()).collect();
    for o in ["48", "432", "40320", "362880"] {
        assert!(orders.contains(&o), "{orders:?}");
    }
    assert_eq!(report["seed"], 0);
    assert_eq!(std::fs::read_dir(&gens).unwrap().count(), orders.len());

    // each emitted generator file classifies back to its catalog record
    for e in report["entries"].as_array().unwrap() {
        let file = gens.join(format!("entry-{}.gens", e["id"]));
        let again = atlas(&["classify", file.to_str().unwrap()]);
        assert_eq!(again.status.code(), Some(0));
        assert_eq!(json(&again)["record"], e["record"]);
    }
}

#[test]
fn classify_cases_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let v = Space::new(3, 2).unwrap();
    let agl = write_gens(&dir, "agl.gens", 3, 2, agl_group(&v).gens());
    let out = atlas(&["classify", &agl]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["record"]["case"], "AGL");

    let gl = write_gens(&dir, "gl.gens", 3, 2, gl_group(&v).gens());
    assert_eq!(json(&atlas(&["classify", &gl]))["record"]["case"], "FIX0_AUT");

    let small = write_gens(&dir, "small.gens", 3, 2, &gl_group(&v).gens()[..1]);
    assert_eq!(atlas(&["classify", &small]).status.code(), Some(4));

    let broken = dir.path().join("broken.gens");
    std::fs::write(&broken, "3 2\n0 1 2\n").unwrap();
    assert_eq!(atlas(&["classify", broken.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(atlas(&["classify", "/nonexistent/file"]).status.code(), Some(2));
}

#[test]
fn usage_and_bounds_exit_two() {
    assert_eq!(atlas(&["catalog", "--p", "2", "--n", "2"]).status.code(), Some(2));
    assert_eq!(atlas(&["catalog", "--p", "3", "--n", "4"]).status.code(), Some(2));
    assert_eq!(atlas(&["enumerate", "--p", "3", "--n", "3"]).status.code(), Some(2));
    assert_eq!(atlas(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(atlas(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(atlas(&["akset", "--p", "3", "--n", "2", "--S", "0", "--k", "1"]).status.code(), Some(2));
}

#[test]
fn verify_suites_exit_zero() {
    let out = atlas(&["verify", "--suite", "sigma", "--p", "3", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["passed"], true);
    assert_eq!(report["suite"], "sigma-laws");
    for suite in ["geometry", "acl", "gnh-order", "interval"] {
        assert_eq!(atlas(&["verify", "--suite", suite, "--instances", "100"]).status.code(), Some(0), "{suite}");
    }
}

#[test]
fn acl_and_akset_examples() {
    let out = json(&atlas(&["acl", "--p", "3", "--n", "3", "--v", "1", "--w", "3"]));
    assert_eq!(out["size"], 3);
    assert_eq!(out["equals_affine_closure"], true);
    let out = json(&atlas(&["akset", "--p", "3", "--n", "3", "--S", "1,3,9", "--k", "2", "--group", "gl"]));
    assert_eq!(out["result"]["shape"], "EMPTY");
    let out = json(&atlas(&["akset", "--p", "3", "--n", "2", "--S", "1", "--k", "1", "--group", "catalog:0"]));
    assert_eq!(out["result"]["shape"], "SUBSPACE_IMAGE");
    assert_eq!(atlas(&["acl", "--p", "3", "--n", "2", "--v", "1", "--w", "3"]).status.code(), Some(4));
}

#[test]
fn reports_are_byte_identical_and_worker_independent() {
    let a = atlas(&["catalog", "--p", "3", "--n", "2", "--seed", "9"]);
    let b = Command::new(env!("CARGO_BIN_EXE_reduct-atlas"))
        .args(["catalog", "--p", "3", "--n", "2", "--seed", "9"])
        .env("REDUCT_ATLAS_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 9);
    let zero = Command::new(env!("CARGO_BIN_EXE_reduct-atlas"))
        .args(["catalog", "--p", "3", "--n", "2"])
        .env("REDUCT_ATLAS_WORKERS", "0")
        .output()
        .unwrap();
    assert_eq!(zero.status.code(), Some(2));
    let timed = json(&atlas(&["acl", "--p", "3", "--n", "3", "--v", "1", "--w", "3", "--timing"]));
    assert!(timed["wall_time_ms"].is_u64());
}

#[test]
fn enumerate_reports_unmatched_groups() {
    let out = json(&atlas(&["enumerate", "--p", "3", "--n", "2"]));
    let groups = out["groups"].as_array().unwrap();
    assert_eq!(groups.len(), 6);
    assert_eq!(out["missing_from_enumeration"].as_array().unwrap().len(), 0);
    for id in out["unmatched"].as_array().unwrap() {
        let g = &groups[id.as_u64().unwrap() as usize];
        assert!(g["catalog_id"].is_null() || g["record"]["case"] == "UNCLASSIFIED");
    }
}
