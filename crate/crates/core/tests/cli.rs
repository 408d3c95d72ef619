use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use polyauto::catalog;
use polyauto::io::{emit_map, parse_map_file, Format, MapDocument};
use polyauto::PolyMap;
use tempfile::TempDir;

fn polyauto(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyauto"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_map(dir: &TempDir, name: &str, map: PolyMap) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, emit_map(&MapDocument::with_default_names(map), Format::Text)).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_invertible() {
    let dir = TempDir::new().unwrap();
    let f = write_map(&dir, "shear.map", catalog::shear());
    let out = polyauto(&["check", s(&f)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "invertible");

    let out = polyauto(&["check", "--criterion", "all", s(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for name in ["taylor:", "essen:", "series:"] {
        assert!(text.contains(name), "{text}");
    }
}

#[test]
fn check_reports_bound_witness_as_json() {
    let dir = TempDir::new().unwrap();
    let f = write_map(&dir, "shear.map", catalog::shear());
    let out = polyauto(&["check", "--bound", "1", "--format", "json", s(&f)]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "not-within-bound", "{v}");
    assert_eq!(v["runs"][0]["witness"]["level"], 2, "{v}");
    assert_eq!(v["runs"][0]["witness"]["multi_index"], serde_json::json!([0, 2]), "{v}");
}

#[test]
fn check_keller_violation() {
    let dir = TempDir::new().unwrap();
    let f = write_map(&dir, "sq.map", catalog::square_x());
    let out = polyauto(&["check", s(&f)]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stdout(&out).trim(), "keller-violation: det = 2*x");
}

#[test]
fn invert_writes_a_verifiable_inverse() {
    let dir = TempDir::new().unwrap();
    let f = write_map(&dir, "nagata.map", catalog::nagata());
    let g = dir.path().join("g.json");
    let out = polyauto(&["invert", s(&f), "-o", s(&g), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(parse_map_file(&g).unwrap().map, catalog::nagata_inverse());

    let out = polyauto(&["verify", s(&f), s(&g)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "inverse pair");

    let other = write_map(&dir, "identity3.map", PolyMap::identity(3));
    let out = polyauto(&["verify", s(&f), s(&other)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout(&out).trim(), "not an inverse pair");
}

#[test]
fn invert_to_stdout() {
    let dir = TempDir::new().unwrap();
    let f = write_map(&dir, "shear.map", catalog::shear());
    let out = polyauto(&["invert", s(&f)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("G1 = y1 - y2^2"), "{}", stdout(&out));
}

#[test]
fn nambu_prints_frame() {
    let dir = TempDir::new().unwrap();
    let f = write_map(&dir, "shear.map", catalog::shear());
    let out = polyauto(&["nambu", s(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("det_constant = 1"), "{text}");
    assert!(text.contains("delta1"), "{text}");
}

#[test]
fn gen_and_bench_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let run_gen = |sub: &str| {
        let target = dir.path().join(sub);
        let out = polyauto(&["gen", "--seed", "4", "--n", "2", "--count", "3", "-o", s(&target)]);
        assert_eq!(out.status.code(), Some(0));
        let mut files: Vec<_> = std::fs::read_dir(&target).unwrap().map(|e| e.unwrap().path()).collect();
        files.sort();
        files.iter().map(|p| std::fs::read(p).unwrap()).collect::<Vec<_>>()
    };
    let a = run_gen("a");
    assert_eq!(a.len(), 3);
    assert_eq!(a, run_gen("b"));

    let csv = dir.path().join("bench.csv");
    let out = polyauto(&[
        "bench",
        "--seed",
        "4",
        "--n",
        "2",
        "--count",
        "3",
        "--reps",
        "1",
        "--csv",
        s(&csv),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.contains("map_id,n,deg,criterion,verdict,ms,iters,peak_terms"));
    assert_eq!(text.lines().filter(|l| l.contains(",invertible,")).count(), 9);
    assert!(text.contains("# ratio taylor/essen="));
}

#[test]
fn bad_input_is_an_error() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.map");
    std::fs::write(&path, "vars x y\nF1 = x +* y\nF2 = y\n").unwrap();
    let out = polyauto(&["check", s(&path)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    let out = polyauto(&["check", s(&dir.path().join("missing.map"))]);
    assert_eq!(out.status.code(), Some(1));
    let out = polyauto(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}
