use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn gemtorus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gemtorus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn emit(dir: &TempDir, name: &str, args: &[&str]) -> String {
    let file = path(dir, name);
    let mut full = vec!["catalog", "emit"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &file]);
    let out = gemtorus(&full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    file
}

#[test]
fn catalog_list_names_every_family() {
    let out = gemtorus(&["catalog", "list"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for name in ["sphere", "sphere-bundle", "lens", "projective", "surface"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name} missing");
    }
}

#[test]
fn emitted_lens_analyzes_as_expected() {
    let dir = TempDir::new().unwrap();
    let file = emit(&dir, "lens.json", &["lens", "--q", "3"]);
    let out = gemtorus(&["analyze", &file, "--genus", "--h1", "0", "1", "--orientable", "--json"]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["vertices"], 12);
    assert_eq!(report["colors"], 4);
    assert_eq!(report["contracted"], true);
    assert_eq!(report["orientable"], true);
    assert_eq!(report["h1"], "Z/3");
    assert_eq!(report["min_rho"], "1");
}

#[test]
fn emitted_documents_survive_a_torus_round_trip() {
    let dir = TempDir::new().unwrap();
    let base = emit(&dir, "rp2.json", &["surface", "--kind", "rp2"]);
    let built = path(&dir, "built.json");
    let out = gemtorus(&["torus", "build", &base, "--intermediates", "-o", &built]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let log = String::from_utf8_lossy(&out.stderr);
    assert!(log.contains("16 vertices"), "{log}");
    assert_eq!(log.matches("2 boundary components, 2 isomorphic to the base").count(), 3, "{log}");

    let out = gemtorus(&["analyze", &built, "--h1", "0", "1", "--orientable"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("H1: Z + Z/2"), "{text}");
    assert!(text.contains("orientable: false"), "{text}");
}

#[test]
fn dot_export_of_the_torus() {
    let dir = TempDir::new().unwrap();
    let file = emit(&dir, "torus.json", &["surface", "--kind", "torus"]);
    let out = gemtorus(&["export", "dot", &file, "--eps", "0,1,2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("graph gem {"));
    let edges: Vec<&str> = text.lines().filter(|l| l.contains(" -- ")).collect();
    assert_eq!(edges.len(), 9);
    let nodes = text
        .lines()
        .filter(|l| !l.contains(" -- ") && l.trim_start().starts_with('"'))
        .count();
    assert_eq!(nodes, 6);
    for color in ["black", "red", "blue"] {
        assert_eq!(edges.iter().filter(|l| l.contains(&format!("color={color},"))).count(), 3);
    }
}

#[test]
fn reproduce_reports_passing_rows() {
    let out = gemtorus(&["reproduce", "--theorem", "1.2", "--q", "2", "--json"]);
    assert_eq!(code(&out), 0);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["pass"] == true));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&gemtorus(&["reproduce", "--theorem", "9.9"])), 2);
    assert_eq!(code(&gemtorus(&["reproduce", "--theorem", "1.2", "--d", "3"])), 2);
    assert_eq!(code(&gemtorus(&["catalog", "emit", "lens", "--q", "1"])), 2);

    let garbage = path(&dir, "garbage.json");
    fs::write(&garbage, "{\"colors\": 3, \"vertices\": [\"a\"]").unwrap();
    assert_eq!(code(&gemtorus(&["analyze", &garbage])), 2);

    let missing = dir.path().join("nope.json");
    assert!(!Path::new(&missing).exists());
    assert_eq!(code(&gemtorus(&["analyze", missing.to_str().unwrap()])), 2);
}

#[test]
fn validation_failures_exit_with_one() {
    let dir = TempDir::new().unwrap();
    // Regular and connected, but the {0,1}-residues split in two.
    let loose = path(&dir, "loose.json");
    fs::write(
        &loose,
        r#"{"colors":3,"vertices":["a","b","c","d"],"edges":[[0,1,0],[2,3,0],[0,1,1],[2,3,1],[0,2,2],[1,3,2]]}"#,
    )
    .unwrap();
    let out = gemtorus(&["analyze", &loose]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("contracted: false"));
    assert_eq!(code(&gemtorus(&["torus", "build", &loose])), 1);

    // A vertex map that is not a color-shifting isomorphism.
    let base = emit(&dir, "lens.json", &["lens", "--q", "2"]);
    let iso = path(&dir, "iso.json");
    fs::write(&iso, "[0,1,2,3,4,5,6,7]").unwrap();
    assert_eq!(code(&gemtorus(&["torus", "build", &base, "--iso", &iso])), 1);
}
