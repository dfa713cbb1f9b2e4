use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tangentlab"))
        .args(args)
        .env_remove("TANGENTLAB_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn checks(report: &Value) -> &Vec<Value> {
    report["checks"].as_array().expect("checks")
}

fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

#[test]
fn demo_bg_check_all_reports_pc_size() {
    let o = run(&["demo", "bg", "--check-all"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PC(F): 2 objects, 4 morphisms\n"));
    let o = run(&["demo", "bg", "--check-all", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["artifact"]["pc"]["objects"], 2);
    assert_eq!(v["artifact"]["pc"]["morphisms"], 4);
    assert!(checks(&v["report"]).iter().all(|c| c["status"] != "fail"));
}

#[test]
fn every_demo_passes() {
    for d in ["bg", "bg-swap", "product", "zariski"] {
        let o = run(&["demo", d, "--check-all"]);
        assert_eq!(code(&o), 0, "{d}: {}", stdout(&o));
    }
}

#[test]
fn broken_category_exits_one_with_witness() {
    let o = run(&["check-category", path(&fixture("broken.json")), "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    let fails: Vec<&Value> = checks(&v).iter().filter(|c| c["status"] == "fail").collect();
    assert!(!fails.is_empty());
    for f in fails {
        assert_eq!(f["anchor"], "category.associativity");
        assert!(f["witness"]["triple"].is_array());
        assert_ne!(f["witness"]["left"], f["witness"]["right"]);
    }
}

#[test]
fn malformed_json_exits_two() {
    let o = run(&["check-category", path(&fixture("malformed.json"))]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
    let o = run(&["check-category", path(&fixture("missing.json"))]);
    assert_eq!(code(&o), 2);
}

#[test]
fn ill_typed_tangent_exits_two() {
    let o = run(&["check-tangent", path(&fixture("tangent_arrow_ill_typed.json"))]);
    assert_eq!(code(&o), 2);
    let o = run(&["check-tangent", path(&fixture("tangent_arrow.json"))]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn iterated_differential_syntax_is_rejected() {
    let o = run(&["zariski", "tangent", path(&fixture("bad_poly.json"))]);
    assert_eq!(code(&o), 2);
}

#[test]
fn exhausted_budget_exits_three() {
    let cyclic = fixture("cyclic.json");
    let o = run(&["--budget", "5", "zariski", "tangent", path(&cyclic)]);
    assert_eq!(code(&o), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_tangentlab"))
        .args(["zariski", "tangent", path(&cyclic)])
        .env("TANGENTLAB_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    let o = run(&["zariski", "tangent", path(&cyclic)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn zariski_lemmas_on_point_line_and_parameter() {
    let o = run(&[
        "zariski",
        "lemmas",
        "--A",
        path(&fixture("q_t.json")),
        "--B",
        path(&fixture("q_x.json")),
        "--C",
        path(&fixture("q.json")),
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    for lemma in ["bundle", "zero", "addition", "lift", "flip"] {
        let anchor = format!("zariski.lemma.{lemma}");
        let c = checks(&v).iter().find(|c| c["anchor"] == anchor.as_str()).expect("lemma entry");
        assert_eq!(c["status"], "pass");
    }
}

#[test]
fn zariski_lemmas_with_explicit_legs() {
    let o = run(&[
        "zariski",
        "lemmas",
        "--A",
        path(&fixture("q_x.json")),
        "--B",
        path(&fixture("q_xy.json")),
        "--C",
        path(&fixture("q_t.json")),
        "--leg-a",
        path(&fixture("t_to_x2.json")),
        "--leg-b",
        path(&fixture("t_to_xy.json")),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn zariski_pseudonaturality_along_polynomial_chain() {
    let o = run(&[
        "zariski",
        "pseudonat",
        "--C",
        path(&fixture("q.json")),
        "--B",
        path(&fixture("q_u.json")),
        "--A",
        path(&fixture("q_uv.json")),
        "--D",
        path(&fixture("r_over_q.json")),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn zariski_tangent_with_samples() {
    let o = run(&[
        "zariski",
        "tangent",
        path(&fixture("q_x.json")),
        "--samples",
        path(&fixture("zariski_samples.json")),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn finite_samples_restrict_and_are_validated() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(&good, r#"{"objects": ["0"], "morphisms": ["u"]}"#).unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"objects": ["7"]}"#).unwrap();
    let arrow = fixture("arrow.json");
    let o = run(&["check-category", path(&arrow), "--samples", path(&good)]);
    assert_eq!(code(&o), 0);
    let o = run(&["check-category", path(&arrow), "--samples", path(&bad)]);
    assert_eq!(code(&o), 2);
}

#[test]
fn build_pc_over_a_point_is_the_fibre() {
    let pf = fixture("arrow_over_point.json");
    let o = run(&["build-pc", path(&pf), "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let cat = &v["artifact"]["category"];
    assert_eq!(cat["objects"].as_array().unwrap().len(), 2);
    assert_eq!(cat["morphisms"].as_array().unwrap().len(), 3);
    let o = run(&["build-pc", path(&pf), "--object", path(&fixture("cone_0.json"))]);
    assert_eq!(code(&o), 0);
    let o = run(&["build-pc", path(&pf), "--object", path(&fixture("cone_bad.json"))]);
    assert_eq!(code(&o), 2);
}

#[test]
fn written_demo_documents_reload() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = run(&["demo", "bg-swap", "--check-all", "--write", path(d)]);
    assert_eq!(code(&o), 0);
    for (cmd, file) in [
        ("check-pseudofunctor", "pseudofunctor.json"),
        ("check-indexing", "indexing.json"),
        ("pc-tangent", "indexing.json"),
        ("check-tangent", "pc-tangent.json"),
        ("check-category", "pc.json"),
    ] {
        let target = d.join(file);
        if file == "pc.json" {
            let v: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
            std::fs::write(&target, v["category"].to_string()).unwrap();
        }
        let o = run(&[cmd, path(&target)]);
        assert_eq!(code(&o), 0, "{cmd} {file}: {}", stdout(&o));
    }
    let o = run(&["build-pc", path(&d.join("pseudofunctor.json"))]);
    assert!(stdout(&o).starts_with("PC(F): 2 objects, 4 morphisms\n"));
    let o = run(&["demo", "zariski", "--write", path(d)]);
    assert_eq!(code(&o), 0);
    let o = run(&["zariski", "tangent", path(&d.join("q_x_mod_x3.json"))]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["demo", "product", "--write", path(dir.path())]);
    assert_eq!(code(&o), 0);
    let ix = dir.path().join("indexing.json");
    let runs: Vec<Vec<u8>> = (0..2).map(|_| run(&["pc-tangent", path(&ix), "--format", "json"]).stdout).collect();
    assert_eq!(runs[0], runs[1]);
    let runs: Vec<Vec<u8>> = (0..2).map(|_| run(&["demo", "zariski", "--check-all", "--format", "json"]).stdout).collect();
    assert_eq!(runs[0], runs[1]);
}
