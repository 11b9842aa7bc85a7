//! End-to-end tests against the built binary: exit codes, JSON output
//! shapes, and render round-trips.

use std::process::{Command, Output};

fn tl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn dims_matches_catalan() {
    let v = stdout_json(&tl(&["dims", "--m", "4", "--n", "4"]));
    assert_eq!(v["dim"], 14);
    let v = stdout_json(&tl(&["dims", "--m", "1", "--n", "2"]));
    assert_eq!(v["dim"], 0);
}

#[test]
fn enumerate_counts() {
    let v = stdout_json(&tl(&["enumerate", "--mode", "hom", "--m", "2", "--n", "2"]));
    assert_eq!(v["count"], 2);
    let v = stdout_json(&tl(&["enumerate", "--mode", "caps", "--n", "4"]));
    assert_eq!(v["count"], 6);
}

#[test]
fn jw_ascii_lists_five_terms() {
    let out = tl(&["jw", "--n", "4", "--render", "ascii"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("5 term(s)"), "{text}");
    assert_eq!(text.matches("(+1) *").count(), 2);
    assert_eq!(text.matches("(-1) *").count(), 3);
}

#[test]
fn compose_generic_circle() {
    let cap = r#"{"domain":2,"codomain":0,"pairs":[["s1","s2"]]}"#;
    let cup = r#"{"domain":0,"codomain":2,"pairs":[["t1","t2"]]}"#;
    let v = stdout_json(&tl(&["compose", "--g", cap, "--f", cup, "--param", "generic"]));
    assert_eq!(v["terms"][0]["coeff"], "1 + q^2");
    // at q = 0 the coefficient collapses to 1
    let v = stdout_json(&tl(&["compose", "--g", cap, "--f", cup]));
    assert_eq!(v["terms"][0]["coeff"], "1");
}

#[test]
fn render_json_round_trips() {
    // parse(render(x, json)) = x across a sample of shapes
    for (m, n) in [(0usize, 0usize), (2, 2), (3, 3), (1, 3), (5, 5), (4, 6)] {
        let v = stdout_json(&tl(&[
            "enumerate",
            "--mode",
            "hom",
            "--m",
            &m.to_string(),
            "--n",
            &n.to_string(),
        ]));
        for d in v["diagrams"].as_array().unwrap() {
            let rendered = stdout_json(&tl(&["render", "--input", &d.to_string()]));
            assert_eq!(rendered, *d);
        }
    }
}

#[test]
fn render_tikz_scopes() {
    let out = tl(&["jw", "--n", "2", "--format", "tikz"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.matches("\\begin{scope}").count(), 2);
    assert!(text.contains("\n-\n"), "{text}");
}

#[test]
fn sigma_emits_permutation() {
    let v = stdout_json(&tl(&["sigma", "--m", "1", "--n", "2"]));
    assert_eq!(v["permutation"], serde_json::json!([3, 1, 2]));
    let v = stdout_json(&tl(&["interval-reversal", "--p", "1", "--q", "3", "--n", "4"]));
    assert_eq!(v["permutation"], serde_json::json!([3, 2, 1, 4]));
}

#[test]
fn cactus_word_and_relations() {
    let v = stdout_json(&tl(&["cactus-check", "--n", "3", "--word", "1:2,1:2"]));
    assert_eq!(v["permutation"], serde_json::json!([1, 2, 3]));
    let v = stdout_json(&tl(&["cactus-check", "--n", "3", "--max", "3"]));
    assert_eq!(v["ok"], true);
}

#[test]
fn fiber_validate_exit_codes() {
    let good = r#"{"b":[["0","1"],["0","0"]],"t":[["0","1"],["0","0"]]}"#;
    let out = tl(&["fiber-validate", "--input", good]);
    assert!(out.status.success());

    let bad = r#"{"b":[["0","1"],["0","0"]],"t":[["0","0"],["1","0"]]}"#;
    let out = tl(&["fiber-validate", "--input", bad]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["valid"], false);
    assert!(v["reason"].as_str().unwrap().contains("contraction"));
}

#[test]
fn fiber_invariant_charpoly() {
    let input = r#"{"b":[["0","1"],["0","0"]],"t":[["0","1"],["0","0"]]}"#;
    let v = stdout_json(&tl(&["fiber-invariant", "--input", input]));
    assert_eq!(v["charpoly_coefficients"], serde_json::json!(["-1"]));
}

#[test]
fn verify_suite_runs_and_reports() {
    let out = tl(&["verify", "jw", "--max", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 4);
    // last line is the JSON summary
    let last = text.lines().last().unwrap();
    let v: serde_json::Value = serde_json::from_str(last).unwrap();
    assert_eq!(v["ok"], true);
}

#[test]
fn verify_all_aggregates() {
    let out = tl(&["verify", "all", "--max", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let last = text.lines().last().unwrap();
    let v: serde_json::Value = serde_json::from_str(last).unwrap();
    assert_eq!(v["ok"], true);
    assert!(v["checks"].as_u64().unwrap() >= 30);
}

#[test]
fn usage_errors_exit_two() {
    let out = tl(&["dims", "--m", "4"]); // missing --n
    assert_eq!(out.status.code(), Some(2));
    let out = tl(&["verify", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tl(&["compose", "--g", "{not json", "--f", "{}"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn env_var_overrides_bound() {
    let out = Command::new(env!("CARGO_BIN_EXE_tl"))
        .args(["crystal-components", "--n", "15"])
        .env("TL_MAX_N", "16")
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_tl"))
        .args(["crystal-components", "--n", "15"])
        .env("TL_MAX_N", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hat_expansion_labels() {
    // expand id_2: two hat terms with matrix-unit labels
    let id2 = r#"{"domain":2,"codomain":2,"pairs":[["s1","t1"],["s2","t2"]]}"#;
    let v = stdout_json(&tl(&["hat", "--expand", id2]));
    let terms = v["hat_terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    for t in terms {
        assert_eq!(t["coeff"], "1");
        assert!(t["label"]["k"].is_number());
    }
}

#[test]
fn mobius_of_identity_is_projector() {
    let id2 = r#"{"domain":2,"codomain":2,"pairs":[["s1","t1"],["s2","t2"]]}"#;
    let v = stdout_json(&tl(&["mobius", "--diagram", id2]));
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
}
