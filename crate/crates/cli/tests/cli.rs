use std::io::Write;
use std::process::{Command, Output, Stdio};

use glocal::io::from_graph6;
use glocal::Graph;
use serde_json::Value;

fn glocal(args: &[&str]) -> Output {
    glocal_with(args, None, &[])
}

fn glocal_with(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_glocal"));
    cmd.args(args)
        .env_remove("GLOCAL_CAPS_N")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn graph6(out: &Output) -> Graph {
    from_graph6(&stdout(out)).unwrap()
}

fn edges(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().collect()
}

#[test]
fn gen_family_c75() {
    let out = glocal(&["gen", "family", "--t", "7", "--k", "5", "--variant", "C"]);
    assert_eq!(code(&out), 0);
    let g = graph6(&out);
    // 21 five-subsets, 7 points, each subset joined to its 5 members
    assert_eq!(g.n(), 28);
    assert_eq!(g.edge_count(), 21 * 5);
    let prime = graph6(&glocal(&["gen", "family", "--t", "7", "--k", "5", "--variant", "C'"]));
    assert_eq!(prime.edge_count(), 21 * 5 + 21);
}

#[test]
fn gen_repeater_complete() {
    let g = graph6(&glocal(&["gen", "repeater", "--kind", "complete", "--n", "3"]));
    assert_eq!(edges(&g), vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (2, 5)]);
}

#[test]
fn gen_random_is_seeded() {
    let a = glocal(&["gen", "random", "--n", "8", "--seed", "1"]);
    let b = glocal(&["--seed", "1", "gen", "random", "--n", "8"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(graph6(&a).n(), 8);
    let others: Vec<Vec<u8>> = (2..6)
        .map(|s| glocal(&["gen", "random", "--n", "8", "--seed", &s.to_string()]).stdout)
        .collect();
    assert!(others.iter().any(|o| *o != a.stdout));
}

#[test]
fn gen_formats() {
    let dot = stdout(&glocal(&["gen", "fixture", "fig2-lhs", "--format", "dot"]));
    assert!(dot.starts_with("graph G {"));
    assert!(dot.contains("\"d\" -- \"e\""));
    let el = json(&glocal(&["gen", "fixture", "fig2-lhs", "--format", "json"]));
    assert_eq!(el["n"], 5);
    assert_eq!(el["labels"][4], "e");
    let bad = glocal(&["gen", "family", "--t", "3", "--k", "5"]);
    assert_ne!(code(&bad), 0);
    assert!(stderr(&bad).contains("t=3"));
}

#[test]
fn apply_fig2_rlc() {
    let dir = tempfile::tempdir().unwrap();
    let moves = dir.path().join("moves.json");
    std::fs::write(&moves, r#"[{"op": "rlc", "r": 2, "mult": {"0": 1, "1": 1}}]"#).unwrap();
    let out = glocal(&["apply", "fixture:fig2-lhs", moves.to_str().unwrap(), "--verify"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    // a, b, c, d, e = 0..5; cd, ce, de toggled
    let want = Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]).unwrap();
    assert_eq!(graph6(&out), want);
    assert!(stderr(&out).contains("3 pairs toggled"));
}

#[test]
fn apply_empty_moves_is_identity() {
    let before = glocal(&["gen", "fixture", "fig3-lhs"]);
    let out = glocal_with(&["apply", "fixture:fig3-lhs", "-"], Some("[]"), &[]);
    assert_eq!(code(&out), 0);
    assert_eq!(out.stdout, before.stdout);
}

#[test]
fn apply_reports_failing_index() {
    let out = glocal_with(
        &["apply", "fixture:fig2-lhs", "-"],
        Some(r#"[{"op": "lc", "u": 0}, {"op": "pivot", "u": 0, "v": 1}]"#),
        &[],
    );
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("#1"), "{}", stderr(&out));
    let out = glocal_with(
        &["apply", "fixture:fig1-left", "-", "--verify"],
        Some(r#"[{"op": "rlc", "r": 2, "mult": {"0": 1, "1": 1, "2": 1, "3": 1}}]"#),
        &[],
    );
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("#0"));
}

#[test]
fn apply_reads_graph_from_stdin_and_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    std::fs::write(&path, r#"{"n": 3, "edges": [[0, 1], [1, 2]]}"#).unwrap();
    let moves = dir.path().join("m.json");
    std::fs::write(&moves, r#"[{"op": "lc", "u": 1}]"#).unwrap();
    let from_file = glocal(&["apply", path.to_str().unwrap(), moves.to_str().unwrap()]);
    let from_stdin = glocal_with(
        &["apply", "-", moves.to_str().unwrap()],
        Some(r#"{"n": 3, "edges": [[0, 1], [1, 2]]}"#),
        &[],
    );
    assert_eq!(code(&from_file), 0);
    assert_eq!(from_file.stdout, from_stdin.stdout);
    assert_eq!(edges(&graph6(&from_file)), vec![(0, 1), (0, 2), (1, 2)]);
}

fn write_graph(dir: &tempfile::TempDir, name: &str, n: usize, e: &[(usize, usize)]) -> String {
    let path = dir.path().join(name);
    let edges: Vec<[usize; 2]> = e.iter().map(|&(u, v)| [u, v]).collect();
    std::fs::write(&path, serde_json::json!({"n": n, "edges": edges}).to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn analyze_triangle_is_all_y() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write_graph(&dir, "k3.json", 3, &[(0, 1), (0, 2), (1, 2)]);
    let out = glocal(&["analyze", &k3]);
    assert_eq!(code(&out), 0);
    let rep = json(&out);
    assert_eq!(rep["types"]["Y"], serde_json::json!([0, 1, 2]));
    assert_eq!(rep["standard_form"], false);
}

#[test]
fn analyze_c43_lists_abch() {
    let rep = json(&glocal(&["analyze", "fixture:c43"]));
    let abch = rep["mls"]
        .as_array()
        .unwrap()
        .iter()
        .find(|m| m["set"] == serde_json::json!([0, 1, 2, 7]))
        .expect("{a, b, c, h} is minimal local");
    assert_eq!(abch["dimension"], 2);
    assert_eq!(abch["set_labels"], serde_json::json!(["a", "b", "c", "h"]));
}

#[test]
fn analyze_edgeless_singletons() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write_graph(&dir, "e.json", 4, &[]);
    let rep = json(&glocal(&["analyze", &empty, "--cut", "0,1", "--cut", "2"]));
    assert_eq!(rep["mls_count"], 4);
    for (u, m) in rep["mls"].as_array().unwrap().iter().enumerate() {
        assert_eq!(m["set"], serde_json::json!([u]));
    }
    assert_eq!(rep["cuts"][0]["rank"], 0);
}

#[test]
fn analyze_cut_rank() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write_graph(&dir, "p4.json", 4, &[(0, 1), (1, 2), (2, 3)]);
    let rep = json(&glocal(&["analyze", &p4, "--cut", "0,1", "--cut", "0,2"]));
    assert_eq!(rep["cuts"][0]["rank"], 1);
    assert_eq!(rep["cuts"][1]["rank"], 2);
    assert_eq!(code(&glocal(&["analyze", &p4, "--cut", "0,9"])), 65);
}

#[test]
fn analyze_reports_caps() {
    for out in [
        glocal(&["analyze", "fixture:c43", "--caps-n", "3"]),
        glocal_with(&["analyze", "fixture:c43"], None, &[("GLOCAL_CAPS_N", "3")]),
    ] {
        assert_eq!(code(&out), 2);
        let rep = json(&out);
        assert!(rep["mls"].is_null());
        assert_eq!(rep["capped"][0]["field"], "mls");
    }
}

#[test]
fn equiv_fig2_level_2() {
    let out = glocal(&["equiv", "fixture:fig2-lhs", "fixture:fig2-rhs", "--level", "2"]);
    assert_eq!(code(&out), 0);
    let cert = json(&out);
    assert_eq!(cert["verdict"], "equivalent");
    assert_eq!(cert["moves"][0]["op"], "rlc");
}

#[test]
fn equiv_fig2_pair_is_one_lc_apart() {
    // the two drawings differ by a local complementation at a
    let out = glocal(&["equiv", "fixture:fig2-lhs", "fixture:fig2-rhs", "--level", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["moves"], serde_json::json!([{"op": "lc", "u": 0}]));
}

#[test]
fn equiv_c43_lu_obstruction() {
    let out = glocal(&["equiv", "fixture:c43", "fixture:c43p", "--level", "lu"]);
    assert_eq!(code(&out), 1);
    let ob = &json(&out)["obstruction"];
    assert_eq!(ob["kind"], "mls-mismatch");
    assert_eq!(ob["set"], serde_json::json!([0, 1, 2, 7]));
    assert_eq!(
        (ob["dimension_1"].as_u64(), ob["dimension_2"].as_u64()),
        (Some(2), Some(1))
    );
}

#[test]
fn equiv_capped_is_unknown() {
    let out = glocal(&[
        "equiv",
        "fixture:c43",
        "fixture:c43p",
        "--level",
        "1",
        "--orbit-cap",
        "2",
    ]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["verdict"], "unknown");
}

#[test]
fn hierarchy_r2() {
    let out = glocal(&["hierarchy", "--r", "2", "--validate"]);
    assert_eq!(code(&out), 0);
    let rep = json(&out);
    assert_eq!(
        (rep["formula"]["t"].as_u64(), rep["formula"]["k"].as_u64()),
        (Some(7), Some(5))
    );
    assert_eq!(rep["formula"]["valid"], true);
    assert_eq!(rep["witness"]["verified"], true);
    let refute = &rep["formula"]["refutation"];
    assert_eq!(refute["level"], 1);
    assert_eq!(refute["holds"], true);
    assert_eq!(
        (refute["pairs_t"].as_str(), refute["pairs_k"].as_str()),
        (Some("21"), Some("10"))
    );
}

#[test]
fn hierarchy_r3_falls_back() {
    let rep = json(&glocal(&["hierarchy", "--r", "3"]));
    assert_eq!(
        (rep["formula"]["t"].as_u64(), rep["formula"]["k"].as_u64()),
        (Some(11), Some(9))
    );
    assert_eq!(rep["formula"]["valid"], false);
    assert!(rep["fallback"]["t"].is_u64());
    assert_eq!(rep["witness"]["t"], rep["fallback"]["t"]);
    assert_eq!(rep["witness"]["verified"], true);
}

#[test]
fn oracle_checks_pass() {
    for args in [
        &["oracle", "rlc", "--fixture", "fig2"][..],
        &["oracle", "rlc", "--fixture", "fig3"],
        &["oracle", "stabilizers", "--n-max", "4"],
        &["oracle", "lc", "--exhaustive", "4"],
        &["oracle", "pivot", "--exhaustive", "4"],
        &["oracle", "project", "--graph", "fixture:fig3", "--basis", "z0"],
        &["oracle", "project", "--graph", "fixture:fig3", "--basis", "z1"],
    ] {
        let out = glocal(args);
        assert_eq!(code(&out), 0, "{args:?}: {}", stderr(&out));
        let rep = json(&out);
        assert_eq!(rep["pass"], true, "{args:?}");
        assert!(rep["max_deviation"].as_f64().unwrap() <= 1e-9);
    }
    let fig2 = json(&glocal(&["oracle", "rlc", "--fixture", "fig2"]));
    assert_eq!(fig2["toggled"], serde_json::json!(["cd", "ce", "de"]));
}

#[test]
fn oracle_project_xplus_needs_isolated_vertex() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(&dir, "g.json", 3, &[(0, 1)]);
    let out = glocal(&["oracle", "project", "--graph", &g, "--basis", "xplus"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["cases"], 1);
    assert_eq!(
        code(&glocal(&[
            "oracle", "project", "--graph", &g, "--basis", "xplus", "--vertex", "0"
        ])),
        65
    );
}

#[test]
fn oracle_sweep_cap() {
    assert_eq!(code(&glocal(&["oracle", "lc", "--exhaustive", "7"])), 2);
    assert_eq!(
        code(&glocal(&["oracle", "lc", "--exhaustive", "4", "--caps-n", "3"])),
        2
    );
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(code(&glocal(&["frobnicate"])), 64);
    assert_eq!(code(&glocal(&["hierarchy", "--r", "1"])), 64);
    assert_eq!(code(&glocal(&["analyze", "fixture:c43", "--format", "dot"])), 64);
    assert_eq!(code(&glocal(&["--tol", "-1", "oracle", "lc", "--exhaustive", "2"])), 64);
    assert_eq!(code(&glocal_with(&["equiv", "-", "-"], Some("Bw"), &[])), 64);
    assert_eq!(code(&glocal(&["analyze", "/definitely/not/here"])), 66);
    assert_eq!(
        code(&glocal_with(
            &["analyze", "-"],
            Some("{\"n\": 2, \"edges\": [[0, 5]]}"),
            &[]
        )),
        65
    );
    assert_eq!(code(&glocal(&["analyze", "fixture:nope"])), 65);
    assert_eq!(code(&glocal(&["--help"])), 0);
}

#[test]
fn reports_are_byte_stable() {
    let args = ["equiv", "fixture:c43", "fixture:c43p", "--format", "text"];
    let a = glocal(&args);
    assert_eq!(a.stdout, glocal(&args).stdout);
    assert!(stdout(&a).contains("verdict: not-equivalent"));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.g6");
    let out = glocal(&["gen", "fixture", "fig2", "-o", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    assert_eq!(from_graph6(&std::fs::read_to_string(path).unwrap()).unwrap().n(), 5);
}
