use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use univ_core::construction::build_universal;
use univ_core::treewidth::{build_universal_tw, generate_partial_ktree};
use univ_core::{io, Arity};

fn univ(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_univ")).args(args).output().expect("spawn univ")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn path_graph(n: usize) -> String {
    let mut s = format!("p tw {n} {}\n", n - 1);
    for i in 1..n {
        s.push_str(&format!("{i} {}\n", i + 1));
    }
    s
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn construct_round_trips_byte_exact() {
    let dir = tempfile::tempdir().unwrap();
    for (n, d) in [(13u64, 3u32), (40, 3), (31, 2)] {
        let out = dir.path().join(format!("u{n}_{d}.gr"));
        let o = univ(&["construct", "--n", &n.to_string(), "--d", &d.to_string(), "--out", p(&out)]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let text = fs::read_to_string(&out).unwrap();
        let g = io::parse_graph(&text).unwrap();
        assert_eq!(io::write_graph(&g), text);
        assert_eq!(g, build_universal(n, Arity::new(d).unwrap()).unwrap().graph);
    }
}

#[test]
fn construct_treewidth_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tw.gr");
    let o = univ(&["construct", "--n", "50", "--treewidth", "2", "--out", p(&out)]);
    assert_eq!(code(&o), 0);
    let g = io::parse_graph(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(g, build_universal_tw(50, 2).unwrap().graph);
}

#[test]
fn embed_path_writes_one_line_per_vertex() {
    let dir = tempfile::tempdir().unwrap();
    let tree = dir.path().join("path13.gr");
    fs::write(&tree, path_graph(13)).unwrap();
    let o = univ(&["embed", "--host", "13,3", "--tree", p(&tree)]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 13);
    let map = io::parse_mapping(&text, 13).unwrap();
    let host = build_universal(13, Arity::TERNARY).unwrap();
    for i in 0..12 {
        assert!(host.graph.has_edge(map[i], map[i + 1]));
    }

    // a forest smaller than the host
    fs::write(&tree, path_graph(9)).unwrap();
    let o = univ(&["embed", "--host", "13,3", "--tree", p(&tree), "--labels", "address"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 9);
}

#[test]
fn tw_embed_accepts_generated_instances() {
    let dir = tempfile::tempdir().unwrap();
    let (g, td) = generate_partial_ktree(30, 2, 7, 0.7).unwrap();
    let (gp, tp) = (dir.path().join("g.gr"), dir.path().join("g.td"));
    fs::write(&gp, io::write_graph(&g)).unwrap();
    fs::write(&tp, io::write_decomposition(&td, g.n())).unwrap();
    for n in ["30", "45"] {
        let o = univ(&["tw-embed", "--n", n, "--w", "2", "--graph", p(&gp), "--td", p(&tp)]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 30);
    }
    let o = univ(&["split", "--mode", "tw", "--graph", p(&gp), "--td", p(&tp), "--w", "2", "--big-n", "6", "--x", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.gr");
    fs::write(&bad, "p tw 3 1\n1 5\n").unwrap();
    assert_eq!(code(&univ(&["embed", "--host", "13,3", "--tree", p(&bad)])), 2);
    assert_eq!(code(&univ(&["embed", "--host", "13", "--tree", p(&bad)])), 2);
    assert_eq!(code(&univ(&["embed", "--host", "13,3", "--tree", "/nonexistent/file"])), 2);
    assert_eq!(code(&univ(&["frobnicate"])), 2);
    assert_eq!(code(&univ(&["tw-bounds", "--n", "10", "--w", "0"])), 2);
    let o = univ(&["tw-bounds", "--n", "10", "--w", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), "n=10 w=1 lower_bound=12 edges=45");
    assert_eq!(code(&univ(&["verify", "--n-max", "6", "--d", "2"])), 0);
    assert_eq!(code(&univ(&["selftest", "--mutation", "drop-half-block"])), 1);
}

#[test]
fn selftest_jsonl_lines_parse() {
    let o = univ(&["selftest", "--format", "jsonl", "--threads", "2"]);
    assert_eq!(code(&o), 0);
    for line in String::from_utf8(o.stdout).unwrap().lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["passed"], true);
    }
}
