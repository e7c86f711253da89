use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const FORK: &str = "vertex v\nvertex w1\nvertex w2\nedge e1: v -> w1\nedge e2: v -> w2\n";
const I2_GENS: &str = "points 2\nswap: 1->2 2->1\nfix: 1->1\n";
const I3_GENS: &str = "points 3\ncycle: 1->2 2->3 3->1\nswap: 1->2 2->1 3->3\nfix: 1->1 2->2\n";
const NON_JOIN: &str = "\
semigroup 5
zero 0
0 0 0 0 0
0 1 0 1 1
0 0 2 2 2
0 1 2 3 4
0 1 2 4 3
inv 0 1 2 3 4
labels 0 a b 1 u
";
const Z2: &str = "semigroup 3\nzero 0\n0 0 0\n0 1 2\n0 2 1\ninv 0 1 2\n";
const LOOP_EXIT: &str = "edge e: v -> v\nedge f: v -> w\n";

fn file(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn bisem(args: &[&str], path: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bisem"))
        .args(args)
        .arg(path)
        .env_remove("BISEM_BUDGET")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn fork_theorem_line_ends_the_report() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "fork.graph", FORK);
    let o = bisem(&["analyze", "--verify-graph-theorem"], &p);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("theorem: VERIFIED (ℕ₀², a_v ↦ (1,1))"));
}

#[test]
fn non_join_fails_bis2() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "ex.cayley", NON_JOIN);
    let o = bisem(&["analyze"], &p);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).lines().any(|l| l == "boolean: FAIL (BIS2) witness a,b"));
}

#[test]
fn i2_generators_type_monoid() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "i2.gens", I2_GENS);
    let o = bisem(&["analyze"], &p);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("typ: free on 1 generator\n"));
    assert!(out.contains("decompose: [(2, trivial)]\n"));
}

#[test]
fn word_problem_over_typ_i3() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "i3.gens", I3_GENS);
    let o = bisem(&["typ", "--word", "3,0,0", "--word", "0,0,1"], &p);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("word: equal (2 steps)"));
}

#[test]
fn word_problem_verdicts() {
    let dir = TempDir::new().unwrap();
    let free = file(&dir, "free.monoid", "monoid 2\nx y\n");
    let o = bisem(&["typ", "--word", "1,0", "--word", "0,1"], &free);
    assert!(stdout(&o).contains("word: distinct"));
    let g = file(&dir, "loop.graph", LOOP_EXIT);
    let o = bisem(&["typ", "--word", "1,0", "--word", "1,1"], &g);
    assert!(stdout(&o).contains("word: equal"));
    let o = bisem(&["typ", "--word", "1,0,0", "--word", "1"], &free);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn key_value_format() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "ex.cayley", NON_JOIN);
    let out = stdout(&bisem(&["--format", "kv", "analyze"], &p));
    assert!(out.contains("[boolean]\nsummary: FAIL (BIS2) witness a,b\nverdict: fail\naxiom: BIS2\nwitness: a,b\n"));
}

#[test]
fn dot_exports() {
    let dir = TempDir::new().unwrap();
    let i2 = file(&dir, "i2.gens", I2_GENS);
    let dot = stdout(&bisem(&["export-dot"], &i2));
    assert_eq!(dot.matches("[label=").count(), 4, "{dot}");
    let z2 = file(&dir, "z2.cayley", Z2);
    let dot = stdout(&bisem(&["export-dot"], &z2));
    assert_eq!(dot.matches(" -> ").count(), 1, "{dot}");
    let fork = file(&dir, "fork.graph", FORK);
    let dot = stdout(&bisem(&["export-dot"], &fork));
    assert_eq!(dot.matches("subgraph cluster_").count(), 2);
}

#[test]
fn rook_harness() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "z2.cayley", Z2);
    let o = bisem(&["verify-rook", "--dim", "2"], &p);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("type_theorem: VERIFIED at k=2"));
}

#[test]
fn cyclic_graph_theorem_fails() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "loop.graph", LOOP_EXIT);
    let o = bisem(&["verify-graph"], &p);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("theorem: FAILED (graph has a cycle"));
}

#[test]
fn parse_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "bad.cayley", "semigroup 2\nzero 0\n0 0\n0 9\ninv 0 1\n");
    let o = bisem(&["analyze"], &p);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 4, column 3"), "{err}");
}

#[test]
fn budget_environment() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "i3.gens", I3_GENS);
    let o = Command::new(env!("CARGO_BIN_EXE_bisem"))
        .args(["analyze"])
        .arg(&p)
        .env("BISEM_BUDGET", "elements=10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_bisem"))
        .args(["analyze", "--max-elements", "100"])
        .arg(&p)
        .env("BISEM_BUDGET", "elements=10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
