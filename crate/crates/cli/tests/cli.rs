use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_halfarc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_writes_edge_list() {
    let o = run(&["construct", "x:2,12,13"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("156 312"));
    assert_eq!(out.lines().count(), 313);
}

#[test]
fn construct_rose_window_graph6() {
    let o = run(&["construct", "rw6", "--format", "graph6"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "KhEKM@aKOt@i\n");
}

#[test]
fn construct_rejects_even_n() {
    let o = run(&["construct", "x:3,3,4"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("odd"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["construct", "nonsense:1"])), 2);
    assert_eq!(code(&run(&["analyze", "/no/such/file"])), 2);
}

#[test]
fn analyze_wreath() {
    let o = run(&["analyze", "wreath:6"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("aut_order=768\n"));
    assert!(out.contains("at=true\n"));
    assert!(out.contains("radius=-\n"));
}

#[test]
fn analyze_order_eight_member() {
    let out = stdout(&run(&["analyze", "x:2,4,17"]));
    for line in ["hat=true", "radius=17", "tight=true", "aut_order=136"] {
        assert!(out.lines().any(|l| l == line), "{line} missing in\n{out}");
    }
}

#[test]
fn analyze_exceptional_triple_is_not_hat() {
    let out = stdout(&run(&["analyze", "x:2,3,7"]));
    assert!(out.lines().any(|l| l == "hat=false"));
    assert!(out.lines().any(|l| l == "at=true"));
}

#[test]
fn analyze_report_key_order() {
    let out = stdout(&run(&["analyze", "rw6"]));
    let keys: Vec<&str> = out.lines().map(|l| l.split('=').next().unwrap()).collect();
    assert_eq!(
        keys,
        ["graph", "n", "edges", "regular", "vt", "et", "at", "hat", "aut_order", "radius", "attachment", "tight"]
    );
}

#[test]
fn analyze_is_deterministic() {
    let a = run(&["analyze", "x:2,12,13"]);
    let b = run(&["analyze", "x:2,12,13"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn analyze_reads_files_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("x.g6");
    let el = dir.path().join("x.txt");
    assert_eq!(code(&run(&["construct", "x:2,3,9", "--format", "graph6", "--out", path(&g6)])), 0);
    assert_eq!(code(&run(&["construct", "x:2,3,9", "--out", path(&el)])), 0);
    let from_spec = stdout(&run(&["analyze", "x:2,3,9"]));
    for file in [&g6, &el] {
        let from_file = stdout(&run(&["analyze", path(file)]));
        assert_eq!(
            from_file.lines().skip(1).collect::<Vec<_>>(),
            from_spec.lines().skip(1).collect::<Vec<_>>()
        );
    }
    assert!(from_spec.contains("hat=true\n"));
}

#[test]
fn large_graphs_need_big_flag() {
    let o = run(&["analyze", "wreath:1001"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("--big"));
}

#[test]
fn identity_cover_is_disconnected() {
    let o = run(&["cover", "wreath:6", "--group", "5", "--round-trip"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    for line in ["group=Z5", "cover_n=60", "cover_edges=120", "connected=false", "regular_covering=true", "round_trip=true"] {
        assert!(out.lines().any(|l| l == line), "{line} missing in\n{out}");
    }
}

#[test]
fn cover_from_voltage_file() {
    let dir = tempfile::tempdir().unwrap();
    let volts = dir.path().join("v.txt");
    let cover = dir.path().join("cover.txt");
    fs::write(&volts, "group 3\n0 2 1\n").unwrap();
    let o = run(&[
        "cover", "lex-cycle:3", "--voltages", path(&volts), "--round-trip", "--out", path(&cover),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("connected=true\n"), "{out}");
    assert!(out.contains("round_trip=true\n"));
    let text = fs::read_to_string(&cover).unwrap();
    assert_eq!(text.lines().next(), Some("18 36"));
}

#[test]
fn cover_rejects_group_mismatch_and_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    let volts = dir.path().join("v.txt");
    fs::write(&volts, "group 3\n0 1 1\n").unwrap();
    let o = run(&["cover", "wreath:6", "--group", "5", "--voltages", path(&volts)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("group mismatch"));
    fs::write(&volts, "group 3\n0 2 1\n").unwrap();
    let o = run(&["cover", "rw6", "--voltages", path(&volts)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn cover_search_echoes_seed_and_is_reproducible() {
    let args = ["cover", "wreath:6", "--group", "5", "--search", "--seed", "7", "--tries", "20"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    assert!(out.lines().any(|l| l == "seed=7"));
    assert_eq!(out.lines().filter(|l| l.starts_with("try=")).count(), 20);
    // Recorded outcome for this seed: no half-arc-transitive cover among the samples.
    assert!(out.lines().any(|l| l == "found=0"));
}

#[test]
fn quotient_by_sylow_thirteen_is_a_cycle() {
    let out = stdout(&run(&["quotient", "x:2,12,13", "--prime", "13"]));
    for line in ["group_order=13", "quotient_n=12", "quotient_edges=12", "quotient_regular=2", "orbit_sizes=[13]"] {
        assert!(out.lines().any(|l| l == line), "{line} missing in\n{out}");
    }
}

#[test]
fn quotient_by_generator_file() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("c6.txt");
    let gens = dir.path().join("gens.txt");
    fs::write(&graph, "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n").unwrap();
    fs::write(&gens, "[3 4 5 0 1 2]\n").unwrap();
    let o = run(&["quotient", path(&graph), "--gens", path(&gens)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("quotient_n=3\n"));
    assert!(out.contains("regular_covering=true\n"));
}

#[test]
fn quotient_requires_a_group() {
    assert_eq!(code(&run(&["quotient", "rw6"])), 2);
}

#[test]
fn census_of_small_family_graphs_has_no_hat_rows() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("census.g6");
    let mut lines = String::new();
    for spec in ["rw6", "wreath:6", "x:2,3,7", "x:1,3,5", "px:5", "lex-cycle:11", "ca0:5"] {
        lines += &stdout(&run(&["construct", spec, "--format", "graph6"]));
    }
    fs::write(&file, lines).unwrap();
    let o = run(&["census", path(&file)]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.ends_with("rows=7 errors=0 hat=0\n"), "{out}");
    assert_eq!(out.lines().nth(2), Some("2 12 24 true true true false 768"));
}

#[test]
fn census_flags_a_hat_graph() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("census.g6");
    fs::write(&file, stdout(&run(&["construct", "x:2,12,13", "--format", "graph6"]))).unwrap();
    let out = stdout(&run(&["census", path(&file)]));
    assert!(out.contains("\n1 156 312 true true false true 312\n"), "{out}");
    assert!(out.ends_with("hat=1\n"));
}

#[test]
fn census_empty_file_and_malformed_rows() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("census.g6");
    fs::write(&file, "").unwrap();
    let o = run(&["census", path(&file)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "line n edges vt et at hat aut_order\nrows=0 errors=0 hat=0\n");

    fs::write(&file, "!!!\nBw\n").unwrap();
    let o = run(&["census", path(&file)]);
    assert_eq!(code(&o), 2);
    let out = stdout(&o);
    assert!(out.lines().nth(1).unwrap().starts_with("1 error:"), "{out}");
    assert_eq!(out.lines().nth(2), Some("2 3 3 true true true false 6"));
}

#[test]
fn verify_passes() {
    let o = run(&["verify"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 9);
    assert!(out.contains("tightly-attached predicate"));
}
