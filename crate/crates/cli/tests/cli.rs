use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geomgraph"))
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

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("geomgraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn comb_needs_four_guards() {
    let o = run(&["gallery", "--in", &corpus("comb12.poly")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("guards: 4"), "{}", stdout(&o));
}

#[test]
fn plus_partition_verifies() {
    let o = run(&["rectpart", "--in", &corpus("plus.poly"), "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rectangles: 3, verify: passed"), "{}", stdout(&o));
}

#[test]
fn four_cycle_json_report() {
    let o = run(&["star", "--in", &corpus("c4.dist"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("dilation: 2"), "{text}");
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["dilation"], 2);
    assert_eq!(v["verification"]["status"], "not-run");
    assert_eq!(v["input_sha256"].as_str().unwrap().len(), 64);
    assert!(stderr(&o).contains("wall time"));
}

#[test]
fn json_reports_are_byte_identical() {
    let cases: Vec<Vec<String>> = vec![
        vec!["gallery".into(), "--in".into(), corpus("star30.poly")],
        vec![
            "rectpart".into(),
            "--in".into(),
            corpus("annulus.poly"),
            "--verify".into(),
        ],
        vec![
            "cluster".into(),
            "--in".into(),
            corpus("points12.pts"),
            "--k".into(),
            "5".into(),
        ],
        vec!["bends".into(), "--in".into(), corpus("benelux.map")],
        vec!["strip".into(), "--in".into(), corpus("sphere200.off")],
        vec!["tiling".into(), "--in".into(), corpus("random5.tiling")],
        vec!["star".into(), "--in".into(), corpus("metric6.dist"), "--verify".into()],
    ];
    for mut args in cases {
        args.push("--json".into());
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, b) = (run(&argv), run(&argv));
        assert_eq!(a.status.code(), Some(0), "{argv:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{argv:?}");
    }
}

#[test]
fn corpus_instances_never_fail_verification() {
    let cases: &[&[&str]] = &[
        &["gallery", "--in", "comb12.poly"],
        &["gallery", "--in", "star30.poly"],
        &["gallery", "--in", "ortho_comb16.poly", "--quads", "ortho_comb16.quads"],
        &["gallery", "--in", "staircase8.poly", "--quads", "staircase8.quads"],
        &["rectpart", "--in", "plus.poly"],
        &["rectpart", "--in", "lshape.poly"],
        &["rectpart", "--in", "annulus.poly"],
        &["rectpart", "--in", "polyomino.poly"],
        &["rectpart", "--in", "polyomino8.poly"],
        &["cluster", "--in", "points12.pts", "--d2", "40"],
        &["cluster", "--in", "points12.pts", "--k", "3"],
        &["bends", "--in", "benelux.map"],
        &["bends", "--in", "single.map"],
        &["bends", "--in", "bricks.map"],
        &["strip", "--in", "tetrahedron.off"],
        &["strip", "--in", "octahedron.off"],
        &["strip", "--in", "icosahedron.off"],
        &["strip", "--in", "sphere200.off"],
        &["tiling", "--in", "rhombus.tiling"],
        &["tiling", "--in", "three_rhombi.tiling"],
        &["tiling", "--in", "random5.tiling"],
        &["tiling", "--in", "random6.tiling"],
        &["star", "--in", "c4.dist"],
        &["star", "--in", "metric6.dist"],
    ];
    for case in cases {
        let mut args: Vec<String> = case.iter().map(|s| s.to_string()).collect();
        for a in args.iter_mut().skip(1) {
            if a.contains('.') {
                *a = corpus(a);
            }
        }
        args.push("--verify".into());
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = run(&argv);
        assert_eq!(o.status.code(), Some(0), "{case:?}: {}{}", stdout(&o), stderr(&o));
        assert!(
            stdout(&o).lines().next().unwrap().ends_with("verify: passed"),
            "{case:?}: {}",
            stdout(&o)
        );
    }
}

#[test]
fn oracle_guard_reports_not_run() {
    let pts = scratch("thirteen.pts");
    let g = run(&[
        "gen",
        "points",
        "--seed",
        "3",
        "--size",
        "13",
        "--out",
        pts.to_str().unwrap(),
    ]);
    assert_eq!(g.status.code(), Some(0));
    let o = run(&["cluster", "--in", pts.to_str().unwrap(), "--k", "4", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify: not-run"), "{}", stdout(&o));
    assert!(stdout(&o).contains("13 points exceeds 12"));
}

#[test]
fn parse_errors_name_the_line() {
    let bad = scratch("bad.dist");
    std::fs::write(&bad, "3\n0 1 1\n1 0 1\n1 one 0\n").unwrap();
    let o = run(&["star", "--in", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
    let bad = scratch("bad.off");
    std::fs::write(&bad, "OFF\n4 4 6\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 1 2\n3 0 1\n").unwrap();
    let o = run(&["strip", "--in", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 8"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_two() {
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Usage"));
    let o = run(&["bends", "--in", &corpus("benelux.map"), "--svg", "x.svg"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["cluster", "--in", &corpus("points12.pts")]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["gallery", "--in", &scratch("missing.poly").to_string_lossy()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn generators_are_seeded() {
    for family in ["polygon", "orthogonal", "points", "metric", "map", "mesh", "tiling"] {
        let a = run(&["gen", family, "--seed", "17"]);
        let b = run(&["gen", family, "--seed", "17"]);
        assert_eq!(a.status.code(), Some(0), "{family}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{family}");
        assert!(!a.stdout.is_empty());
    }
    assert_eq!(run(&["gen", "tiling", "--size", "9"]).status.code(), Some(2));
}

#[test]
fn figures_and_outputs_are_written() {
    let svg = scratch("plus.svg");
    let rects = scratch("plus.rects");
    let o = run(&[
        "rectpart",
        "--in",
        &corpus("plus.poly"),
        "--svg",
        svg.to_str().unwrap(),
        "--out",
        rects.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let figure = std::fs::read_to_string(&svg).unwrap();
    assert!(figure.starts_with("<?xml") && figure.contains("stroke-dasharray"));
    let r: Vec<[i64; 4]> = serde_json::from_str(&std::fs::read_to_string(&rects).unwrap()).unwrap();
    assert_eq!(r.len(), 3);
    let strip = scratch("ico.strip");
    let o = run(&[
        "strip",
        "--in",
        &corpus("icosahedron.off"),
        "--out",
        strip.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let line = std::fs::read_to_string(&strip).unwrap();
    assert_eq!(line.lines().count(), 1);
    assert!(line.split_whitespace().count() >= 20);
}
