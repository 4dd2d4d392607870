use std::path::PathBuf;

use clopen::cli::{run_with, Format, RunConfig, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("clopen").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("clopen-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn scan_reports_odd_walks() {
    let (code, out, _) = run(&["scan", "--family", "go-plus:d=2,(3)^inf", "--levels", "4", "--expect", "odd-walk"]);
    assert_eq!(code, EXIT_OK);
    for n in 1..=4 {
        assert!(out.contains(&format!("level {n}: OddWalk")), "{out}");
    }
}

#[test]
fn decide_writes_a_verifiable_coloring() {
    let path = scratch("decide.txt");
    let p = path.to_str().unwrap();
    let (code, out, _) =
        run(&["decide", "--family", "graph-o:d=3,4,(3)^inf", "--level", "2", "--out", p, "--expect", "bipartite"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("Bipartite"));
    let (code, out, _) =
        run(&["color", "verify", "--family", "graph-o:d=3,4,(3)^inf", "--coloring", p, "--bound", "4"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.starts_with("Proper"));
}

#[test]
fn color_build_round_trips_through_verify() {
    for (fam, kind) in
        [("graph-o:d=3,4,(3)^inf", "parity"), ("graph-o:d=(3)^inf", "first-letter"), ("go-plus:d=2,(3)^inf", "beta3")]
    {
        let path = scratch(&format!("{kind}.txt"));
        let p = path.to_str().unwrap();
        let (code, _, err) = run(&["color", "build", "--family", fam, "--kind", kind, "--out", p]);
        assert_eq!(code, EXIT_OK, "{err}");
        let (code, out, _) = run(&["color", "verify", "--family", fam, "--coloring", p, "--bound", "3"]);
        assert_eq!(code, EXIT_OK, "{kind}: {out}");
    }
}

#[test]
fn verify_flags_violations() {
    let path = scratch("const.txt");
    std::fs::write(&path, "level=1 colors=1 family=triangle\n* 0\n").unwrap();
    let (code, out, _) = run(&["color", "verify", "--family", "triangle", "--coloring", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_MISMATCH);
    assert!(out.contains("Violation"), "{out}");
    let (code, _, _) = run(&["color", "verify", "--family", "t", "--predicate", "t-coloring"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn subshift_commands() {
    let (code, out, _) = run(&["subshift", "complexity", "--sturmian", "(3 - 1 sqrt 5)/2", "--nmax", "12"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("2,3,4,5,6,7,8,9,10,11,12,13"), "{out}");
    let (code, _, _) = run(&["subshift", "member", "--point", "(01)^inf.(01)^inf", "--fib", "0", "--expect", "false"]);
    assert_eq!(code, EXIT_OK);
    let (code, _, _) = run(&["subshift", "member", "--point", "(01)^inf.(01)^inf", "--fib", "0", "--expect", "true"]);
    assert_eq!(code, EXIT_MISMATCH);
    let (code, out, _) = run(&["subshift", "powerfree", "--word", "0101", "--k", "2"]);
    assert_eq!(code, EXIT_MISMATCH, "{out}");
    let (code, _, _) = run(&["subshift", "powerfree", "--phi", "500", "--k", "4"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn cb_hom_spectrum_obstruct() {
    assert_eq!(run(&["cb", "rank", "--builtin", "k0", "--resolution", "40", "--expect-rank", "2"]).0, EXIT_OK);
    assert_eq!(run(&["hom", "--from", "cycle:5", "--to", "cycle:3", "--expect", "found"]).0, EXIT_OK);
    assert_eq!(run(&["hom", "--from", "cycle:3", "--to", "cycle:5", "--expect", "found"]).0, EXIT_MISMATCH);
    let (code, out, _) = run(&["spectrum", "--graph", "ka-core:A=0", "--max-len", "64"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains('8'), "{out}");
    let args = [
        "obstruct",
        "--g1",
        "gp:d=2,(3)^inf,p=0",
        "--g2",
        "gp:d=2,(3)^inf,p=1",
        "--level",
        "2",
        "--expect",
        "obstruction",
    ];
    assert_eq!(run(&args).0, EXIT_OK);
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = run(&["scan", "--family", "bogus"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("family specs:"), "{err}");
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["scan", "--family", "k0", "--levels", "0"]).0, EXIT_USAGE);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}

#[test]
fn json_is_deterministic_without_timing() {
    let args = ["--format", "json", "--no-timing", "scan", "--family", "k0", "--levels", "3"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.0, EXIT_OK);
    assert_eq!(a.1, b.1);
    let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["levels"].as_array().unwrap().len(), 3);
    assert!(!a.1.contains("millis"));
    let timed = run(&["--format", "json", "scan", "--family", "k0", "--levels", "1"]).1;
    assert!(timed.contains("millis"));
}

#[test]
fn dot_output() {
    let (code, out, _) = run(&["--format", "dot", "quotient", "--family", "triangle", "--level", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("graph") || out.starts_with("digraph"), "{out}");
}

#[test]
fn run_config_round_trips() {
    let configs = [
        RunConfig::default(),
        RunConfig { format: Format::Json, bound: Some(7), levels: 3, no_timing: true },
        RunConfig { format: Format::Dot, bound: None, levels: 1, no_timing: false },
    ];
    for c in configs {
        assert_eq!(RunConfig::parse_args(c.to_args()).unwrap(), c);
    }
    assert!(RunConfig::parse_args(["--bound".to_string(), "0".to_string()]).is_err());
}
