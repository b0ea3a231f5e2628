use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_pebblekit"));
    c.env("PEBBLEKIT_THREADS", "1");
    c
}

/// Writes `body` to a fresh file under the test scratch directory.
fn scratch(name: &str, body: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const BOWTIE: &str = "n 5\n0 1\n0 2\n1 2\n2 3\n2 4\n3 4\n";

#[test]
fn compute_reports_value_and_witness() {
    let g = scratch("bowtie.txt", BOWTIE);
    let o = run(&["compute", &g, "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("value: 10\n"), "{out}");
    assert!(out.contains("root 2: 7\n"));
    assert!(out.ends_with("status: pass\n"));

    let o = run(&["compute", &g, "--root", "0"]);
    let out = stdout(&o);
    assert!(out.contains("value: 6\n") && out.contains("lower_bound: 5\n"), "{out}");
}

#[test]
fn json_reports_parse() {
    let g = scratch("bowtie_json.txt", BOWTIE);
    let o = run(&["--format", "json", "compute", &g, "--root", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["sections"][1]["fields"]["value"], 5);
    assert_eq!(v["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn bounds_by_method() {
    let g = scratch("bowtie_bounds.txt", BOWTIE);
    let value = |method: &str, extra: &[&str]| {
        let mut args = vec!["bound", g.as_str(), "--method", method];
        args.extend_from_slice(extra);
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{method}");
        let out = stdout(&o);
        let line = out.lines().find(|l| l.starts_with("value: ")).expect("value line").to_string();
        line["value: ".len()..].trim_matches('"').to_string()
    };
    assert_eq!(value("cliqueblock", &["--k", "2"]), "10");
    assert_eq!(value("blockcut", &["--root", "0"]), "9");
    assert_eq!(value("blockcut", &["--root", "2"]), "5");
    assert_eq!(value("diam2", &[]), "6");
}

#[test]
fn partition_uses_labels() {
    let g = scratch("labeled_path.txt", "n 4\na b\nb c\nc d 3\n");
    let o = run(&["partition", &g, "--root", "a", "--k", "1", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("P_1: a b c d | a_1=3 w=12\n"), "{out}");
    assert!(out.contains("f_1 = 12\n") && out.contains("f_2 = 24\n"));
}

#[test]
fn blocks_lists_cut_vertices() {
    let g = scratch("bowtie_blocks.txt", BOWTIE);
    let out = stdout(&run(&["blocks", &g]));
    assert!(out.contains("blocks: 2\n") && out.contains("B_0: 0 1 2\n") && out.contains("B_1: 2 3 4\n"), "{out}");
}

#[test]
fn generated_extremal_configuration_is_unsolvable() {
    let cfg = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli/extremal_cfg.txt");
    let cfg = cfg.to_string_lossy().into_owned();
    let o = run(&["generate", "extremal", "--k", "1", "--hc", "1", "--config-out", &cfg]);
    assert_eq!(o.status.code(), Some(0));
    let g = scratch("extremal.txt", &stdout(&o));
    let out = stdout(&run(&["compute", &g, "--root", "5"]));
    let pi: u64 = out
        .lines()
        .find_map(|l| l.strip_prefix("value: "))
        .unwrap()
        .parse()
        .unwrap();
    let c: u64 = fs::read_to_string(&cfg)
        .unwrap()
        .split_whitespace()
        .map(|t| t.parse::<u64>().unwrap())
        .sum();
    assert!(c < pi, "configuration of size {c} with pi = {pi}");
}

#[test]
fn detect_and_audit() {
    let g = scratch("k4.txt", "n 4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let rich = scratch("k4_rich.txt", "1 2\n");
    let out = stdout(&run(&["detect", &g, &rich, "--root", "0"]));
    assert!(out.contains("pattern: ") && !out.contains("pattern: none"), "{out}");
    assert!(out.contains("1 -> 0\n"));

    let sparse = scratch("k4_sparse.txt", "0 1 1 0\n");
    let out = stdout(&run(&["detect", &g, &sparse]));
    assert!(out.contains("pattern: none"), "{out}");
    let o = run(&["audit", &g, &sparse]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    // audit refuses configurations that have a cheap solution
    assert_eq!(run(&["audit", &g, &rich]).status.code(), Some(35));
}

#[test]
fn verify_reports_are_reproducible() {
    let args = ["verify", "cheap", "--trials", "200", "--seed", "7"];
    let a = run(&args);
    let b = bin().args(args).env("PEBBLEKIT_THREADS", "3").output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    assert!(out.contains("seed: 7\n") && !out.contains("elapsed"));
    let c = run(&["verify", "cheap", "--trials", "200", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn exit_codes_are_distinct() {
    let missing = run(&["compute", "/nonexistent/graph.txt"]);
    assert_eq!(missing.status.code(), Some(3));
    let bad = scratch("bad.txt", "m 3\n");
    assert_eq!(run(&["compute", &bad]).status.code(), Some(10));
    let disc = scratch("disc.txt", "n 4\n0 1\n2 3\n");
    assert_eq!(run(&["compute", &disc]).status.code(), Some(12));
    let bowtie = scratch("bowtie_codes.txt", BOWTIE);
    assert_eq!(run(&["compute", &bowtie, "--k", "0"]).status.code(), Some(14));
    assert_eq!(
        run(&["compute", &bowtie, "--k", "3", "--budget-states", "3"]).status.code(),
        Some(20)
    );
    assert_eq!(run(&["partition", &bowtie]).status.code(), Some(30));
    let c5 = scratch("c5.txt", "n 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    assert_eq!(run(&["bound", &c5, "--method", "cliqueblock"]).status.code(), Some(31));
    let p5 = scratch("p5.txt", "n 5\n0 1\n1 2\n2 3\n3 4\n");
    assert_eq!(run(&["bound", &p5, "--method", "diam2"]).status.code(), Some(33));
    assert_eq!(run(&["compute"]).status.code(), Some(2));
}
