use std::path::PathBuf;
use std::process::Command;

use tempfile::TempDir;
use traag::cli::{run, EXIT_NEGATIVE, EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_USAGE};

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let f = Fixture { dir: TempDir::new().unwrap() };
        f.write("klein.tg", "# Klein bottle\nvertices a b\nedge a > b\n");
        f.write("p4.tg", "vertices a b c d\nedge a - b\nedge b - c\nedge c - d\n");
        f.write("free2.tg", "vertices a b\n");
        f.write("ax.tg", "vertices a x\nedge a > x\n");
        f.write("bad.tg", "vertices a\nedge a - a\n");
        f.write("outstar.tg", "vertices w a b\nedge w > a\nedge w - b\n");
        f
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).display().to_string()
    }

    fn run(&self, args: &[&str]) -> (i32, String, String) {
        let mut argv = vec!["traag".to_string()];
        argv.extend(args.iter().map(|a| a.to_string()));
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }
}

#[test]
fn eq_exit_codes() {
    let f = Fixture::new();
    let k = f.path("klein.tg");
    assert_eq!(f.run(&["eq", "-f", &k, "-w1", "a b a", "-w2", "b"]).0, EXIT_OK);
    assert_eq!(f.run(&["eq", "-f", &k, "-w1", "a b", "-w2", "b a"]).0, EXIT_NEGATIVE);
    let (code, out, _) = f.run(&["eq", "-f", &k, "--w1", "a b", "--w2", "b a^-1", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["equal"], true);
}

#[test]
fn nf_prints_identity_as_one() {
    let f = Fixture::new();
    let (code, out, _) = f.run(&["nf", "-f", &f.path("free2.tg"), "-w", "a a^-1"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "1\n"));
    let (_, out, _) = f.run(&["nf", "-f", &f.path("klein.tg"), "-w", "b a b"]);
    assert_eq!(out, "a^-1 b^2\n");
    let wf = f.write("w.txt", "b a b\n");
    let (_, out, _) = f.run(&["nf", "-f", &f.path("klein.tg"), "--word-file", wf.to_str().unwrap()]);
    assert_eq!(out, "a^-1 b^2\n");
}

#[test]
fn analyze_json_schema() {
    let f = Fixture::new();
    let (code, out, _) = f.run(&["analyze", "-f", &f.path("p4.tg"), "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["lerf"], false);
    assert_eq!(v["coherent"], true);
    assert_eq!(v["subgroup_membership"], "decidable");
    assert_eq!(v["rational_membership"], "undecidable");
    assert_eq!(v["graph_summary"]["vertices"], 4);
    assert_eq!(v["transitive_forest"]["witness"]["shape"], "p4");
    assert!(v["citations"]["lerf"].is_string());
    let (_, text, _) = f.run(&["analyze", "-f", &f.path("p4.tg")]);
    assert!(text.contains("lerf") && text.contains("no"));
}

#[test]
fn analyze_directory_collects_errors() {
    let f = Fixture::new();
    let (code, out, _) = f.run(&["analyze", "-f", &f.dir.path().display().to_string(), "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["summary"]["total"], 6);
    assert_eq!(v["summary"]["errors"], 1);
    let names: Vec<&str> = v["entries"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn parse_and_precondition_errors() {
    let f = Fixture::new();
    assert_eq!(f.run(&["analyze", "-f", &f.path("bad.tg")]).0, EXIT_PARSE);
    assert_eq!(f.run(&["nf", "-f", &f.path("klein.tg"), "-w", "a^0"]).0, EXIT_PARSE);
    assert_eq!(f.run(&["nf", "-f", &f.path("klein.tg"), "-w", "z"]).0, EXIT_PARSE);
    assert_eq!(f.run(&["nf", "-f", &f.path("missing.tg"), "-w", "a"]).0, EXIT_PARSE);
    assert_eq!(f.run(&["subgroup", "-f", &f.path("p4.tg"), "-x", "a"]).0, EXIT_PRECONDITION);
    assert_eq!(f.run(&["enum", "-n", "9", "--out", &f.path("out")]).0, EXIT_PRECONDITION);
    assert_eq!(f.run(&["bogus"]).0, EXIT_USAGE);
    assert_eq!(f.run(&["nf", "-f", &f.path("klein.tg")]).0, EXIT_USAGE);
    assert_eq!(f.run(&["--help"]).0, EXIT_OK);
}

#[test]
fn subgroup_and_rewrite() {
    let f = Fixture::new();
    let ax = f.path("ax.tg");
    let (code, out, _) = f.run(&["subgroup", "-f", &ax, "-x", "x", "--verify"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("vertices a x_sq\nedge a - x_sq\n"));
    assert!(out.contains("x_sq = x^2"));
    assert!(!out.contains("FAIL"));
    let (_, out, _) = f.run(&["subgroup", "-f", &ax, "-x", "x", "--verify", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["conjugation_table"]["a"], "inverted");
    assert_eq!(v["verification"]["all_pass"], true);

    let (code, out, _) = f.run(&["rewrite", "-f", &ax, "-x", "x", "-w", "x a x"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "a^-1 x_sq\n"));
    assert_eq!(f.run(&["rewrite", "-f", &ax, "-x", "x", "-w", "a x"]).0, EXIT_NEGATIVE);
}

#[test]
fn inr_and_oracle() {
    let f = Fixture::new();
    let (code, out, _) = f.run(&["inr", "-f", &f.path("klein.tg")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("cone tip b [a >]"));
    assert!(out.contains("leaf a"));
    assert_eq!(f.run(&["inr", "-f", &f.path("outstar.tg")]).0, EXIT_NEGATIVE);
    let (_, out, _) = f.run(&["inr", "-f", &f.path("klein.tg"), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["decomposition"]["cone"]["tip"], "b");

    let (code, out, _) = f.run(&["oracle", "-f", &f.path("klein.tg"), "-w", "a b", "-r", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "a b\nb a^-1\n");
}

#[test]
fn enum_writes_graph_files() {
    let f = Fixture::new();
    let out = f.path("enum3");
    let (code, _, _) = f.run(&["enum", "-n", "3", "--out", &out]);
    assert_eq!(code, EXIT_OK);
    let files = std::fs::read_dir(&out).unwrap().count();
    assert_eq!(files, 64);
    let sample = f.path("sample");
    f.run(&["enum", "-n", "6", "--sample", "5", "--seed", "7", "--out", &sample]);
    let a = std::fs::read_to_string(PathBuf::from(&sample).join("g6_0.tg")).unwrap();
    let sample2 = f.path("sample2");
    f.run(&["enum", "-n", "6", "--sample", "5", "--seed", "7", "--out", &sample2]);
    let b = std::fs::read_to_string(PathBuf::from(&sample2).join("g6_0.tg")).unwrap();
    assert_eq!(a, b);
    assert!(traag::parse_graph(&a).is_ok());
}

#[test]
fn binary_is_deterministic_and_uses_exit_codes() {
    let f = Fixture::new();
    let bin = env!("CARGO_BIN_EXE_traag");
    let run = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let a = run(&["analyze", "-f", &f.path("p4.tg"), "--json"]);
    let b = run(&["analyze", "-f", &f.path("p4.tg"), "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let ne = run(&["eq", "-f", &f.path("free2.tg"), "-w1", "a b", "-w2", "b a"]);
    assert_eq!(ne.status.code(), Some(10));
    let usage = run(&["eq"]);
    assert_eq!(usage.status.code(), Some(1));
    let capped = Command::new(bin)
        .args(["oracle", "-f", &f.path("p4.tg"), "-w", "a b c d a b c d", "-r", "8"])
        .env("TRAAG_ORACLE_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
}
