mod common;

use std::fs;
use std::path::Path;
use std::process::Command;

use artin_center::analyzer::ReportView;
use artin_center::cli::{
    run, sha256_hex, BatchEntry, CosetResult, DihedralResult, ReduceResult, ReportEnvelope, RetractResult,
    SplitResult, WordResult, EXIT_ERROR, EXIT_OK, EXIT_UNKNOWN,
};
use common::fixture_path;
use serde::de::DeserializeOwned;

const FIXTURES: [&str; 15] = [
    "a3",
    "cone_recursion",
    "edge3",
    "edge4",
    "edge_inf",
    "h3",
    "nested_unknown",
    "raag_mixed",
    "raag_path",
    "rst",
    "single",
    "square",
    "star",
    "triangle333",
    "unknown_clique",
];

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("artin-center").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn fx(name: &str) -> String {
    fixture_path(name).display().to_string()
}

/// Parses with every unknown field rejected.
fn envelope<T: DeserializeOwned>(o: &Output, command: &str, graph: &str) -> T {
    let env: ReportEnvelope<T> = serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}\n{}", o.stdout));
    assert_eq!(env.command, command);
    assert_eq!(env.version, env!("CARGO_PKG_VERSION"));
    let bytes = fs::read(fixture_path(graph)).unwrap();
    assert_eq!(env.input_digest, sha256_hex(&bytes));
    env.result
}

#[test]
fn analyze_every_fixture() {
    for name in FIXTURES {
        let json = cli(&["--json", "analyze", &fx(name)]);
        let view: ReportView = envelope(&json, "analyze", name);
        let expected = if name.contains("unknown") { EXIT_UNKNOWN } else { EXIT_OK };
        assert_eq!(json.code, expected, "{name}");
        assert_eq!(view.established, expected == EXIT_OK);

        // Text and JSON agree on the verdict, rank and factor statuses.
        let text = cli(&["analyze", &fx(name)]);
        assert_eq!(text.code, json.code);
        let last = text.stdout.lines().last().unwrap();
        if view.established {
            assert!(last.starts_with(&format!("established: yes, Z(A) = Z^{}", view.center_rank)), "{last}");
        } else {
            assert!(last.starts_with("established: no"), "{last}");
            assert!(last.ends_with(&format!("Z^{}", view.center_rank)));
        }
        let statuses: Vec<&str> = text
            .stdout
            .lines()
            .filter(|l| l.starts_with("  factor "))
            .map(|l| l.split(": ").nth(1).unwrap().split([' ', ',']).next().unwrap())
            .collect();
        let json_statuses: Vec<&str> = view.factors.iter().map(|f| f.status.as_str()).collect();
        assert_eq!(statuses, json_statuses, "{name}");
        for g in &view.center_generators {
            assert!(text.stdout.contains(g.as_str()));
        }
    }
}

#[test]
fn analyze_examples() {
    let o = cli(&["--json", "analyze", &fx("single")]);
    let v: ReportView = envelope(&o, "analyze", "single");
    assert!(v.established);
    assert_eq!(v.center_rank, 1);

    let o = cli(&["--json", "analyze", &fx("triangle333")]);
    let v: ReportView = envelope(&o, "analyze", "triangle333");
    assert!(v.established);
    assert_eq!(v.center_rank, 0);
    assert_eq!(v.factors[0].status, "ESTABLISHED_TRIVIAL");

    let o = cli(&["--json", "analyze", &fx("unknown_clique")]);
    assert_eq!(o.code, EXIT_UNKNOWN);
    let v: ReportView = envelope(&o, "analyze", "unknown_clique");
    assert_eq!(v.factors[0].status, "UNKNOWN");
}

#[test]
fn retract_surfaces_the_hand_trace() {
    let o = cli(&["--json", "retract", &fx("rst"), "--subset", "s,t", "--word", "r s r^-1", "--trace"]);
    assert_eq!(o.code, EXIT_OK);
    let r: RetractResult = envelope(&o, "retract", "rst");
    assert_eq!(r.output, "s");
    let trace = r.trace.unwrap();
    let ts: Vec<&str> = trace.iter().map(|s| s.t.as_str()).collect();
    assert_eq!(ts, ["r", "s", "r"]);
    let taus: Vec<Option<&str>> = trace.iter().map(|s| s.tau.as_deref()).collect();
    assert_eq!(taus, [None, Some("s"), None]);

    let o = cli(&["--json", "retract", &fx("rst"), "--subset", "s t", "--word", "r"]);
    let r: RetractResult = envelope(&o, "retract", "rst");
    assert_eq!(r.output, "1");
    assert!(r.trace.is_none());

    let text = cli(&["retract", &fx("rst"), "--subset", "s,t", "--word", "r s r^-1", "--trace"]);
    let lines: Vec<&str> = text.stdout.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].starts_with("i"));
    assert!(lines[4].ends_with("r s r^-1 -> s"));
}

#[test]
fn reduce_examples() {
    for (word, len, reduced) in [("s s", 0, "1"), ("s t s", 3, "s t s"), ("1", 0, "1"), ("t s t", 3, "s t s")] {
        let o = cli(&["--json", "reduce", &fx("edge3"), "--word", word]);
        assert_eq!(o.code, EXIT_OK);
        let r: ReduceResult = envelope(&o, "reduce", "edge3");
        assert_eq!((r.length, r.reduced_word.as_str()), (len, reduced), "{word}");
        let text = cli(&["reduce", &fx("edge3"), "--word", word]);
        assert!(text.stdout.contains(&format!("length: {len}\n")));
        assert!(text.stdout.contains(&format!("reduced word: {reduced}\n")));
    }
    let o = cli(&["--json", "reduce", &fx("edge3"), "--word", "s t"]);
    let r: ReduceResult = envelope(&o, "reduce", "edge3");
    assert_eq!((r.left_descents, r.right_descents), (vec!["s".to_string()], vec!["t".to_string()]));
}

#[test]
fn coset_example() {
    let o = cli(&["--json", "coset", &fx("edge3"), "--subset", "s", "--word", "s t"]);
    let r: CosetResult = envelope(&o, "coset", "edge3");
    assert_eq!((r.v.as_str(), r.w.as_str()), ("s", "t"));
    let o = cli(&["--json", "coset", &fx("edge3"), "--subset", "s", "--word", "t s"]);
    let r: CosetResult = envelope(&o, "coset", "edge3");
    assert_eq!((r.v.as_str(), r.w.as_str(), r.w_length), ("1", "t s", 2));
    let text = cli(&["coset", &fx("edge3"), "--subset", "s", "--word", "s t"]);
    assert_eq!(text.stdout, "X = {s}\nv = s (length 1)\nw = t (length 1)\n");
}

#[test]
fn split_example() {
    let o = cli(&["--json", "split", &fx("square"), "b", "d"]);
    assert_eq!(o.code, EXIT_OK);
    let r: SplitResult = envelope(&o, "split", "square");
    assert_eq!(r.without_x, ["a", "c", "d"]);
    assert_eq!(r.without_both, ["a", "c"]);
    assert_eq!(r.without_y, ["a", "b", "c"]);
    let text = cli(&["split", &fx("square"), "b", "d"]);
    assert_eq!(text.stdout.trim_end(), r.display);

    let finite = cli(&["split", &fx("square"), "a", "b"]);
    assert_eq!(finite.code, EXIT_ERROR);
    assert!(finite.stderr.starts_with("error:"));
}

#[test]
fn word_info() {
    let o = cli(&["--json", "word", &fx("edge3"), "--word", "s t s t^-1 s^-1 t^-1"]);
    let r: WordResult = envelope(&o, "word", "edge3");
    assert!(r.pure);
    assert!(!r.positive);
    assert_eq!(r.coxeter_length, 0);
    assert_eq!(r.exponent_sums.get("s"), Some(&1));
    assert!(r.abelianization.is_empty());

    let o = cli(&["--json", "word", &fx("edge4"), "--word", "s t s"]);
    let r: WordResult = envelope(&o, "word", "edge4");
    assert_eq!(r.abelianization.get("{s}"), Some(&2));
    assert_eq!(r.abelianization.get("{t}"), Some(&1));
    assert_eq!(r.support, ["s", "t"]);
}

#[test]
fn dihedral_commands() {
    let o = cli(&["--json", "dihedral", &fx("edge3"), "s", "t", "--word", "s t s", "--equal", "t s t"]);
    let r: DihedralResult = envelope(&o, "dihedral", "edge3");
    assert_eq!(r.equal, Some(true));
    let nf = r.normal_form.unwrap();
    assert_eq!((nf.delta_power, nf.factors.len()), (1, 0));
    assert_eq!(r.center_generator.as_deref(), Some("s t s t s t"));

    let o = cli(&["--json", "dihedral", &fx("edge_inf"), "s", "t", "--word", "s t t^-1 s", "--equal", "s^2"]);
    let r: DihedralResult = envelope(&o, "dihedral", "edge_inf");
    assert!(r.normal_form.is_none());
    assert_eq!(r.reduced.as_deref(), Some("s^2"));
    assert_eq!(r.equal, Some(true));
    assert!(r.center_generator.is_none());

    let text = cli(&["dihedral", &fx("edge4"), "s", "t", "--word", "s t s t"]);
    assert!(text.stdout.contains("normal form: D^1\n"), "{}", text.stdout);
}

#[test]
fn input_errors_exit_one() {
    let missing = cli(&["analyze", "/nonexistent/graph.graph"]);
    assert_eq!(missing.code, EXIT_ERROR);
    assert!(missing.stdout.is_empty());
    assert_eq!(cli(&["reduce", &fx("edge3"), "--word", "s q"]).code, EXIT_ERROR);
    assert_eq!(cli(&["retract", &fx("rst"), "--subset", "s,z", "--word", "s"]).code, EXIT_ERROR);
    assert_eq!(cli(&["analyze", &fx("a3"), "--max-vertices", "2"]).code, EXIT_ERROR);
    assert_eq!(cli(&["frobnicate"]).code, EXIT_ERROR);
    assert_eq!(cli(&["dihedral", &fx("edge3"), "s", "s", "--word", "s"]).code, EXIT_ERROR);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.graph");
    fs::write(&bad, "vertices: a b\nedge a b 1\n").unwrap();
    let o = cli(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_ERROR);
    assert!(o.stderr.contains("bad.graph"));
}

fn copy_fixtures(dir: &Path, names: &[&str]) {
    for name in names {
        fs::copy(fixture_path(name), dir.join(format!("{name}.graph"))).unwrap();
    }
}

#[test]
fn batch_mode_writes_one_report_per_file() {
    let input = tempfile::tempdir().unwrap();
    let output = tempfile::tempdir().unwrap();
    copy_fixtures(input.path(), &["a3", "edge3", "triangle333"]);
    let o = cli(&[
        "--json",
        "analyze",
        "--dir",
        input.path().to_str().unwrap(),
        "--out",
        output.path().to_str().unwrap(),
        "--jobs",
        "2",
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let entries: Vec<BatchEntry> = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(entries.len(), 3);
    for e in &entries {
        assert_eq!(e.status, "ESTABLISHED");
        let path = output.path().join(e.report.as_deref().unwrap());
        let text = fs::read_to_string(path).unwrap();
        let env: ReportEnvelope<ReportView> = serde_json::from_str(&text).unwrap();
        assert!(env.result.established);
    }

    copy_fixtures(input.path(), &["unknown_clique"]);
    let o = cli(&["analyze", "--dir", input.path().to_str().unwrap()]);
    assert_eq!(o.code, EXIT_UNKNOWN);
    assert_eq!(o.stdout.lines().count(), 4);
    assert!(input.path().join("unknown_clique.report.txt").exists());

    fs::write(input.path().join("broken.graph"), "edge a b 3\n").unwrap();
    let o = cli(&["analyze", "--dir", input.path().to_str().unwrap()]);
    assert_eq!(o.code, EXIT_ERROR);
    assert!(o.stdout.lines().any(|l| l.starts_with("broken.graph\tERROR")));
    assert!(!input.path().join("broken.report.txt").exists());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_artin-center");
    let code = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(code(&["analyze", &fx("a3")]), Some(EXIT_OK));
    assert_eq!(code(&["analyze", &fx("unknown_clique")]), Some(EXIT_UNKNOWN));
    assert_eq!(code(&["analyze", "/nonexistent.graph"]), Some(EXIT_ERROR));
    let out = Command::new(bin).args(["--json", "reduce", &fx("edge3"), "--word", "s t s"]).output().unwrap();
    let env: ReportEnvelope<ReduceResult> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(env.result.length, 3);
}

#[test]
fn json_is_stable_across_runs() {
    let args = ["--json", "analyze", &fx("cone_recursion")];
    assert_eq!(cli(&args).stdout, cli(&args).stdout);
}
