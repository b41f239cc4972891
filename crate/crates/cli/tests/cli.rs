//! The `problema` binary end to end.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_problema"));
    c.env_remove("PROBLEMA_FUEL");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    let v: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (v, out.status.code().expect("exit code"))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn examples() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples")
}

#[test]
fn doubling_equals_squaring_exactly_at_zero_and_two() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "p.pt",
        "universe U = 0..10; problem p = x ? 2*x == x*x;",
    );
    let (v, code) = json(&["solve", "--problem", s(&p)]);
    assert_eq!(code, 0);
    let oracle: Vec<String> = (0..=10i64)
        .filter(|n| 2 * n == n * n)
        .map(|n| n.to_string())
        .collect();
    let got: Vec<String> = v["result"]["problems"][0]["solutions"]["members"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m.as_str().unwrap().to_string())
        .collect();
    assert_eq!(got, oracle);
    assert_eq!(got, ["0", "2"]);
}

#[test]
fn malformed_transition_is_reported_at_its_line() {
    let dir = TempDir::new().unwrap();
    let tm = write(
        &dir,
        "bad.tm",
        "states: q\nalphabet: ab\nq _ -> q _ h\nq a -> q a\nq b -> q b h\n",
    );
    let out = run(&["tm", "run", "--machine", s(&tm), "--input", "ab"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.tm:4:1: syntax error"), "{err}");

    // the same inside a definition file, counted from the file's first line
    let pt = write(&dir, "m.pt", "universe U = 0..1;\nmachine m {\n  alphabet: ab\n  q _ -> q _ h\n  q a -> q\n  q b -> q b h\n}\n");
    let (v, code) = json(&["check", s(&pt)]);
    assert_eq!(code, 2);
    let e = &v["result"]["errors"][0];
    assert_eq!(
        (e["line"].as_u64(), e["column"].as_u64()),
        (Some(5), Some(3))
    );
    assert_eq!(e["kind"], "syntax error");
}

#[test]
fn duplicate_names_are_reported_with_both_places() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.pt", "universe U = 0..3;\nproblem p = x ? x > 1;\n");
    let b = write(
        &dir,
        "b.pt",
        "problem q = x ? x < 1;\nproblem p = x ? x = 0;\n",
    );
    let out = run(&["check", s(&a), s(&b)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("b.pt:2:9: duplicate name: problem `p` is already defined at"),
        "{err}"
    );
    assert!(err.contains("a.pt:2:9"), "{err}");
    // the same name in another kind is fine
    let c = write(&dir, "c.pt", "universe p = 0..3; problem p = x ? x > 1;");
    assert_eq!(run(&["check", s(&c)]).status.code(), Some(0));
}

#[test]
fn dangling_references_name_the_missing_object() {
    let dir = TempDir::new().unwrap();
    let p = write(
        &dir,
        "p.pt",
        "universe U = 0..3;\nproblem q = p ∧ ¬r;\nproblem r = x ? x > 1;\n",
    );
    let (v, code) = json(&["check", s(&p)]);
    assert_eq!(code, 2);
    let msg = v["result"]["errors"][0]["message"].as_str().unwrap();
    assert!(msg.contains("unknown problem `p`"), "{msg}");
}

#[test]
fn algebra_suite_checks_every_triple_of_a_three_member_universe() {
    let (v, code) = json(&["verify", "algebra", "--size", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    let checks = v["result"]["suites"][0]["checks"].as_array().unwrap();
    let triple_laws: Vec<&Value> = checks
        .iter()
        .filter(|c| {
            let n = c["name"].as_str().unwrap();
            n.contains("associative") || n.contains("distributes")
        })
        .collect();
    assert!(triple_laws.len() >= 2);
    // 2^3 problems, so 8^3 triples
    assert!(triple_laws
        .iter()
        .all(|c| c["cases"] == 512 && c["passed"] == true));
}

#[test]
fn resolver_suite_passes() {
    let (v, code) = json(&["verify", "resolvers"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["passed"], true);
    assert_eq!(v["result"]["suites"][0]["size"], 3);
}

#[test]
fn wrong_translator_is_caught_with_a_witness() {
    let (v, code) = json(&["verify", "analogies", "--inject-fault", "wrong-translator"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "violation");
    let failures = v["result"]["failures"].as_array().unwrap();
    assert!(!failures.is_empty());
    assert!(failures.iter().all(|f| f["counterexample"].is_string()));
}

#[test]
fn identical_invocations_give_identical_json() {
    let topo = examples().join("topology.pt");
    for args in [
        vec![
            "classify",
            "--problem",
            s(&topo),
            "--fuel",
            "2000",
            "--json",
        ],
        vec!["verify", "trials", "--json"],
        vec![
            "meta",
            "--problem",
            s(&examples().join("basics.pt")),
            "--family",
            "F",
            "--family",
            "G",
            "--json",
        ],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn exit_code_three_exactly_when_a_flag_is_unknown() {
    let topo = examples().join("topology.pt");
    let basics = examples().join("basics.pt");
    for (file, name) in [
        (&topo, "is_ab"),
        (&topo, "never"),
        (&topo, "halts"),
        (&basics, "p"),
        (&basics, "odd_or_zero"),
    ] {
        let (v, code) = json(&[
            "classify",
            "--problem",
            s(file),
            "--name",
            name,
            "--fuel",
            "5000",
        ]);
        let flags = &v["result"]["classifications"][0]["report"]["flags"];
        let unknown = ["solvable", "finite", "expressible", "resolvable"]
            .iter()
            .any(|f| flags[f] == "unknown");
        assert_eq!(code == 3, unknown, "{name}: {flags}");
        assert_eq!(v["exit_code"], code);
        assert!(code == 0 || code == 3, "{name}: {code}");
    }
}

#[test]
fn classify_matches_the_library() {
    let basics = examples().join("basics.pt");
    let (v, code) = json(&[
        "classify",
        "--problem",
        s(&basics),
        "--name",
        "p",
        "--fuel",
        "10000",
    ]);
    assert_eq!(code, 0);
    let report = &v["result"]["classifications"][0]["report"];
    assert_eq!(report["place"], "finite_solvable");
    assert_eq!(report["fuel"], 10000);
    let stamps = report["stamps"].as_array().unwrap();
    assert_eq!(stamps.len(), 4);
    assert!(stamps.iter().all(|s| s["fuel"] == 10000));
}

#[test]
fn machines_run_encode_and_decode() {
    let id = examples().join("identity.tm");
    let out = run(&["tm", "run", "--machine", s(&id), "--input", "xyz"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(
        text.contains("outcome: halted") && text.contains("result: xyz"),
        "{text}"
    );

    let (enc, code) = json(&["tm", "encode", "--machine", s(&id)]);
    assert_eq!(code, 0);
    let program = enc["result"]["program"].as_str().unwrap().to_string();
    assert_eq!(program, "1|0|_|xyz;0|_|h;0|x|h;0|y|h;0|z|h;");
    let (dec, code) = json(&["tm", "decode", "--program", &program]);
    assert_eq!(code, 0);
    assert_eq!(dec["result"]["states"], 1);
    assert!(dec["result"]["table"]
        .as_str()
        .unwrap()
        .contains("alphabet: xyz"));

    let dir = TempDir::new().unwrap();
    let defs = write(&dir, "m.pt", "machine loop = never(\"ab\");");
    let (v, code) = json(&[
        "tm",
        "run",
        "--defs",
        s(&defs),
        "--machine",
        "loop",
        "--input",
        "ab",
        "--fuel",
        "50",
    ]);
    assert_eq!(code, 3);
    assert_eq!(v["result"]["run"]["outcome"], "out_of_fuel");
    assert_eq!(v["result"]["run"]["steps"], 50);
}

#[test]
fn fuel_comes_from_the_environment_unless_given() {
    let out = bin()
        .args(["verify", "trials", "--json"])
        .env("PROBLEMA_FUEL", "777")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["fuel"], 777);
    let out = bin()
        .args(["verify", "trials", "--json", "--fuel", "55"])
        .env("PROBLEMA_FUEL", "777")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["fuel"], 55);
}

#[test]
fn resolver_ranges_chains_and_hierarchy() {
    let defs = examples().join("resolvers.pt");
    let (v, code) = json(&[
        "resolver",
        "range",
        "--defs",
        s(&defs),
        "--resolver",
        "adapt",
        "--universe",
        "D",
    ]);
    assert_eq!(code, 0);
    // bound by intersection the adapter outputs S ∩ Σ: it finds solutions
    // when Σ meets {a, b}, and finds all of them when Σ ⊆ {a, b}
    let masks = |v: &Value, key: &str| -> Vec<u64> {
        v["result"][key]["masks"]
            .as_array()
            .unwrap()
            .iter()
            .map(|m| m.as_u64().unwrap())
            .collect()
    };
    assert_eq!(
        masks(&v, "range"),
        (0..8u64).filter(|m| m & 0b011 != 0).collect::<Vec<_>>()
    );
    let (v, code) = json(&[
        "resolver",
        "power",
        "--defs",
        s(&defs),
        "--resolver",
        "adapt",
        "--universe",
        "D",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        masks(&v, "power"),
        (0..8u64).filter(|m| m & 0b100 == 0).collect::<Vec<_>>()
    );

    let (v, code) = json(&["resolver", "chain", "--defs", s(&defs), "--chain", "grow"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["holds"], true);
    assert_eq!(v["result"]["links"].as_array().unwrap().len(), 4);

    let (v, code) = json(&["resolver", "hierarchy", "--universe", "{a, b}"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["holds"], true);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "algebra", "--size", "99"]).status.code(),
        Some(2)
    );
    let (v, code) = json(&["solve", "--problem", "/nonexistent/p.pt"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "usage");
}

#[test]
fn json_reports_round_trip_through_the_schema() {
    use problema_cli::report::{Report, SCHEMA};
    let basics = examples().join("basics.pt");
    for args in [
        vec!["check", s(&basics), "--json"],
        vec!["solve", "--problem", s(&basics), "--json"],
        vec!["verify", "bijection", "--size", "100", "--json"],
        vec!["solve", "--problem", "/nonexistent.pt", "--json"],
    ] {
        let out = run(&args);
        let text = String::from_utf8(out.stdout).unwrap();
        let report: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(report.schema, SCHEMA);
        assert_eq!(i32::from(report.exit_code), out.status.code().unwrap());
        assert_eq!(report.json() + "\n", text);
    }
}
