use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn rpkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rpkit")).args(args).output().expect("spawn rpkit")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| {
        let (k, v) = l.split_once(' ').unwrap_or((l, ""));
        (k == key).then_some(v)
    })
}

fn verdicts(text: &str) -> Vec<&str> {
    text.lines()
        .filter(|l| !l.starts_with("ELAPSED_MS") && !l.starts_with("COMMAND"))
        .collect()
}

#[test]
fn check_example1() {
    let o = rpkit(&["check", &fixture("example1.rel")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(field(&out, "TRANSITIVE"), Some("false"));
    assert_eq!(field(&out, "STRONGLY_ACYCLIC"), Some("true"));
    assert_eq!(field(&out, "WITNESS"), None);
}

#[test]
fn check_acyclic_but_not_strong() {
    let out = stdout(&rpkit(&["check", &fixture("acyclic_not_strong.rel")]));
    assert_eq!(field(&out, "ACYCLIC"), Some("true"));
    assert_eq!(field(&out, "STRONGLY_ACYCLIC"), Some("false"));
    assert_eq!(field(&out, "WITNESS"), Some("cycle: a b c ; strict: c>a"));
}

#[test]
fn malformed_line_reports_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.rel");
    std::fs::write(&path, "elements: a b\na >= b\na >=\n").unwrap();
    let o = rpkit(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn missing_file_and_bad_flags_exit_one() {
    assert_eq!(rpkit(&["check", "/nonexistent/x.rel"]).status.code(), Some(1));
    assert_eq!(rpkit(&["check"]).status.code(), Some(1));
    assert_eq!(rpkit(&["fuzz", "--kind", "lattice"]).status.code(), Some(1));
    assert_eq!(rpkit(&["--help"]).status.code(), Some(0));
}

#[test]
fn represent_level_orders_example1() {
    let o = rpkit(&["represent", &fixture("example1.rel")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("a = 2/1\nb = 1/1\nc = 0/1\n"), "{out}");
    assert_eq!(field(&out, "VERIFIED"), Some("true"));
}

#[test]
fn represent_refuses_with_witness() {
    let o = rpkit(&["represent", &fixture("acyclic_not_strong.rel")]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert_eq!(field(&out, "WITNESS"), Some("cycle: a b c ; strict: c>a"));
    assert!(field(&out, "REFUSED").is_some());
}

#[test]
fn represent_single_element() {
    let out = stdout(&rpkit(&["represent", &fixture("single.rel")]));
    assert!(out.contains("\na = 0/1\n"));
    assert_eq!(field(&out, "VERIFIED"), Some("true"));
}

#[test]
fn represent_series() {
    let o = rpkit(&["represent", "--method", "series", "--strat", "singletons", &fixture("chain.rel")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("a = 9/4\nb = 9/4\nc = 1/2\nd = 1/8\n"), "{out}");
    assert_eq!(field(&out, "VERIFIED"), Some("true"));

    let o = rpkit(&[
        "represent",
        "--method",
        "series",
        "--strat",
        &fixture("incomparable_ab.strat"),
        &fixture("incomparable.rel"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "VERIFIED"), Some("true"));
}

#[test]
fn represent_series_refusals() {
    // non-preorder input
    let o = rpkit(&["represent", "--method", "series", "--strat", "singletons", &fixture("example1.rel")]);
    assert_eq!(o.status.code(), Some(2));
    // a lone {a} never separates b > c
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.strat");
    std::fs::write(&path, "a\n").unwrap();
    let o = rpkit(&[
        "represent",
        "--method",
        "series",
        "--strat",
        path.to_str().unwrap(),
        &fixture("incomparable.rel"),
    ]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    // series without a stratification is a usage error
    assert_eq!(rpkit(&["represent", "--method", "series", &fixture("chain.rel")]).status.code(), Some(1));
}

#[test]
fn maximal_on_intransitive_menu() {
    let out = stdout(&rpkit(&["maximal", "--menu", "a,c", &fixture("choice.rel")]));
    assert_eq!(field(&out, "MAXIMAL"), Some("a c"));
    let o = rpkit(&["maximal", "--menu", "a,c", "--scalarize", &fixture("choice.rel")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn maximal_scalarized_chain() {
    let o = rpkit(&["maximal", "--scalarize", &fixture("chain.rel")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(field(&out, "MAXIMAL"), Some("a b"));
    assert_eq!(field(&out, "ARGMAX"), Some("a b"));
    assert_eq!(field(&out, "ARGMAX_EQUALS_MAXIMAL"), Some("true"));
}

#[test]
fn maximal_unknown_element() {
    assert_eq!(rpkit(&["maximal", "--menu", "a,z", &fixture("chain.rel")]).status.code(), Some(1));
}

#[test]
fn closure_writes_round_trippable_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("closed.rel");
    let o = rpkit(&["closure", &fixture("acyclic_not_strong.rel"), "--output", out_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(written.lines().filter(|l| l.contains(">=")).count(), 9);
    let again = stdout(&rpkit(&["check", out_path.to_str().unwrap()]));
    assert_eq!(field(&again, "COMPLETE"), Some("true"));
    assert_eq!(field(&again, "PREORDER"), Some("true"));
    // a constant utility represents X x X
    let rep = stdout(&rpkit(&["represent", out_path.to_str().unwrap()]));
    assert!(rep.contains("a = 0/1\nb = 0/1\nc = 0/1\n"));
}

#[test]
fn stratify_reports() {
    let out = stdout(&rpkit(&[
        "stratify",
        &fixture("incomparable.rel"),
        &fixture("incomparable_merged.strat"),
        "--disjointify",
    ]));
    assert_eq!(field(&out, "PSEUDO_STRATIFICATION"), Some("true"));
    assert_eq!(field(&out, "SEPARATING"), Some("true"));
    assert_eq!(field(&out, "DISJOINT_SEPARATING"), Some("true"));
}

#[test]
fn embed_identity_and_collapse() {
    let dir = tempfile::tempdir().unwrap();
    let id = dir.path().join("id.map");
    std::fs::write(&id, "a -> a\nb -> b\nc -> c\n").unwrap();
    let src = fixture("chain.rel");
    let out = stdout(&rpkit(&["embed", &fixture("example1.rel"), &fixture("example1.rel"), id.to_str().unwrap()]));
    assert_eq!(field(&out, "EMBEDDING"), Some("true"));
    assert_eq!(field(&out, "SOURCE_PREORDER"), Some("false"));

    // chain into a three-element chain, collapsing a and b
    let three = dir.path().join("three.rel");
    std::fs::write(&three, "elements: x y z\nx >= x\ny >= y\nz >= z\nx >= y\ny >= z\nx >= z\n").unwrap();
    let map = dir.path().join("m.map");
    std::fs::write(&map, "a -> x\nb -> x\nc -> y\nd -> z\n").unwrap();
    let out = stdout(&rpkit(&["embed", &src, three.to_str().unwrap(), map.to_str().unwrap()]));
    assert_eq!(field(&out, "EMBEDDING"), Some("true"));
    assert_eq!(field(&out, "MISMATCH"), None);

    std::fs::write(&map, "a -> x\nb -> y\nc -> y\nd -> z\n").unwrap();
    let out = stdout(&rpkit(&["embed", &src, three.to_str().unwrap(), map.to_str().unwrap()]));
    assert_eq!(field(&out, "EMBEDDING"), Some("false"));
    assert_eq!(field(&out, "MISMATCH"), Some("b a"));
}

#[test]
fn counterexample_confirmed() {
    let o = rpkit(&["counterexample"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "COUNTEREXAMPLE_CONFIRMED"), Some("true"));
}

#[test]
fn fuzz_runs() {
    let out = stdout(&rpkit(&["fuzz", "--exhaustive", "--n", "3"]));
    assert_eq!(field(&out, "EXISTENCE_AGREEMENT"), Some("512/512"));
    assert_eq!(field(&out, "SUITE_PASSED"), Some("true"));

    let o = rpkit(&["fuzz", "--n", "5", "--seeds", "100", "--kind", "preorder"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "PROP1").map(|s| s.starts_with("100 relations")), Some(true));

    assert_eq!(rpkit(&["fuzz", "--n", "9", "--exhaustive"]).status.code(), Some(1));
}

#[test]
fn reports_are_reproducible() {
    for args in [
        vec!["check".to_string(), fixture("acyclic_not_strong.rel")],
        vec!["fuzz".into(), "--n".into(), "6".into(), "--seeds".into(), "40".into()],
        vec!["represent".into(), "--method".into(), "series".into(), "--strat".into(), "singletons".into(), fixture("chain.rel")],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = stdout(&rpkit(&args));
        let b = stdout(&rpkit(&args));
        assert_eq!(verdicts(&a), verdicts(&b));
    }
}

#[test]
fn json_mirror() {
    let o = rpkit(&["--json", "check", &fixture("example1.rel")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["fields"]["TRANSITIVE"], "false");
    assert_eq!(v["exit_code"], 0);
    assert_eq!(v["input_digests"].as_array().map(Vec::len), Some(1));
}
