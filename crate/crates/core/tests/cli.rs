use ample::report::{run, Outcome};

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn ample(args: &[&str]) -> Outcome {
    run(std::iter::once("ample").chain(args.iter().copied()))
}

fn machine(out: &Outcome, key: &str) -> Vec<String> {
    let prefix = format!("{key}=");
    out.stdout.lines().filter_map(|l| l.strip_prefix(&prefix)).map(String::from).collect()
}

fn value(out: &Outcome, key: &str) -> String {
    let vs = machine(out, key);
    assert_eq!(vs.len(), 1, "key {key} in\n{}", out.stdout);
    vs[0].clone()
}

#[test]
fn pair_groupoid_over_q() {
    let out = ample(&["groupoid", &fixture("pair.gpd"), "--ring", "Q", "--verify"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("decomposition: M_2(Q)"));
    assert!(out.stdout.contains("16/16 basis pairs verified"));
    for p in ["noetherian", "artinian", "semisimple"] {
        assert!(out.stdout.contains(&format!("{p}: yes [")), "{p}");
    }
}

#[test]
fn pair_groupoid_machine_keys() {
    let out = ample(&["groupoid", &fixture("pair.gpd"), "--ring", "Q", "--verify", "--format", "machine"]);
    assert_eq!(out.code, 0);
    assert_eq!(value(&out, "shape"), "M_2(Q)");
    assert_eq!(value(&out, "semisimple"), "true");
    assert_eq!(value(&out, "semisimple_cite"), "Maschke");
    assert_eq!(value(&out, "artinian_cite"), "Connell");
    assert_eq!(value(&out, "verified_pairs"), "16/16");
    assert_eq!(value(&out, "oracle_agreement"), "true");
    assert!(machine(&out, "witness").is_empty());
}

#[test]
fn every_verdict_carries_a_citation() {
    let cases = [
        ("groupoid", "s3.gpd", "Z/6"),
        ("groupoid", "pair_c2.gpd", "GF(2)"),
        ("graph", "rose2.quiv", "Z"),
        ("graph", "lasso.quiv", "Q"),
        ("isg", "i2.isg", "GF(3)"),
    ];
    for (cmd, file, ring) in cases {
        let out = ample(&[cmd, &fixture(file), "--ring", ring, "--format", "machine"]);
        assert_eq!(out.code, 0, "{file}: {}", out.stderr);
        for p in ["noetherian", "artinian", "semisimple"] {
            assert!(!value(&out, &format!("{p}_cite")).is_empty(), "{file} {p}");
            assert!(!machine(&out, &format!("{p}_reason")).is_empty(), "{file} {p}");
        }
        let text = ample(&[cmd, &fixture(file), "--ring", ring]);
        for p in ["noetherian", "artinian", "semisimple"] {
            let line = text.stdout.lines().find(|l| l.starts_with(&format!("{p}: "))).unwrap();
            assert!(line.contains(" ["), "{line}");
        }
    }
}

#[test]
fn text_and_machine_agree_on_facts() {
    let args = ["isg", &fixture("i2.isg"), "--ring", "GF(2)", "--verify"];
    let text = ample(&args);
    let mut margs = args.to_vec();
    margs.extend(["--format", "machine"]);
    let m = ample(&margs);
    for key in ["noetherian", "artinian", "semisimple"] {
        let word = if value(&m, key) == "true" { "yes" } else { "no" };
        assert!(text.stdout.contains(&format!("{key}: {word}")));
        for reason in machine(&m, &format!("{key}_reason")) {
            assert!(text.stdout.contains(&reason), "{reason}");
        }
    }
    for f in machine(&m, "finding") {
        assert!(text.stdout.contains(&f), "{f}");
    }
    for c in machine(&m, "check") {
        assert!(text.stdout.contains(&c), "{c}");
    }
    assert!(text.stdout.contains(&value(&m, "radical_witness")));
}

#[test]
fn rose_fails_ne() {
    let out = ample(&["graph", &fixture("rose2.quiv"), "--ring", "Z"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("condition (NE) fails (witness: vertex v, exit edge f"), "{}", out.stdout);
    assert!(out.stdout.contains("noetherian: no"));
    let m = ample(&["graph", &fixture("rose2.quiv"), "--ring", "Z", "--verify", "--format", "machine"]);
    assert_eq!(value(&m, "shape"), "none");
    assert_eq!(value(&m, "verified_pairs"), "skipped");
    assert_eq!(value(&m, "oracle_agreement"), "n/a");
}

#[test]
fn a3_graph_shape() {
    let out = ample(&["graph", &fixture("a3.quiv"), "--ring", "Q", "--verify", "--format", "machine"]);
    assert_eq!(out.code, 0);
    assert_eq!(value(&out, "shape"), "M_3(Q)");
    assert_eq!(value(&out, "semisimple"), "true");
    assert!(machine(&out, "check").iter().any(|c| c == "generator images generate the blocks: 1/1"));
}

#[test]
fn lasso_over_z_is_laurent() {
    let out = ample(&["graph", &fixture("lasso.quiv"), "--ring", "Z", "--verify", "--format", "machine"]);
    assert_eq!(out.code, 0);
    assert_eq!(value(&out, "shape"), "M_2(Laurent(Z))");
    assert_eq!((value(&out, "noetherian").as_str(), value(&out, "artinian").as_str()), ("true", "false"));
}

#[test]
fn i2_over_gf2_has_radical() {
    let out = ample(&["isg", &fixture("i2.isg"), "--ring", "GF(2)", "--verify"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("semisimple: no [Maschke]"));
    assert!(out.stdout.contains("char 2 divides |C_2| = 2"));
    assert!(out.stdout.contains("radical witness found"));
    assert!(out.stdout.contains("49/49 basis pairs verified"));
    assert!(out.stdout.contains("decomposition: GF(2) x M_2(GF(2)) x GF(2)[C_2]"));
}

#[test]
fn phi_of_an_element() {
    let out =
        ample(&["groupoid", &fixture("pair.gpd"), "--ring", "Q", "--phi", "2*x0>x1 + id_x0", "--format", "machine"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(value(&out, "phi"), "id_x0 + (2)*x0>x1 |-> [1](1,1): 1; [1](2,1): 2");
    let bad = ample(&["groupoid", &fixture("pair.gpd"), "--ring", "Q", "--phi", "3*nope"]);
    assert_eq!(bad.code, 1);
}

#[test]
fn argument_errors_exit_1() {
    assert_eq!(ample(&["groupoid", &fixture("pair.gpd")]).code, 1);
    assert_eq!(ample(&["groupoid", &fixture("pair.gpd"), "--ring", "Q", "--bogus"]).code, 1);
    assert_eq!(ample(&["frobnicate", "x", "--ring", "Q"]).code, 1);
    assert_eq!(ample(&["groupoid", &fixture("pair.gpd"), "--ring", "Q", "--format", "json"]).code, 1);
    let missing = ample(&["graph", &fixture("absent.quiv"), "--ring", "Q"]);
    assert_eq!(missing.code, 1);
    assert!(missing.stderr.contains("cannot read"));
    assert!(missing.stdout.is_empty());
}

#[test]
fn help_and_version_exit_0() {
    let h = ample(&["--help"]);
    assert_eq!(h.code, 0);
    assert!(h.stdout.contains("groupoid") && h.stdout.contains("isg"));
    assert_eq!(ample(&["--version"]).code, 0);
    assert_eq!(ample(&["graph", "--help"]).code, 0);
}

#[test]
fn input_errors_exit_1_with_diagnostics() {
    let cases: [(&[&str], &str); 6] = [
        (&["groupoid", "bad_assoc.gpd", "Q"], "associativity: "),
        (&["groupoid", "missing_inverse.gpd", "Q"], "inverse law: no inverse declared for x0>x1"),
        (&["isg", "left_zero.isg", "Q"], "a has 2 pseudo-inverses (a, b)"),
        (&["isg", "bad_assoc.isg", "Q"], "not associative"),
        (&["graph", "dangling.quiv", "Q"], "undeclared vertex \"w\""),
        (&["groupoid", "pair.gpd", "GF(4)"], "invalid ring descriptor"),
    ];
    for (args, diagnostic) in cases {
        let out = ample(&[args[0], &fixture(args[1]), "--ring", args[2], "--verify"]);
        assert_eq!(out.code, 1, "{args:?}");
        assert!(out.stderr.contains(diagnostic), "{args:?}: {}", out.stderr);
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ample");
    let ok = std::process::Command::new(bin)
        .args(["graph", &fixture("a3.quiv"), "--ring", "Q", "--format", "machine"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout).unwrap().contains("shape=M_3(Q)"));
    let bad = std::process::Command::new(bin).args(["isg", &fixture("left_zero.isg"), "--ring", "Q"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8(bad.stderr).unwrap().starts_with("error: "));
}
