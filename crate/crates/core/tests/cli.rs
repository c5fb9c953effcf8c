use std::path::PathBuf;

use proptest::prelude::*;
use ringel_core::algebra::*;
use ringel_core::cli::run_command;
use ringel_core::dsl::*;
use ringel_core::generators::*;
use ringel_core::linalg::qf;
use ringel_core::Error;
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> ringel_core::cli::Outcome {
    run_command(std::iter::once("ringel").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut a = vec!["--out", "json"];
    a.extend_from_slice(args);
    let out = run(&a);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn parse_dual_numbers() {
    let spec = parse_dsl("algebra A\nvertex 1\narrow x : 1 -> 1\nzero x^2\n").unwrap();
    let a = spec.build(8).unwrap();
    assert_eq!(a.dim(), 2);
    assert_eq!(a.provenance(), Provenance::Monomial);
}

#[test]
fn knorrer_fixture_matches_generator() {
    let text = std::fs::read_to_string(fixture("knorrer_5_2.alg")).unwrap();
    let spec = parse_dsl(&text).unwrap();
    let gen = knorrer(5, 2).unwrap();
    let mut got = spec.to_monomial().unwrap().unwrap().forbidden;
    let mut want = gen.forbidden.clone();
    got.sort_by(canonical_cmp);
    want.sort_by(canonical_cmp);
    assert_eq!(got, want);
    assert_eq!(spec.quiver, gen.quiver);
}

#[test]
fn lambda_fixture() {
    let text = std::fs::read_to_string(fixture("lambda_3_2.alg")).unwrap();
    let spec = parse_dsl(&text).unwrap();
    assert!(spec.to_monomial().unwrap().is_none());
    assert_eq!(spec.build(16).unwrap().dim(), 19);
}

#[test]
fn parse_errors_have_positions() {
    let cases = [
        ("algebra A\nvertex 1\narrow x : 1 -> 2\n", 3),
        ("algebra A\nvertex 1\narrow x : 1 -> 1\nzero y\n", 4),
        ("algebra A\nvertex 1\narrow x 1 -> 1\n", 3),
        ("algebra A\nvertex 1 1\n", 2),
        ("algebra A\nvertex 1\narrow x : 1 -> 1\nrelation x = \n", 4),
        ("vertex 1\n", 1),
    ];
    for (text, line) in cases {
        match parse_dsl(text) {
            Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
}

#[test]
fn relations_with_coefficients() {
    let text = "algebra B\nvertex 1 2\narrow a : 1 -> 2\narrow b : 1 -> 2\nrelation 2*a = 1/2 b\n";
    let spec = parse_dsl(text).unwrap();
    assert_eq!(spec.relations.len(), 1);
    assert!(spec.relations[0].iter().any(|(c, _)| *c == qf(-1, 2)));
    assert_eq!(spec.build(4).unwrap().dim(), 3);
    assert_eq!(parse_dsl(&emit_dsl(&spec)).unwrap(), spec);
}

#[test]
fn check_reports_witness() {
    let v = json(&["check", &fixture("ex7.alg")]);
    for key in ["algebra", "dim", "ideally_ordered", "witness", "classes", "cartan", "flags", "tilting", "duality"] {
        assert!(v.get(key).is_some(), "missing key {key}");
    }
    assert_eq!(v["ideally_ordered"], Value::Bool(false));
    assert_eq!(v["dim"], 5);
    let w: Vec<&str> = v["witness"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(w, vec!["x", "y"]);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify-duality", &fixture("knorrer_5_2.alg")]).code, 0);
    assert_eq!(run(&["verify-duality", &fixture("ex7.alg")]).code, 2);
    assert_eq!(run(&["check", "/nonexistent/file.alg"]).code, 1);
    assert_eq!(run(&["frobnicate"]).code, 1);
    assert_eq!(run(&["--help"]).code, 0);
    assert_eq!(run(&["endo", &fixture("jordan.alg")]).code, 1);
}

#[test]
fn duality_json() {
    let v = json(&["verify-duality", &fixture("knorrer_5_2.alg")]);
    assert!(!v["duality"].is_null());
    assert_eq!(v["dim"], 5);
    let v = json(&["endo", &fixture("knorrer_5_3.alg")]);
    assert!(v["duality"].is_null());
}

#[test]
fn seeded_runs_are_reproducible() {
    let f = fixture("knorrer_5_3.alg");
    let a = run(&["--seed", "7", "--out", "json", "check", &f]);
    let b = run(&["--seed", "7", "--out", "json", "check", &f]);
    assert_eq!(a.code, 0);
    assert_eq!(a, b);
}

#[test]
fn generators_emit_parseable_files() {
    let out = run(&["gen", "knorrer", "5", "3"]);
    assert_eq!(out.code, 0);
    assert_eq!(parse_dsl(&out.stdout).unwrap().build(8).unwrap().dim(), 5);
    let out = run(&["gen", "nakayama", "2", "3"]);
    assert_eq!(parse_dsl(&out.stdout).unwrap().build(8).unwrap().dim(), 6);
    let out = run(&["gen", "truncated", &fixture("jordan.alg"), "3"]);
    assert_eq!(parse_dsl(&out.stdout).unwrap().build(8).unwrap().dim(), 3);
    let out = run(&["gen", "nilpotent", &fixture("jordan.alg"), "2"]);
    assert_eq!(parse_dsl(&out.stdout).unwrap().build(16).unwrap().dim(), 5);
    assert_ne!(run(&["gen", "knorrer", "4", "2"]).code, 0);
}

#[test]
fn binary_runs() {
    let out =
        std::process::Command::new(env!("CARGO_BIN_EXE_ringel")).args(["check", &fixture("ex7.alg")]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("x") && text.contains("y"));
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_ringel"))
        .args(["verify-duality", &fixture("ex7.alg")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn emit_parse_fixpoint(seed in 0u64..1000, num in -5i64..6, den in 1i64..5) {
        let p = random_monomial(seed, 14).unwrap();
        let mut spec = AlgebraSpec::from_monomial(&p);
        let text = emit_dsl(&spec);
        prop_assert_eq!(&parse_dsl(&text).unwrap(), &spec);
        prop_assert_eq!(spec.build(16).unwrap().dim(), build_monomial_algebra(&p).unwrap().dim());

        let arrows = spec.quiver.arrows().to_vec();
        if let Some((i, j)) = (0..arrows.len())
            .flat_map(|i| (i + 1..arrows.len()).map(move |j| (i, j)))
            .find(|&(i, j)| arrows[i].source == arrows[j].source && arrows[i].target == arrows[j].target)
        {
            prop_assume!(num != 0);
            let (a, b) = (spec.quiver.arrow_path(i), spec.quiver.arrow_path(j));
            spec.relations.push(vec![(qf(num, den), a), (qf(-1, 1), b)]);
            let text = emit_dsl(&spec);
            let again = parse_dsl(&text).unwrap();
            prop_assert_eq!(emit_dsl(&again), text);
            prop_assert_eq!(again.build(16).unwrap().dim(), spec.build(16).unwrap().dim());
        }
    }
}
