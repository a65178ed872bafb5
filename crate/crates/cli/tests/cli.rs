use std::process::Command;

use genus_cli::args::Cli;
use genus_cli::commands::{execute, exit_code};
use genus_cli::report::{Payload, Report};
use genus_cli::{build_ring, commands};

use clap::Parser;

fn genus(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_genus"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8"),
    )
}

fn run(args: &[&str]) -> Report {
    let cli = Cli::try_parse_from(std::iter::once("genus").chain(args.iter().copied()))
        .expect("valid arguments");
    execute(&cli).expect("command succeeds")
}

fn roundtrip(report: &Report) {
    let back = Report::from_json(&report.to_json()).expect("parses");
    assert_eq!(&back, report);
}

#[test]
fn unit_groups() {
    for (q, n, factors) in [(3, "T^2", vec![6]), (5, "T", vec![4]), (2, "T", vec![])] {
        let r = commands::unitgroup(&build_ring(q, None).unwrap(), n).unwrap();
        match &r.result {
            Payload::UnitGroup(u) => assert_eq!(u.invariant_factors, factors, "q={q} N={n}"),
            other => panic!("unexpected payload {other:?}"),
        }
        roundtrip(&r);
    }
}

#[test]
fn extended_genus_fields() {
    let full = run(&["--q", "3", "extgenus", "--N", "T^2+1", "--gen", "full"]);
    let single = run(&["--q", "5", "extgenus", "--N", "T^3", "--gen", "dual:1,0,0"]);
    for r in [&full, &single] {
        match &r.result {
            Payload::ExtGenus(x) => {
                assert_eq!(x.e.degree, x.ge_e.degree);
                assert!(r.checks.iter().all(|c| c.passed));
            }
            other => panic!("unexpected payload {other:?}"),
        }
        roundtrip(r);
    }
    let quartic = run(&[
        "--q",
        "5",
        "extgenus",
        "--N",
        "T^2+T",
        "--gen",
        "kummer:4:T^2+T",
    ]);
    match &quartic.result {
        Payload::ExtGenus(x) => assert_eq!((x.e.degree, x.ge_e.degree, x.g_e.degree), (4, 16, 8)),
        other => panic!("unexpected payload {other:?}"),
    }
    roundtrip(&quartic);
}

#[test]
fn kummer_reports() {
    let quadratic = run(&["--q", "5", "kummer", "--m", "2", "--gamma", "2", "--D", "T"]);
    let quartic = run(&[
        "--q", "5", "kummer", "--m", "4", "--gamma", "2", "--D", "T^2+T",
    ]);
    let cyclotomic = run(&["--q", "5", "kummer", "--m", "2", "--gamma", "1", "--D", "T"]);
    let rules: Vec<String> = [&quadratic, &quartic, &cyclotomic]
        .iter()
        .map(|r| match &r.result {
            Payload::Kummer(k) => k.genus.rule.clone(),
            other => panic!("unexpected payload {other:?}"),
        })
        .collect();
    assert_eq!(rules, ["constants-pattern", "bounds-coincide", "h-trivial"]);
    if let Payload::Kummer(k) = &cyclotomic.result {
        assert_eq!(k.genus.g_k, k.genus.ge_k);
    }
    for r in [&quadratic, &quartic, &cyclotomic] {
        assert_eq!(exit_code(r), 0);
        roundtrip(r);
    }
}

#[test]
fn character_evaluations() {
    let r = run(&[
        "--q", "3", "char", "--N", "T^2+1", "--gen", "dual:1", "--at", "T", "--at", "T+1",
    ]);
    match &r.result {
        Payload::Characters(c) => {
            assert_eq!(c.order, 8);
            assert_eq!(c.evaluations.len(), 2);
        }
        other => panic!("unexpected payload {other:?}"),
    }
    roundtrip(&r);
}

#[test]
fn worked_examples_and_gamma_override() {
    for gamma in [None, Some("3")] {
        let mut args = vec!["worked-examples"];
        args.extend(gamma.iter().flat_map(|g| ["--gamma", g]));
        let r = run(&args);
        assert!(
            r.checks.iter().all(|c| c.passed),
            "{:?}",
            r.failed_checks().collect::<Vec<_>>()
        );
        roundtrip(&r);
    }
    let (code, _) = genus(&["worked-examples", "--gamma", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn oracle_bounds() {
    let empty = run(&["oracle", "--max-phi", "0"]);
    match &empty.result {
        Payload::Oracle(o) => assert!(o.passed && o.moduli.iter().all(|&(_, n)| n == 0)),
        other => panic!("unexpected payload {other:?}"),
    }
    roundtrip(&empty);
    let small = run(&["--jobs", "2", "oracle", "--max-phi", "12", "--random", "5"]);
    match &small.result {
        Payload::Oracle(o) => assert!(o.passed && o.random_groups == 5),
        other => panic!("unexpected payload {other:?}"),
    }
}

#[test]
fn exit_codes() {
    assert_eq!(genus(&["--q", "3", "unitgroup", "--N", "T^2"]).0, 0);
    assert_eq!(genus(&["unitgroup", "--N", "T+"]).0, 1);
    assert_eq!(genus(&["unitgroup", "--N", "2*T"]).0, 1);
    assert_eq!(genus(&["--q", "6", "unitgroup", "--N", "T"]).0, 2);
    assert_eq!(
        genus(&["kummer", "--m", "3", "--gamma", "2", "--D", "T"]).0,
        2
    );
    assert_eq!(
        genus(&["kummer", "--m", "2", "--gamma", "0", "--D", "T"]).0,
        2
    );
    let (code, stdout) = genus(&["oracle", "--qs", "3", "--max-phi", "20", "--corrupt"]);
    assert_eq!(code, 3);
    let report = Report::from_json(&stdout).unwrap();
    let Payload::Oracle(o) = report.result else {
        panic!("oracle payload")
    };
    let section = o
        .sections
        .iter()
        .find(|s| s.name == "component-identity")
        .unwrap();
    assert_eq!(section.failed, 1);
    assert!(section.counterexamples[0].starts_with("q=3 N="));
}

#[test]
fn json_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, stdout) = genus(&[
        "--json",
        path.to_str().unwrap(),
        "--q",
        "5",
        "unitgroup",
        "--N",
        "T^2+T",
    ]);
    assert_eq!(code, 0);
    let from_file = Report::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(from_file, Report::from_json(&stdout).unwrap());
    assert_eq!(from_file.schema_version, genus_cli::report::SCHEMA_VERSION);
}
