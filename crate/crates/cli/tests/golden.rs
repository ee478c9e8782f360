mod common;

use std::process::Command;

use quadri_cli::doc::Document;

#[test]
fn transcripts_match() {
    let bad = common::run_golden();
    assert!(bad.is_empty(), "mismatching cases: {bad:?}");
}

#[test]
fn exit_codes_from_the_binary() {
    let bin = env!("CARGO_BIN_EXE_quadri");
    let run = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .current_dir(common::fixtures())
            .output()
            .unwrap()
    };
    assert_eq!(run(&["check", "quadri", "zero2.json"]).status.code(), Some(0));
    assert_eq!(run(&["check", "quadri", "bad-two-op.json"]).status.code(), Some(1));
    assert_eq!(run(&["check", "quadri", "malformed.json"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn bad_two_op_names_the_first_axiom() {
    let out = quadri_cli::run(common::args(&format!(
        "check quadri {}",
        common::fixtures().join("bad-two-op.json").display()
    )));
    assert_eq!(out.code, 1);
    let Document::Report(r) = Document::parse(&out.stdout).unwrap() else {
        panic!("expected a report");
    };
    let v = &r.report.violations[0];
    assert_eq!(v.tag, quadri_core::quadri::quadri_axiom_tag(0));
    assert_eq!(v.indices, vec![0, 0, 0]);
}

#[test]
fn reports_round_trip() {
    let out = quadri_cli::run(common::args(&format!(
        "double {} {}",
        common::fixtures().join("cat.json").display(),
        common::fixtures().join("cat-r.json").display()
    )));
    let doc = Document::parse(&out.stdout).unwrap();
    assert_eq!(Document::parse(&doc.to_pretty()).unwrap(), doc);
    let bad = std::fs::read_to_string(common::fixtures().join("bad-report.json")).unwrap();
    let doc = Document::parse(&bad).unwrap();
    assert_eq!(doc.to_pretty(), bad);
}

#[test]
fn documents_round_trip() {
    for entry in std::fs::read_dir(common::fixtures()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "json") && !path.ends_with("malformed.json") {
            let text = std::fs::read_to_string(&path).unwrap();
            let doc = Document::parse(&text).unwrap();
            assert_eq!(Document::parse(&doc.to_pretty()).unwrap(), doc, "{}", path.display());
        }
    }
}

#[test]
fn frozen_catalog_is_reproducible() {
    let out = quadri_cli::run(common::args(
        "catalog --dim 2 --entries=-1,0,1 --max-nonzero 3 --nondegenerate",
    ));
    assert_eq!(out.code, 0);
    let frozen = std::fs::read_to_string(common::fixtures().join("catalog.ndjson")).unwrap();
    assert_eq!(out.stdout, frozen);
    let entries = quadri_cli::catalog::load_catalog(&common::fixtures().join("catalog.ndjson")).unwrap();
    assert_eq!(entries.len(), 74);
}
