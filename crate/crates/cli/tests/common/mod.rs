#![allow(dead_code)]

use std::path::{Path, PathBuf};

pub fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

pub fn fixtures() -> PathBuf {
    repo_root().join("fixtures")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// `(name, arguments)`; paths are relative to the fixture directory.
pub const CASES: &[(&str, &str)] = &[
    ("check-quadri-zero2", "check quadri zero2.json"),
    ("check-quadri-bad", "check quadri bad-two-op.json"),
    ("check-quadri-bad-text", "--format text check quadri bad-two-op.json"),
    ("check-quadri-many", "check quadri zero2.json se1.json bad-two-op.json"),
    ("check-dendriform", "check dendriform dd-succ1.json"),
    ("check-associative", "--format text check associative mul2.json"),
    ("check-bialgebra", "check bialgebra bialg-se1.json"),
    ("check-coalgebra", "check coalgebra bialg-se1.json"),
    ("check-bimodule", "check bimodule se1.json regular-se1.json"),
    ("check-bimodule-dual", "check bimodule cat.json cat-dual-regular.json"),
    ("check-bimodule-mismatch", "check bimodule cat.json regular-se1.json"),
    ("check-invariant-form", "check invariant-form zero2.json hyperbolic1.json"),
    ("check-dd-cocycle", "check dd-cocycle cat-vertical.json hyperbolic1.json"),
    ("check-omega-cocycle", "check omega-cocycle cat.json cat-omega.json"),
    ("check-manin", "check manin zero2.json"),
    ("derive-vertical", "derive vertical cat.json"),
    ("derive-horizontal", "derive horizontal cat.json"),
    ("derive-assoc", "derive assoc cat.json"),
    ("derive-regular", "derive regular se1.json"),
    ("derive-dual-bialgebra", "derive dual bialg-se1.json"),
    ("derive-dual-bimodule", "derive dual regular-se1.json"),
    ("derive-invalid", "derive vertical bad-two-op.json"),
    ("qeq-check-zero2", "qeq check zero2.json skew.json"),
    ("qeq-check-nonskew", "--format text qeq check cat.json nonskew.json"),
    ("qeq-search-skew", "qeq search cat.json --skew"),
    ("qeq-search-mask", "qeq search cat.json --mask 0110 --entries=-1,0,1"),
    ("search-quadri-dim1", "search quadri --dim 1 --entries 0,1"),
    ("search-sampled", "search quadri --dim 2 --max-nonzero 3 --budget 200 --seed 7"),
    ("search-budget-zero", "search quadri --dim 1 --budget 0"),
    ("catalog-dim1", "catalog --dim 1 --entries 0,1"),
    ("double-tensor", "--format text double cat.json cat-r.json"),
    ("double-tensor-json", "double cat.json cat-r.json"),
    ("double-bialgebra", "double se1.json bialg-se1.json"),
    ("double-nonskew", "double cat.json nonskew.json"),
    ("op-rb-check", "op rb-check se1.json id1-weight-1.json"),
    ("op-rb-check-fail", "op rb-check se1.json id1.json"),
    ("op-rb-check-weight", "op rb-check se1.json id1.json --weight -1"),
    ("op-nij-check", "op nij-check se1.json id1.json"),
    ("op-o-check", "op o-check cat.json cat-dual-regular.json cat-t.json"),
    ("op-family-g3", "--format text op family cat.json cat-r.json --kind G3 --k1 2 --k2 1/2"),
    ("op-family-f1-minus", "op family cat.json cat-r.json --kind F1 --lambda 3 --k -2 --minus"),
    ("op-family-f3-lambda3", "op family cat.json cat-r.json --kind F3 --k1 2 --k2 1/2 --lambda 3 --lambda3 1"),
    ("op-family-unknown", "op family cat.json cat-r.json --kind F9"),
    ("report-json", "report bad-report.json"),
    ("report-text", "--format text report bad-report.json"),
    ("error-malformed", "check quadri malformed.json"),
    ("error-missing-file", "check quadri no-such-file.json"),
    ("error-kind", "check dendriform se1.json"),
    ("error-subcommand", "frobnicate"),
];

pub fn args(line: &str) -> Vec<String> {
    std::iter::once("quadri".to_string())
        .chain(line.split_whitespace().map(str::to_string))
        .collect()
}

pub fn transcript(line: &str, out: &quadri_cli::Outcome) -> String {
    format!(
        "$ quadri {line}\nexit: {}\n--- stdout\n{}--- stderr\n{}",
        out.code, out.stdout, out.stderr
    )
}

/// Runs every case from the fixture directory and compares with the
/// stored transcripts; `UPDATE_GOLDEN=1` rewrites them. Returns the names
/// of mismatching cases.
pub fn run_golden() -> Vec<String> {
    std::env::set_current_dir(fixtures()).unwrap();
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let dir = golden_dir();
    std::fs::create_dir_all(&dir).unwrap();
    let mut bad = Vec::new();
    for (name, line) in CASES {
        let out = quadri_cli::run(args(line));
        let text = transcript(line, &out);
        let path = dir.join(format!("{name}.txt"));
        if update {
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(expected) if expected == text => {}
            Ok(expected) => {
                eprintln!("golden mismatch for {name}:\n--- expected\n{expected}\n--- actual\n{text}");
                bad.push(name.to_string());
            }
            Err(_) => {
                eprintln!("missing golden file {}", path.display());
                bad.push(name.to_string());
            }
        }
    }
    bad
}
