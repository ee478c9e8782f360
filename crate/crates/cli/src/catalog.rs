//! Newline-delimited search records with a verification certificate.
//!
//! A certificate names the checks that were run, the checker version, and a
//! SHA-256 digest over the instance documents and the check reports, so a
//! stored record can be re-verified by recomputing the reports.

use std::path::Path;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use quadri_core::bialgebra::{check_coboundary_coalgebra, check_q_equation};
use quadri_core::dendriform::check_dendriform;
use quadri_core::exactlin::{Scalar, TensorElement};
use quadri_core::quadri::{check_quadri, QuadriAlgebra};
use quadri_core::report::Report;
use quadri_core::search::{enumerate_structures, search_q_solutions, Found, QSearchSpec, SearchKind, SearchSpec};
use quadri_core::CHECKER_VERSION;

use crate::doc::{DocError, Document, ReportDoc};

type Result<T> = std::result::Result<T, DocError>;

#[derive(Clone, Debug, PartialEq)]
pub struct Record(pub Value);

impl Record {
    pub fn to_line(&self) -> String {
        let mut s = serde_json::to_string(&self.0).expect("records serialize");
        s.push('\n');
        s
    }
}

/// A catalog pair after certificate verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub algebra: QuadriAlgebra,
    pub tensor: TensorElement,
}

fn digest(instances: &[&Document], checks: &[(&str, Report)]) -> String {
    let mut h = Sha256::new();
    for d in instances {
        h.update(serde_json::to_string(&d.to_json()).expect("documents serialize"));
        h.update(b"\n");
    }
    for (name, r) in checks {
        h.update(name.as_bytes());
        h.update(b"\n");
        let doc = Document::Report(ReportDoc {
            report: r.clone(),
            split: None,
        });
        h.update(serde_json::to_string(&doc.to_json()).expect("reports serialize"));
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

fn certificate(instances: &[&Document], checks: Vec<(&str, Report)>) -> Value {
    json!({
        "checker": CHECKER_VERSION,
        "checks": checks.iter().map(|(n, _)| *n).collect::<Vec<_>>(),
        "passed": checks.iter().all(|(_, r)| r.passed()),
        "residual_digest": digest(instances, &checks),
    })
}

fn pair_checks(q: &QuadriAlgebra, r: &TensorElement) -> Result<Vec<(&'static str, Report)>> {
    Ok(vec![
        ("quadri", check_quadri(q)),
        ("q-equation", check_q_equation(q, r)?),
        ("coboundary-coalgebra", check_coboundary_coalgebra(q, r)?),
    ])
}

fn structure_checks(d: &Document) -> Vec<(&'static str, Report)> {
    match d {
        Document::Quadri(q) => vec![("quadri", check_quadri(q))],
        Document::Dendriform(v) => vec![("dendriform", check_dendriform(v))],
        _ => vec![],
    }
}

pub fn structure_record(d: Document) -> Result<Record> {
    let cert = certificate(&[&d], structure_checks(&d));
    Ok(Record(json!({"structure": d.to_json(), "certificate": cert})))
}

pub fn pair_record(q: &QuadriAlgebra, r: &TensorElement) -> Result<Record> {
    let a = Document::Quadri(q.clone());
    let t = Document::Tensor(r.clone());
    let cert = certificate(&[&a, &t], pair_checks(q, r)?);
    Ok(Record(json!({"algebra": a.to_json(), "tensor": t.to_json(), "certificate": cert})))
}

/// Algebras from a (masked or sampled) enumeration, each paired with its
/// nonzero skew Q-solutions over the same coefficient set.
pub fn build(
    dim: usize,
    entries: Vec<Scalar>,
    max_nonzero: Option<usize>,
    nondegenerate: bool,
    budget: u64,
    seed: u64,
) -> Result<Vec<Record>> {
    let mut spec = SearchSpec::new(SearchKind::Quadri, dim, entries.clone());
    spec.max_nonzero = max_nonzero;
    spec.budget = budget;
    spec.seed = seed;
    let algebras = enumerate_structures(&spec)?;
    let qspec = QSearchSpec {
        coefficients: entries,
        mask: None,
        budget,
        require_skew: true,
        require_nondegenerate: nondegenerate,
        seed,
    };
    let mut out = Vec::new();
    for f in &algebras.hits {
        let Found::Quadri(q) = f else { continue };
        for r in search_q_solutions(q, &qspec)?.hits {
            if !r.is_zero() {
                out.push(pair_record(q, &r)?);
            }
        }
    }
    Ok(out)
}

fn verify_err(line: usize, msg: impl std::fmt::Display) -> DocError {
    DocError::Format(format!("catalog line {line}: {msg}"))
}

/// Parses a catalog and re-verifies every certificate.
pub fn load_catalog(path: &Path) -> Result<Vec<CatalogEntry>> {
    let text = std::fs::read_to_string(path).map_err(|source| DocError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let v: Value = serde_json::from_str(line)?;
        let algebra = match Document::from_json(&v["algebra"])? {
            Document::Quadri(q) => q,
            d => return Err(verify_err(no + 1, format!("expected a quadri algebra, got {}", d.kind()))),
        };
        let tensor = match Document::from_json(&v["tensor"])? {
            Document::Tensor(r) => r,
            d => return Err(verify_err(no + 1, format!("expected a tensor, got {}", d.kind()))),
        };
        let stored = v["certificate"]["residual_digest"]
            .as_str()
            .ok_or_else(|| verify_err(no + 1, "missing residual digest"))?;
        let a = Document::Quadri(algebra.clone());
        let t = Document::Tensor(tensor.clone());
        let checks = pair_checks(&algebra, &tensor)?;
        if !checks.iter().all(|(_, r)| r.passed()) {
            return Err(verify_err(no + 1, "stored pair no longer passes its checks"));
        }
        if digest(&[&a, &t], &checks) != stored {
            return Err(verify_err(no + 1, "residual digest mismatch"));
        }
        out.push(CatalogEntry { algebra, tensor });
    }
    Ok(out)
}
