//! Verification reports: every failed identity instance with its residual.

use std::collections::BTreeSet;
use std::fmt;

use crate::exactlin::{format_scalar, is_zero_vec, Scalar};

/// One failing instance of an identity: which identity, at which basis
/// indices, and the nonzero residual `lhs - rhs` in coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Violation {
    pub tag: String,
    pub indices: Vec<usize>,
    pub residual: Vec<Scalar>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
    /// Informational findings that do not affect `passed`.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, tag: impl Into<String>, indices: Vec<usize>, residual: Vec<Scalar>) {
        self.violations.push(Violation {
            tag: tag.into(),
            indices,
            residual,
        });
    }

    /// Records a violation when `residual` is not identically zero.
    pub fn check(&mut self, tag: &str, indices: &[usize], residual: Vec<Scalar>) {
        if !is_zero_vec(&residual) {
            self.push(tag, indices.to_vec(), residual);
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn merge(&mut self, other: Report) {
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
    }

    /// Merges `other`, prefixing every tag and note with `prefix: `.
    pub fn merge_prefixed(&mut self, prefix: &str, other: Report) {
        for mut v in other.violations {
            v.tag = format!("{prefix}: {}", v.tag);
            self.violations.push(v);
        }
        for n in other.notes {
            self.notes.push(format!("{prefix}: {n}"));
        }
    }

    /// Distinct `(tag, indices)` pairs that failed.
    pub fn support(&self) -> BTreeSet<(String, Vec<usize>)> {
        self.violations
            .iter()
            .map(|v| (v.tag.clone(), v.indices.clone()))
            .collect()
    }

    pub fn tags(&self) -> BTreeSet<&str> {
        self.violations.iter().map(|v| v.tag.as_str()).collect()
    }

    pub fn has_tag_prefix(&self, prefix: &str) -> bool {
        self.violations.iter().any(|v| v.tag.starts_with(prefix))
    }

    /// Keeps only the violations whose tag starts with `prefix`.
    pub fn filtered(&self, prefix: &str) -> Report {
        Report {
            violations: self
                .violations
                .iter()
                .filter(|v| v.tag.starts_with(prefix))
                .cloned()
                .collect(),
            notes: Vec::new(),
        }
    }

    /// Human-readable rendering; when `split` is set, basis indices at or
    /// beyond it are labelled as dual basis vectors `e_i*`.
    pub fn render_text(&self, split: Option<usize>) -> String {
        let label = |i: usize| match split {
            Some(n) if i >= n => format!("e{}*", i - n),
            _ => format!("e{i}"),
        };
        let mut out = String::new();
        if self.passed() {
            out.push_str("PASS\n");
        } else {
            out.push_str(&format!("FAIL ({} violations)\n", self.violations.len()));
        }
        for v in &self.violations {
            let idx: Vec<String> = v.indices.iter().map(|&i| label(i)).collect();
            let res: Vec<String> = v
                .residual
                .iter()
                .enumerate()
                .filter(|(_, c)| !num::Zero::is_zero(*c))
                .map(|(k, c)| match split {
                    // vector residuals on a double get basis labels
                    Some(n) if v.residual.len() == 2 * n => format!("{}·{}", format_scalar(c), label(k)),
                    _ => format!("{}@{k}", format_scalar(c)),
                })
                .collect();
            out.push_str(&format!("  {} at ({}): {}\n", v.tag, idx.join(","), res.join(" ")));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text(None))
    }
}
