//! Exact verification of dendriform dialgebras, quadri-algebras and
//! quadri-bialgebras over the rationals.

// Index loops mirror the structure-constant formulas.
#![allow(clippy::needless_range_loop)]

pub mod bialgebra;
pub mod dendriform;
pub mod error;
pub mod exactlin;
pub mod exec;
pub mod operators;
pub mod quadri;
pub mod report;
pub mod search;

pub use error::{Error, Result};
pub use exactlin::{BilinearForm, BilinearOp, LinearMap, Matrix, Scalar, Tensor3, TensorElement};
pub use exec::Executor;
pub use report::{Report, Violation};

/// Version string recorded in certificates.
pub const CHECKER_VERSION: &str = concat!("quadri-core ", env!("CARGO_PKG_VERSION"));
