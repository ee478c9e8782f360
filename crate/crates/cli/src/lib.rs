//! Command-line front end over `quadri-core`.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 parse, shape or
//! precondition error.

pub mod catalog;
pub mod doc;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::Zero;

use quadri_core::bialgebra::{
    check_bialgebra, check_q_equation, check_quadri_coalgebra, coboundary_bialgebra, double_from_r,
    drinfeld_double, dual_bialgebra,
};
use quadri_core::dendriform::{DDBimodule, check_dd_2cocycle, check_dd_bimodule, check_dendriform, check_manin_dd, dual_dd_bimodule};
use quadri_core::exactlin::{parse_scalar, LinearMap, Scalar};
use quadri_core::operators::{
    check_nijenhuis, check_o_operator, check_rota_baxter, family_nijenhuis, nijenhuis_to_rb, rb_family, FamilyKind,
    FamilyParams, OOperatorInput, OpFamilyAlgebra, QDouble,
};
use quadri_core::quadri::{
    check_invariant_form, check_manin_quadri, check_omega_2cocycle, check_quadri, check_quadri_bimodule,
    dual_quadri_bimodule, project_dd, Projection, QuadriAlgebra, QuadriBimodule,
};
use quadri_core::report::Report;
use quadri_core::search::{enumerate_structures, search_q_solutions, Found, QSearchSpec, SearchKind, SearchSpec};
use quadri_core::Error as CoreError;

use doc::{Bimodule, DocError, Document, ReportDoc};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Doc(#[from] DocError),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    fn precondition_report(&self) -> Option<&Report> {
        match self {
            CliError::Core(e) | CliError::Doc(DocError::Core(e)) => e.report(),
            _ => None,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Parser, Debug)]
#[command(name = "quadri", version, about = "Exact checks for quadri-algebras, dendriform dialgebras and quadri-bialgebras")]
struct Cli {
    /// Rendering of reports on standard output.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the validity checks of a structure.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        /// One file per structure; two-file kinds take the algebra first.
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Derive a structure from another one.
    Derive {
        #[arg(value_enum)]
        what: DeriveKind,
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Q-equation checks and solution search.
    Qeq {
        #[command(subcommand)]
        command: QeqCommand,
    },
    /// Enumerate or sample small structures; prints one certified record per line.
    Search(SearchArgs),
    /// Dimension-n algebras with skew Q-solutions, one certified record per pair.
    Catalog(CatalogArgs),
    /// Build and certify the Drinfeld double.
    Double {
        algebra: PathBuf,
        /// A skew Q-solution tensor or a bialgebra over the same algebra.
        source: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Operator checks and the Rota-Baxter families on a double.
    Op {
        #[command(subcommand)]
        command: OpCommand,
    },
    /// Render a saved report.
    Report { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Dendriform,
    Quadri,
    Associative,
    Bialgebra,
    Coalgebra,
    Bimodule,
    InvariantForm,
    DdCocycle,
    OmegaCocycle,
    Manin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DeriveKind {
    Vertical,
    Horizontal,
    Assoc,
    Dual,
    /// The algebra acting on itself.
    Regular,
}

#[derive(Subcommand, Debug)]
enum QeqCommand {
    /// Check `Q₁¹ = Q₁² = 0`.
    Check { algebra: PathBuf, tensor: PathBuf },
    /// Search tensors over a finite coefficient set.
    Search {
        algebra: PathBuf,
        #[command(flatten)]
        common: Entries,
        /// Row-major 0/1 string over the n×n entries.
        #[arg(long)]
        mask: Option<String>,
        #[arg(long)]
        skew: bool,
        #[arg(long)]
        nondegenerate: bool,
    },
}

#[derive(Args, Debug)]
struct Entries {
    /// Comma-separated coefficient set.
    #[arg(long, default_value = "-1,0,1", allow_hyphen_values = true)]
    entries: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1 << 20)]
    budget: u64,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(value_enum)]
    kind: SearchKindArg,
    #[arg(long)]
    dim: usize,
    #[command(flatten)]
    common: Entries,
    /// 0/1 string over all structure constants, op-major then (i, j, k).
    #[arg(long)]
    mask: Option<String>,
    #[arg(long)]
    max_nonzero: Option<usize>,
}

#[derive(Args, Debug)]
struct CatalogArgs {
    #[arg(long)]
    dim: usize,
    #[command(flatten)]
    common: Entries,
    #[arg(long)]
    max_nonzero: Option<usize>,
    /// Keep only nondegenerate solutions.
    #[arg(long)]
    nondegenerate: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SearchKindArg {
    Dendriform,
    Quadri,
}

#[derive(Subcommand, Debug)]
enum OpCommand {
    /// Rota-Baxter identity of weight λ for every operation and their sum.
    RbCheck {
        algebra: PathBuf,
        operator: PathBuf,
        /// Overrides the operator's own weight (default 0).
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
    },
    /// Nijenhuis identity for every operation and their sum.
    NijCheck { algebra: PathBuf, operator: PathBuf },
    /// O-operator identity for a bimodule.
    OCheck {
        algebra: PathBuf,
        bimodule: PathBuf,
        operator: PathBuf,
    },
    /// Rota-Baxter family member on the double of a skew Q-solution.
    Family(FamilyArgs),
}

#[derive(Args, Debug)]
struct FamilyArgs {
    algebra: PathBuf,
    tensor: PathBuf,
    #[arg(long)]
    kind: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    k: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    k1: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    k2: String,
    /// Must equal the forced value (λ²-k₂²)/k₁ when given.
    #[arg(long, allow_hyphen_values = true)]
    lambda3: Option<String>,
    /// Pick the `−` member of the first two families.
    #[arg(long)]
    minus: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn from_report(format: Format, report: Report, split: Option<usize>) -> Self {
        let code = if report.passed() { 0 } else { 1 };
        Outcome {
            code,
            stdout: render(format, report, split),
            stderr: String::new(),
        }
    }

    fn text(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

fn render(format: Format, report: Report, split: Option<usize>) -> String {
    match format {
        Format::Text => report.render_text(split),
        Format::Json => Document::Report(ReportDoc { report, split }).to_pretty(),
    }
}

/// Runs one invocation; never panics on bad input and always maps to
/// exit code 0, 1 or 2.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::text(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            let mut stderr = format!("error: {e}\n");
            if let Some(r) = e.precondition_report() {
                stderr.push_str(&r.render_text(None));
            }
            Outcome {
                code: 2,
                stdout: String::new(),
                stderr,
            }
        }
    }
}

fn load(path: &Path) -> Result<Document> {
    Ok(Document::load(path)?)
}

fn load_quadri(path: &Path) -> Result<QuadriAlgebra> {
    match load(path)? {
        Document::Quadri(q) => Ok(q),
        Document::Bialgebra(b) => Ok(b.algebra),
        d => Err(usage(format!("{}: expected a quadri document, got {}", path.display(), d.kind()))),
    }
}

fn expect_kind(path: &Path, want: &str, d: &Document) -> CliError {
    usage(format!("{}: expected a {want} document, got {}", path.display(), d.kind()))
}

fn parse_entries(s: &str) -> Result<Vec<Scalar>> {
    let v: Vec<Scalar> = s
        .split(',')
        .map(|t| parse_scalar(t).map_err(CliError::from))
        .collect::<Result<_>>()?;
    let mut sorted = v.clone();
    sorted.sort();
    sorted.dedup();
    Ok(sorted)
}

fn parse_mask(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(usage(format!("mask must be a 0/1 string, found {c:?}"))),
        })
        .collect()
}

fn write_doc(path: &Path, d: &Document) -> Result<()> {
    std::fs::write(path, d.to_pretty()).map_err(|source| CliError::Write {
        path: path.display().to_string(),
        source,
    })
}

fn file_label(p: &Path) -> String {
    p.file_name().map_or_else(|| p.display().to_string(), |f| f.to_string_lossy().into_owned())
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let format = cli.format;
    match &cli.command {
        Command::Check { kind, files } => check(format, *kind, files),
        Command::Derive { what, file, output } => derive(*what, file, output.as_deref()),
        Command::Qeq { command } => match command {
            QeqCommand::Check { algebra, tensor } => {
                let q = load_quadri(algebra)?;
                let r = match load(tensor)? {
                    Document::Tensor(r) => r,
                    d => return Err(expect_kind(tensor, "tensor", &d)),
                };
                let mut report = check_q_equation(&q, &r)?;
                if r.is_skew() {
                    report.note("r is skew-symmetric");
                }
                Ok(Outcome::from_report(format, report, None))
            }
            QeqCommand::Search {
                algebra,
                common,
                mask,
                skew,
                nondegenerate,
            } => {
                let q = load_quadri(algebra)?;
                let spec = QSearchSpec {
                    coefficients: parse_entries(&common.entries)?,
                    mask: mask.as_deref().map(parse_mask).transpose()?,
                    budget: common.budget,
                    require_skew: *skew,
                    require_nondegenerate: *nondegenerate,
                    seed: common.seed,
                };
                let out = search_q_solutions(&q, &spec)?;
                let mut stdout = String::new();
                for r in &out.hits {
                    stdout.push_str(&catalog::pair_record(&q, r)?.to_line());
                }
                Ok(Outcome {
                    code: 0,
                    stdout,
                    stderr: coverage_line(out.hits.len(), out.checked, out.total, out.exhaustive),
                })
            }
        },
        Command::Search(a) => {
            let kind = match a.kind {
                SearchKindArg::Dendriform => SearchKind::Dendriform,
                SearchKindArg::Quadri => SearchKind::Quadri,
            };
            let mut spec = SearchSpec::new(kind, a.dim, parse_entries(&a.common.entries)?);
            spec.mask = a.mask.as_deref().map(parse_mask).transpose()?;
            spec.max_nonzero = a.max_nonzero;
            spec.seed = a.common.seed;
            spec.budget = a.common.budget;
            let out = enumerate_structures(&spec)?;
            let mut stdout = String::new();
            for f in &out.hits {
                let d = match f {
                    Found::Dendriform(d) => Document::Dendriform(d.clone()),
                    Found::Quadri(q) => Document::Quadri(q.clone()),
                };
                stdout.push_str(&catalog::structure_record(d)?.to_line());
            }
            Ok(Outcome {
                code: 0,
                stdout,
                stderr: coverage_line(out.hits.len(), out.checked, out.total, out.exhaustive),
            })
        }
        Command::Catalog(a) => {
            let records = catalog::build(
                a.dim,
                parse_entries(&a.common.entries)?,
                a.max_nonzero,
                a.nondegenerate,
                a.common.budget,
                a.common.seed,
            )?;
            let stdout: String = records.iter().map(catalog::Record::to_line).collect();
            Ok(Outcome {
                code: 0,
                stdout,
                stderr: format!("{} records\n", records.len()),
            })
        }
        Command::Double { algebra, source, output } => double(format, algebra, source, output.as_deref()),
        Command::Op { command } => op(format, command),
        Command::Report { file } => match load(file)? {
            Document::Report(r) => Ok(Outcome::from_report(format, r.report, r.split)),
            d => Err(expect_kind(file, "report", &d)),
        },
    }
}

fn coverage_line(hits: usize, checked: u128, total: u128, exhaustive: bool) -> String {
    let mode = if exhaustive { "exhaustive" } else { "sampled" };
    format!("{hits} hits; checked {checked} of {total} candidates ({mode})\n")
}

fn check(format: Format, kind: CheckKind, files: &[PathBuf]) -> Result<Outcome> {
    let single = |f: &dyn Fn(&Path, Document) -> Result<Report>| -> Result<Outcome> {
        let mut report = Report::new();
        let mut split = None;
        for path in files {
            let d = load(path)?;
            if kind == CheckKind::Manin {
                split = Some(manin_half(path, &d)?);
            }
            let r = f(path, d)?;
            if files.len() == 1 {
                report.merge(r);
            } else {
                report.merge_prefixed(&file_label(path), r);
            }
        }
        if files.len() > 1 {
            split = None;
        }
        Ok(Outcome::from_report(format, report, split))
    };
    let pair = |f: &dyn Fn(&Path, Document, &Path, Document) -> Result<Report>| -> Result<Outcome> {
        let [a, b] = files else {
            return Err(usage("this check takes an algebra file and one more file"));
        };
        let report = f(a, load(a)?, b, load(b)?)?;
        Ok(Outcome::from_report(format, report, None))
    };
    match kind {
        CheckKind::Dendriform => single(&|p, d| match d {
            Document::Dendriform(d) => Ok(check_dendriform(&d)),
            d => Err(expect_kind(p, "dendriform", &d)),
        }),
        CheckKind::Quadri => single(&|p, d| match d {
            Document::Quadri(q) => Ok(check_quadri(&q)),
            d => Err(expect_kind(p, "quadri", &d)),
        }),
        CheckKind::Associative => single(&|p, d| match d {
            Document::Associative(op) => {
                let mut r = Report::new();
                let n = op.dim();
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            let ij_k = op.apply(&op.basis_product(i, j), &quadri_core::exactlin::basis_vec(n, k));
                            let i_jk = op.apply(&quadri_core::exactlin::basis_vec(n, i), &op.basis_product(j, k));
                            r.check(
                                "(x∗y)∗z = x∗(y∗z)",
                                &[i, j, k],
                                quadri_core::exactlin::vec_sub(&ij_k, &i_jk),
                            );
                        }
                    }
                }
                Ok(r)
            }
            d => Err(expect_kind(p, "associative", &d)),
        }),
        CheckKind::Bialgebra => single(&|p, d| match d {
            Document::Bialgebra(b) => Ok(check_bialgebra(&b)?),
            d => Err(expect_kind(p, "bialgebra", &d)),
        }),
        CheckKind::Coalgebra => single(&|p, d| match d {
            Document::Bialgebra(b) => Ok(check_quadri_coalgebra(&b.coalgebra)),
            d => Err(expect_kind(p, "bialgebra", &d)),
        }),
        CheckKind::Manin => single(&|p, d| {
            let n = manin_half(p, &d)?;
            match d {
                Document::Quadri(q) => Ok(check_manin_quadri(&q, n)?),
                Document::Dendriform(v) => Ok(check_manin_dd(&v, n)?),
                Document::Bialgebra(b) => Ok(check_manin_quadri(&b.algebra, n)?),
                d => Err(expect_kind(p, "quadri or dendriform", &d)),
            }
        }),
        CheckKind::Bimodule => pair(&|pa, a, pb, b| match (a, b) {
            (Document::Quadri(q), Document::Bimodule(Bimodule::Quadri(m))) => Ok(check_quadri_bimodule(&q, &m)?),
            (Document::Dendriform(d), Document::Bimodule(Bimodule::Dendriform(m))) => Ok(check_dd_bimodule(&d, &m)?),
            (Document::Quadri(_) | Document::Dendriform(_), b) => Err(usage(format!(
                "{}: bimodule species must match the algebra kind (got {})",
                pb.display(),
                b.kind()
            ))),
            (a, _) => Err(expect_kind(pa, "quadri or dendriform", &a)),
        }),
        CheckKind::InvariantForm => pair(&|pa, a, pb, b| match (a, b) {
            (Document::Quadri(q), Document::Form(f)) => Ok(check_invariant_form(&q, &f)?),
            (Document::Quadri(_), b) => Err(expect_kind(pb, "form", &b)),
            (a, _) => Err(expect_kind(pa, "quadri", &a)),
        }),
        CheckKind::DdCocycle => pair(&|pa, a, pb, b| match (a, b) {
            (Document::Dendriform(d), Document::Form(f)) => Ok(check_dd_2cocycle(&d, &f)?),
            (Document::Dendriform(_), b) => Err(expect_kind(pb, "form", &b)),
            (a, _) => Err(expect_kind(pa, "dendriform", &a)),
        }),
        CheckKind::OmegaCocycle => pair(&|pa, a, pb, b| match (a, b) {
            (Document::Quadri(q), Document::Form(f)) => Ok(check_omega_2cocycle(&q, &f)?),
            (Document::Quadri(_), b) => Err(expect_kind(pb, "form", &b)),
            (a, _) => Err(expect_kind(pa, "quadri", &a)),
        }),
    }
}

fn manin_half(path: &Path, d: &Document) -> Result<usize> {
    let dim = match d {
        Document::Quadri(q) => q.dim(),
        Document::Dendriform(v) => v.dim(),
        Document::Bialgebra(b) => b.dim(),
        d => return Err(expect_kind(path, "quadri or dendriform", d)),
    };
    if dim % 2 != 0 {
        return Err(usage(format!("{}: Manin check needs even dimension, got {dim}", path.display())));
    }
    Ok(dim / 2)
}

fn derive(what: DeriveKind, file: &Path, output: Option<&Path>) -> Result<Outcome> {
    let d = load(file)?;
    let out = match (what, d) {
        (DeriveKind::Vertical | DeriveKind::Horizontal, Document::Quadri(q)) => {
            let report = check_quadri(&q);
            if !report.passed() {
                return Err(CoreError::precondition("not a quadri-algebra", report).into());
            }
            let p = if what == DeriveKind::Vertical {
                Projection::Vertical
            } else {
                Projection::Horizontal
            };
            Document::Dendriform(project_dd(&q, p))
        }
        (DeriveKind::Assoc, Document::Quadri(q)) => {
            let report = check_quadri(&q);
            if !report.passed() {
                return Err(CoreError::precondition("not a quadri-algebra", report).into());
            }
            Document::Associative(quadri_core::quadri::derived_ops(&q).star)
        }
        (DeriveKind::Assoc, Document::Dendriform(d)) => {
            let report = check_dendriform(&d);
            if !report.passed() {
                return Err(CoreError::precondition("not a dendriform dialgebra", report).into());
            }
            Document::Associative(quadri_core::dendriform::assoc_of(&d))
        }
        (DeriveKind::Dual, Document::Bialgebra(b)) => Document::Bialgebra(dual_bialgebra(&b)?),
        (DeriveKind::Dual, Document::Bimodule(Bimodule::Quadri(m))) => {
            Document::Bimodule(Bimodule::Quadri(dual_quadri_bimodule(&m)))
        }
        (DeriveKind::Regular, Document::Quadri(q)) => Document::Bimodule(Bimodule::Quadri(QuadriBimodule::regular(&q))),
        (DeriveKind::Regular, Document::Dendriform(d)) => {
            Document::Bimodule(Bimodule::Dendriform(DDBimodule::regular(&d)))
        }
        (DeriveKind::Dual, Document::Bimodule(Bimodule::Dendriform(m))) => {
            Document::Bimodule(Bimodule::Dendriform(dual_dd_bimodule(&m)))
        }
        (_, d) => {
            return Err(usage(format!(
                "{}: cannot derive {:?} from a {} document",
                file.display(),
                what,
                d.kind()
            )
            .to_lowercase()))
        }
    };
    match output {
        Some(p) => {
            write_doc(p, &out)?;
            Ok(Outcome::text(String::new()))
        }
        None => Ok(Outcome::text(out.to_pretty())),
    }
}

fn double(format: Format, algebra: &Path, source: &Path, output: Option<&Path>) -> Result<Outcome> {
    let q = load_quadri(algebra)?;
    let n = q.dim();
    let (bialgebra, r) = match load(source)? {
        Document::Tensor(r) => {
            // rejects non-skew and non-solutions with a precondition error
            double_from_r(&q, &r)?;
            (coboundary_bialgebra(&q, &r)?, Some(r))
        }
        Document::Bialgebra(b) => {
            if b.algebra != q {
                return Err(usage(format!(
                    "{}: bialgebra is over a different algebra than {}",
                    source.display(),
                    algebra.display()
                )));
            }
            (b, None)
        }
        d => return Err(expect_kind(source, "tensor or bialgebra", &d)),
    };
    let dd = drinfeld_double(&bialgebra)?;
    let mut report = dd.report.clone();
    if let Some(r) = &r {
        if double_from_r(&q, r)? != dd.algebra {
            report.push("route: double from T_r equals the bowtie double", vec![], vec![]);
        }
    }
    if let Some(p) = output {
        write_doc(p, &Document::Bialgebra(dd.bialgebra()))?;
    }
    Ok(Outcome::from_report(format, report, Some(n)))
}

fn op_family(path: &Path) -> Result<OpFamilyAlgebra> {
    Ok(match load(path)? {
        Document::Quadri(q) => OpFamilyAlgebra::quadri(&q),
        Document::Bialgebra(b) => OpFamilyAlgebra::quadri(&b.algebra),
        Document::Dendriform(d) => OpFamilyAlgebra::dendriform(&d),
        Document::Associative(op) => OpFamilyAlgebra::associative(&op),
        d => return Err(expect_kind(path, "algebra", &d)),
    })
}

fn load_operator(path: &Path) -> Result<(quadri_core::Matrix, Option<Scalar>)> {
    match load(path)? {
        Document::Operator { matrix, weight } => Ok((matrix, weight)),
        d => Err(expect_kind(path, "operator", &d)),
    }
}

fn op(format: Format, command: &OpCommand) -> Result<Outcome> {
    match command {
        OpCommand::RbCheck {
            algebra,
            operator,
            weight,
        } => {
            let a = op_family(algebra)?;
            let (p, w) = load_operator(operator)?;
            let w = match weight {
                Some(s) => parse_scalar(s)?,
                None => w.unwrap_or_else(Scalar::zero),
            };
            Ok(Outcome::from_report(format, check_rota_baxter(&a, &p, &w)?, None))
        }
        OpCommand::NijCheck { algebra, operator } => {
            let a = op_family(algebra)?;
            let (n, _) = load_operator(operator)?;
            Ok(Outcome::from_report(format, check_nijenhuis(&a, &n)?, None))
        }
        OpCommand::OCheck {
            algebra,
            bimodule,
            operator,
        } => {
            let (t, _) = load_operator(operator)?;
            let t = LinearMap::new(t);
            let m = match load(bimodule)? {
                Document::Bimodule(m) => m,
                d => return Err(expect_kind(bimodule, "bimodule", &d)),
            };
            let report = match (load(algebra)?, m) {
                (Document::Quadri(q), Bimodule::Quadri(m)) => check_o_operator(OOperatorInput::Quadri(&q, &m), &t)?,
                (Document::Dendriform(d), Bimodule::Dendriform(m)) => {
                    check_o_operator(OOperatorInput::Dendriform(&d, &m), &t)?
                }
                (Document::Quadri(_) | Document::Dendriform(_), _) => {
                    return Err(usage("bimodule species must match the algebra kind"))
                }
                (d, _) => return Err(expect_kind(algebra, "quadri or dendriform", &d)),
            };
            Ok(Outcome::from_report(format, report, None))
        }
        OpCommand::Family(a) => {
            let q = load_quadri(&a.algebra)?;
            let r = match load(&a.tensor)? {
                Document::Tensor(r) => r,
                d => return Err(expect_kind(&a.tensor, "tensor", &d)),
            };
            let kind: FamilyKind = a.kind.parse()?;
            let params = FamilyParams {
                lambda: parse_scalar(&a.lambda)?,
                plus: !a.minus,
                k: parse_scalar(&a.k)?,
                k1: parse_scalar(&a.k1)?,
                k2: parse_scalar(&a.k2)?,
                lambda3: a.lambda3.as_deref().map(parse_scalar).transpose()?,
            };
            let qd = QDouble::new(&q, &r)?;
            let fam = qd.family();
            let nmat = family_nijenhuis(kind, &params, &qd)?;
            let p = rb_family(kind, &params, &qd)?;
            let w = params.weight(kind);
            let mut report = Report::new();
            report.merge_prefixed("N", check_nijenhuis(&fam, &nmat)?);
            report.merge_prefixed("P", check_rota_baxter(&fam, &p, &w)?);
            if nijenhuis_to_rb(&nmat, &w)? != p {
                report.push("P = (-λ id - N)/2", vec![], vec![]);
            }
            if kind.is_idempotent_family() {
                let n2 = 2 * qd.n();
                for (i, row) in p.mul(&p).sub(&p).entries().chunks(n2).enumerate() {
                    report.check("P² = P", &[i], row.to_vec());
                }
            }
            if let Some(path) = &a.output {
                write_doc(
                    path,
                    &Document::Operator {
                        matrix: p,
                        weight: Some(w),
                    },
                )?;
            }
            Ok(Outcome::from_report(format, report, Some(qd.n())))
        }
    }
}
