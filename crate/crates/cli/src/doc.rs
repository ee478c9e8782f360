//! JSON documents: one structure per file, scalars as `"p/q"` strings,
//! cubes as `c[i][j][k]` nested arrays.

use std::path::Path;

use serde_json::{json, Map, Value};

use quadri_core::bialgebra::{QuadriBialgebra, QuadriCoalgebra};
use quadri_core::dendriform::{DDBimodule, DendriformAlgebra};
use quadri_core::exactlin::{format_scalar, parse_scalar, BilinearForm, BilinearOp, MapFamily, Matrix, Scalar, TensorElement};
use quadri_core::quadri::{QuadriAlgebra, QuadriBimodule};
use quadri_core::report::{Report, Violation};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, thiserror::Error)]
pub enum DocError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Core(#[from] quadri_core::Error),
}

type Result<T> = std::result::Result<T, DocError>;

fn bad(msg: impl Into<String>) -> DocError {
    DocError::Format(msg.into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bimodule {
    Dendriform(DDBimodule),
    Quadri(QuadriBimodule),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportDoc {
    pub report: Report,
    /// Dimension of the base when the report refers to a double `A ⊕ A*`.
    pub split: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Dendriform(DendriformAlgebra),
    Quadri(QuadriAlgebra),
    Associative(BilinearOp),
    Bialgebra(QuadriBialgebra),
    Tensor(TensorElement),
    Form(BilinearForm),
    Operator { matrix: Matrix, weight: Option<Scalar> },
    Bimodule(Bimodule),
    Report(ReportDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Dendriform(_) => "dendriform",
            Document::Quadri(_) => "quadri",
            Document::Associative(_) => "associative",
            Document::Bialgebra(_) => "bialgebra",
            Document::Tensor(_) => "tensor",
            Document::Form(_) => "form",
            Document::Operator { .. } => "operator",
            Document::Bimodule(_) => "bimodule",
            Document::Report(_) => "report",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("kind".into(), json!(self.kind()));
        m.insert("version".into(), json!(FORMAT_VERSION));
        match self {
            Document::Dendriform(d) => {
                m.insert("dim".into(), json!(d.dim()));
                m.insert("ops".into(), json!({"prec": cube_json(&d.prec), "succ": cube_json(&d.succ)}));
            }
            Document::Quadri(q) => {
                m.insert("dim".into(), json!(q.dim()));
                m.insert("ops".into(), quadri_ops_json(q));
            }
            Document::Associative(op) => {
                m.insert("dim".into(), json!(op.dim()));
                m.insert("ops".into(), json!({"mul": cube_json(op)}));
            }
            Document::Bialgebra(b) => {
                m.insert("dim".into(), json!(b.dim()));
                m.insert("algebra".into(), json!({"ops": quadri_ops_json(&b.algebra)}));
                let mut co = Map::new();
                let c = &b.coalgebra;
                for (name, family) in [("alpha", &c.alpha), ("beta", &c.beta), ("alpha_t", &c.alpha_t), ("beta_t", &c.beta_t)] {
                    co.insert(name.into(), Value::Array(family.iter().map(|t| matrix_json(t.coeffs())).collect()));
                }
                m.insert("comults".into(), Value::Object(co));
            }
            Document::Tensor(r) => {
                m.insert("dim".into(), json!(r.dim()));
                m.insert("matrix".into(), matrix_json(r.coeffs()));
            }
            Document::Form(f) => {
                m.insert("dim".into(), json!(f.dim()));
                m.insert("matrix".into(), matrix_json(f.gram()));
            }
            Document::Operator { matrix, weight } => {
                if matrix.is_square() {
                    m.insert("dim".into(), json!(matrix.rows()));
                }
                m.insert("matrix".into(), matrix_json(matrix));
                if let Some(w) = weight {
                    m.insert("weight".into(), json!(format_scalar(w)));
                }
            }
            Document::Bimodule(b) => {
                let (species, n, k, fams): (&str, usize, usize, Vec<(&str, &MapFamily)>) = match b {
                    Bimodule::Dendriform(d) => (
                        "dendriform",
                        d.algebra_dim(),
                        d.module_dim(),
                        vec![("l_prec", &d.l_prec), ("r_prec", &d.r_prec), ("l_succ", &d.l_succ), ("r_succ", &d.r_succ)],
                    ),
                    Bimodule::Quadri(q) => (
                        "quadri",
                        q.algebra_dim(),
                        q.module_dim(),
                        vec![
                            ("l_nw", &q.l_nw),
                            ("r_nw", &q.r_nw),
                            ("l_ne", &q.l_ne),
                            ("r_ne", &q.r_ne),
                            ("l_sw", &q.l_sw),
                            ("r_sw", &q.r_sw),
                            ("l_se", &q.l_se),
                            ("r_se", &q.r_se),
                        ],
                    ),
                };
                m.insert("species".into(), json!(species));
                m.insert("algebra_dim".into(), json!(n));
                m.insert("module_dim".into(), json!(k));
                let mut acts = Map::new();
                for (name, f) in fams {
                    acts.insert(name.into(), Value::Array(f.maps().iter().map(matrix_json).collect()));
                }
                m.insert("actions".into(), Value::Object(acts));
            }
            Document::Report(r) => {
                m.insert("passed".into(), json!(r.report.passed()));
                if let Some(n) = r.split {
                    m.insert("split".into(), json!(n));
                }
                m.insert(
                    "violations".into(),
                    Value::Array(
                        r.report
                            .violations
                            .iter()
                            .map(|v| {
                                json!({
                                    "tag": v.tag,
                                    "indices": v.indices,
                                    "residual": v.residual.iter().map(format_scalar).collect::<Vec<_>>(),
                                })
                            })
                            .collect(),
                    ),
                );
                m.insert("notes".into(), json!(r.report.notes));
            }
        }
        Value::Object(m)
    }

    pub fn to_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| bad("document must be a JSON object"))?;
        let kind = str_field(obj, "kind")?;
        let version = str_field(obj, "version")?;
        if version != FORMAT_VERSION {
            return Err(bad(format!("unsupported version {version:?}")));
        }
        Ok(match kind {
            "dendriform" => {
                let (n, ops) = dim_and_ops(obj)?;
                Document::Dendriform(DendriformAlgebra::new(cube(ops, "prec", n)?, cube(ops, "succ", n)?)?)
            }
            "quadri" => {
                let (n, ops) = dim_and_ops(obj)?;
                Document::Quadri(quadri_from_ops(ops, n)?)
            }
            "associative" => {
                let (n, ops) = dim_and_ops(obj)?;
                Document::Associative(cube(ops, "mul", n)?)
            }
            "bialgebra" => {
                let n = usize_field(obj, "dim")?;
                let alg = obj
                    .get("algebra")
                    .and_then(Value::as_object)
                    .ok_or_else(|| bad("missing \"algebra\" block"))?;
                let ops = alg.get("ops").and_then(Value::as_object).ok_or_else(|| bad("missing \"ops\""))?;
                let algebra = quadri_from_ops(ops, n)?;
                let co = obj
                    .get("comults")
                    .and_then(Value::as_object)
                    .ok_or_else(|| bad("missing \"comults\" block"))?;
                let fam = |name: &str| -> Result<Vec<TensorElement>> {
                    let list = co
                        .get(name)
                        .and_then(Value::as_array)
                        .ok_or_else(|| bad(format!("missing comultiplication {name:?}")))?;
                    if list.len() != n {
                        return Err(bad(format!("{name}: expected {n} tensors, got {}", list.len())));
                    }
                    list.iter()
                        .map(|m| Ok(TensorElement::new(square_matrix(m, n)?)?))
                        .collect()
                };
                let coalgebra = QuadriCoalgebra::new(fam("alpha")?, fam("beta")?, fam("alpha_t")?, fam("beta_t")?)?;
                Document::Bialgebra(QuadriBialgebra::new(algebra, coalgebra)?)
            }
            "tensor" => {
                let n = usize_field(obj, "dim")?;
                Document::Tensor(TensorElement::new(square_matrix(field(obj, "matrix")?, n)?)?)
            }
            "form" => {
                let n = usize_field(obj, "dim")?;
                Document::Form(BilinearForm::new(square_matrix(field(obj, "matrix")?, n)?)?)
            }
            "operator" => {
                let m = matrix(field(obj, "matrix")?)?;
                if let Some(d) = obj.get("dim") {
                    let n = d.as_u64().ok_or_else(|| bad("\"dim\" must be a nonnegative integer"))? as usize;
                    if m.rows() != n || m.cols() != n {
                        return Err(bad(format!("operator matrix is not {n}×{n}")));
                    }
                }
                let weight = obj.get("weight").map(scalar).transpose()?;
                Document::Operator { matrix: m, weight }
            }
            "bimodule" => {
                let n = usize_field(obj, "algebra_dim")?;
                let k = usize_field(obj, "module_dim")?;
                let acts = obj
                    .get("actions")
                    .and_then(Value::as_object)
                    .ok_or_else(|| bad("missing \"actions\""))?;
                let fam = |name: &str| -> Result<MapFamily> {
                    let list = acts
                        .get(name)
                        .and_then(Value::as_array)
                        .ok_or_else(|| bad(format!("missing action {name:?}")))?;
                    if list.len() != n {
                        return Err(bad(format!("{name}: expected {n} matrices, got {}", list.len())));
                    }
                    Ok(MapFamily::new(list.iter().map(|m| square_matrix(m, k)).collect::<Result<_>>()?))
                };
                match str_field(obj, "species")? {
                    "dendriform" => Document::Bimodule(Bimodule::Dendriform(DDBimodule {
                        l_prec: fam("l_prec")?,
                        r_prec: fam("r_prec")?,
                        l_succ: fam("l_succ")?,
                        r_succ: fam("r_succ")?,
                    })),
                    "quadri" => Document::Bimodule(Bimodule::Quadri(QuadriBimodule {
                        l_nw: fam("l_nw")?,
                        r_nw: fam("r_nw")?,
                        l_ne: fam("l_ne")?,
                        r_ne: fam("r_ne")?,
                        l_sw: fam("l_sw")?,
                        r_sw: fam("r_sw")?,
                        l_se: fam("l_se")?,
                        r_se: fam("r_se")?,
                    })),
                    s => return Err(bad(format!("unknown bimodule species {s:?}"))),
                }
            }
            "report" => {
                let split = obj.get("split").and_then(|v| v.as_u64().map(|x| x as usize));
                let mut report = Report::new();
                for v in field(obj, "violations")?.as_array().ok_or_else(|| bad("violations must be a list"))? {
                    let o = v.as_object().ok_or_else(|| bad("violation must be an object"))?;
                    let indices = field(o, "indices")?
                        .as_array()
                        .ok_or_else(|| bad("indices must be a list"))?
                        .iter()
                        .map(|i| i.as_u64().map(|x| x as usize).ok_or_else(|| bad("bad index")))
                        .collect::<Result<_>>()?;
                    let residual = field(o, "residual")?
                        .as_array()
                        .ok_or_else(|| bad("residual must be a list"))?
                        .iter()
                        .map(scalar)
                        .collect::<Result<_>>()?;
                    report.violations.push(Violation {
                        tag: str_field(o, "tag")?.to_string(),
                        indices,
                        residual,
                    });
                }
                if let Some(notes) = obj.get("notes") {
                    for n in notes.as_array().ok_or_else(|| bad("notes must be a list"))? {
                        report.note(n.as_str().ok_or_else(|| bad("note must be a string"))?);
                    }
                }
                Document::Report(ReportDoc { report, split })
            }
            other => return Err(bad(format!("unknown document kind {other:?}"))),
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| DocError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }
}

pub fn scalar_json(x: &Scalar) -> Value {
    json!(format_scalar(x))
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| scalar_json(m.get(i, j))).collect()))
            .collect(),
    )
}

pub fn cube_json(c: &BilinearOp) -> Value {
    let n = c.dim();
    Value::Array(
        (0..n)
            .map(|i| {
                Value::Array(
                    (0..n)
                        .map(|j| Value::Array((0..n).map(|k| scalar_json(c.get(i, j, k))).collect()))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn quadri_ops_json(q: &QuadriAlgebra) -> Value {
    json!({
        "nw": cube_json(&q.nw),
        "ne": cube_json(&q.ne),
        "sw": cube_json(&q.sw),
        "se": cube_json(&q.se),
    })
}

/// Accepts `"p/q"` strings and JSON integers.
pub fn scalar(v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => Ok(parse_scalar(s)?),
        Value::Number(n) if n.is_i64() => Ok(Scalar::from_integer(n.as_i64().unwrap().into())),
        _ => Err(bad(format!("scalar must be a \"p/q\" string or an integer, got {v}"))),
    }
}

pub fn matrix(v: &Value) -> Result<Matrix> {
    let rows = v.as_array().ok_or_else(|| bad("matrix must be a list of rows"))?;
    let rows: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| bad("matrix row must be a list"))?
                .iter()
                .map(scalar)
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(Matrix::from_rows(rows)?)
}

fn square_matrix(v: &Value, n: usize) -> Result<Matrix> {
    let m = matrix(v)?;
    if m.rows() != n || m.cols() != n {
        return Err(bad(format!("expected a {n}×{n} matrix, got {}×{}", m.rows(), m.cols())));
    }
    Ok(m)
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value> {
    obj.get(name).ok_or_else(|| bad(format!("missing field {name:?}")))
}

fn str_field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a str> {
    field(obj, name)?
        .as_str()
        .ok_or_else(|| bad(format!("field {name:?} must be a string")))
}

fn usize_field(obj: &Map<String, Value>, name: &str) -> Result<usize> {
    field(obj, name)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| bad(format!("field {name:?} must be a nonnegative integer")))
}

fn dim_and_ops(obj: &Map<String, Value>) -> Result<(usize, &Map<String, Value>)> {
    let n = usize_field(obj, "dim")?;
    let ops = field(obj, "ops")?.as_object().ok_or_else(|| bad("\"ops\" must be an object"))?;
    Ok((n, ops))
}

fn cube(ops: &Map<String, Value>, name: &str, n: usize) -> Result<BilinearOp> {
    let c = ops.get(name).ok_or_else(|| bad(format!("missing operation {name:?}")))?;
    let err = || bad(format!("operation {name:?} must be a {n}×{n}×{n} nested array"));
    let planes = c.as_array().filter(|a| a.len() == n).ok_or_else(err)?;
    let mut flat = Vec::with_capacity(n * n * n);
    for plane in planes {
        let rows = plane.as_array().filter(|a| a.len() == n).ok_or_else(err)?;
        for row in rows {
            let row = row.as_array().filter(|a| a.len() == n).ok_or_else(err)?;
            for x in row {
                flat.push(scalar(x)?);
            }
        }
    }
    Ok(BilinearOp::from_flat(n, flat)?)
}

fn quadri_from_ops(ops: &Map<String, Value>, n: usize) -> Result<QuadriAlgebra> {
    Ok(QuadriAlgebra::new(
        cube(ops, "nw", n)?,
        cube(ops, "ne", n)?,
        cube(ops, "sw", n)?,
        cube(ops, "se", n)?,
    )?)
}
