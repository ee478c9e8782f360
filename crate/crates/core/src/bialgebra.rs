//! Quadri-coalgebras and bialgebras, coboundary structures, the Q-tensors
//! and Q-equation, Drinfeld doubles and the graph characterization of
//! Q-solutions.

use num::Zero;

use crate::dendriform::{check_homomorphism, check_manin_dd, Structure};
use crate::error::{Error, Result};
use crate::exactlin::{
    basis_vec, is_zero_vec, leg_embed, leg_product, vec_sub, BilinearForm, BilinearOp, LinearMap, MapFamily,
    Matrix, Placement, Tensor3, TensorElement, Vector,
};
use crate::exec::Executor;
use crate::quadri::{
    check_manin_quadri, check_quadri, dual_quadri_bimodule, project_dd, semidirect_sum_unchecked, Op,
    Projection, QuadriAlgebra, QuadriBimodule, QuadriMatchedPair, QUADRI_AXIOMS,
};
use crate::report::Report;

/// Comultiplications stored per basis element: `alpha[s]` is `α(e_s)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadriCoalgebra {
    pub alpha: Vec<TensorElement>,
    pub beta: Vec<TensorElement>,
    pub alpha_t: Vec<TensorElement>,
    pub beta_t: Vec<TensorElement>,
}

impl QuadriCoalgebra {
    pub fn new(
        alpha: Vec<TensorElement>,
        beta: Vec<TensorElement>,
        alpha_t: Vec<TensorElement>,
        beta_t: Vec<TensorElement>,
    ) -> Result<Self> {
        let n = alpha.len();
        let ok = n > 0
            && [&alpha, &beta, &alpha_t, &beta_t]
                .iter()
                .all(|f| f.len() == n && f.iter().all(|t| t.dim() == n));
        if !ok {
            return Err(Error::shape("each comultiplication needs dim tensors of size dim"));
        }
        Ok(Self {
            alpha,
            beta,
            alpha_t,
            beta_t,
        })
    }

    pub fn zero(dim: usize) -> Self {
        let z = vec![TensorElement::zero(dim); dim];
        Self {
            alpha: z.clone(),
            beta: z.clone(),
            alpha_t: z.clone(),
            beta_t: z,
        }
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    pub fn base(&self) -> [&Vec<TensorElement>; 4] {
        [&self.alpha, &self.beta, &self.alpha_t, &self.beta_t]
    }

    pub fn named(&self) -> Vec<(&'static str, &Vec<TensorElement>)> {
        vec![
            ("α", &self.alpha),
            ("β", &self.beta),
            ("α̃", &self.alpha_t),
            ("β̃", &self.beta_t),
        ]
    }

    /// The comultiplication paired with `o`: `α ↔ ↖`, `β ↔ ↗`, `α̃ ↔ ↙`,
    /// `β̃ ↔ ↘`, sums for the derived operations.
    pub fn comult(&self, o: Op) -> Vec<TensorElement> {
        let b = self.base();
        let parts = o.parts();
        (0..self.dim())
            .map(|s| {
                let mut acc = b[parts[0]][s].clone();
                for &k in &parts[1..] {
                    acc = acc.add(&b[k][s]);
                }
                acc
            })
            .collect()
    }

    pub fn neg(&self) -> Self {
        let f = |v: &Vec<TensorElement>| v.iter().map(TensorElement::neg).collect();
        Self {
            alpha: f(&self.alpha),
            beta: f(&self.beta),
            alpha_t: f(&self.alpha_t),
            beta_t: f(&self.beta_t),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.base().iter().all(|f| f.iter().all(TensorElement::is_zero))
    }

    /// The coalgebra whose dual algebra is `q` (index transposition).
    pub fn from_dual_algebra(q: &QuadriAlgebra) -> Self {
        let n = q.dim();
        let fam = |c: &BilinearOp| -> Vec<TensorElement> {
            (0..n)
                .map(|s| {
                    TensorElement::new(Matrix::from_fn(n, n, |i, j| c.get(i, j, s).clone())).unwrap()
                })
                .collect()
        };
        Self {
            alpha: fam(&q.nw),
            beta: fam(&q.ne),
            alpha_t: fam(&q.sw),
            beta_t: fam(&q.se),
        }
    }
}

pub fn co_symbol(o: Op) -> &'static str {
    match o {
        Op::Nw => "α",
        Op::Ne => "β",
        Op::Sw => "α̃",
        Op::Se => "β̃",
        Op::Succ => "(β+β̃)",
        Op::Prec => "(α+α̃)",
        Op::Vee => "(α̃+β̃)",
        Op::Wedge => "(α+β)",
        Op::Star => "(α+β+α̃+β̃)",
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadriBialgebra {
    pub algebra: QuadriAlgebra,
    pub coalgebra: QuadriCoalgebra,
}

impl QuadriBialgebra {
    pub fn new(algebra: QuadriAlgebra, coalgebra: QuadriCoalgebra) -> Result<Self> {
        if algebra.dim() != coalgebra.dim() {
            return Err(Error::shape("algebra and coalgebra dimensions differ"));
        }
        Ok(Self { algebra, coalgebra })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn with_negated_coalgebra(&self) -> Self {
        Self {
            algebra: self.algebra.clone(),
            coalgebra: self.coalgebra.neg(),
        }
    }
}

/// `e_i* ∘ e_j* = Σ_k δ(e_k)[i][j] e_k*`.
pub fn dual_quadri_of_coalgebra(c: &QuadriCoalgebra) -> QuadriAlgebra {
    let n = c.dim();
    let cube = |f: &Vec<TensorElement>| BilinearOp::from_fn(n, |i, j, k| f[k].coeffs().get(i, j).clone());
    QuadriAlgebra {
        nw: cube(&c.alpha),
        ne: cube(&c.beta),
        sw: cube(&c.alpha_t),
        se: cube(&c.beta_t),
    }
}

pub fn coalgebra_axiom_tag(a: usize) -> String {
    let [o1, o2, o3, o4] = QUADRI_AXIOMS[a];
    format!(
        "({}⊗1){} = (1⊗{}){}",
        co_symbol(o1),
        co_symbol(o2),
        co_symbol(o4),
        co_symbol(o3)
    )
}

/// Residual `R(e_s) ∈ A⊗A⊗A` of each of the nine coassociativity-type
/// identities; violations are indexed by `s` with the flattened tensor as
/// residual.
pub fn check_quadri_coalgebra(c: &QuadriCoalgebra) -> Report {
    let n = c.dim();
    let co: Vec<Vec<TensorElement>> = Op::ALL.iter().map(|&o| c.comult(o)).collect();
    let mut report = Report::new();
    for (a, ax) in QUADRI_AXIOMS.iter().enumerate() {
        let tag = coalgebra_axiom_tag(a);
        let [o1, o2, o3, o4] = ax.map(Op::index);
        for s in 0..n {
            let lhs = Tensor3::comult_first(&co[o1], &co[o2][s]);
            let rhs = Tensor3::comult_second(&co[o4], &co[o3][s]);
            report.check(&tag, &[s], lhs.sub(&rhs).flat().to_vec());
        }
    }
    report
}

#[derive(Clone, Copy, Debug)]
enum Arg {
    X,
    Y,
}

#[derive(Clone, Copy, Debug)]
enum Mult {
    L(Op, Arg),
    R(Op, Arg),
}

#[derive(Clone, Copy, Debug)]
enum Term {
    /// `sign · Δ_c(x ∘ y)`
    Prod(i8, Op, Op),
    /// `sign · (M ⊗ 1) [τ] Δ_c(arg)`
    Left(i8, Mult, Op, bool, Arg),
    /// `sign · (1 ⊗ M) [τ] Δ_c(arg)`
    Right(i8, Mult, Op, bool, Arg),
}

struct CompatEq {
    tag: &'static str,
    lhs: &'static [Term],
    rhs: &'static [Term],
}

use Arg::{X, Y};
use Mult::{L, R};
use Op::{Ne, Nw, Prec, Se, Star, Succ, Sw, Vee, Wedge};
use Term::{Left, Prod, Right};

const COMPAT: [CompatEq; 18] = [
    CompatEq {
        tag: "α̃(x★y) = (R∧(y)⊗1)α̃(x) + (1⊗L≻(x))α̃(y)",
        lhs: &[Prod(1, Sw, Star)],
        rhs: &[Left(1, R(Wedge, Y), Sw, false, X), Right(1, L(Succ, X), Sw, false, Y)],
    },
    CompatEq {
        tag: "β(x★y) = (R≺(y)⊗1)β(x) + (1⊗L∨(x))β(y)",
        lhs: &[Prod(1, Ne, Star)],
        rhs: &[Left(1, R(Prec, Y), Ne, false, X), Right(1, L(Vee, X), Ne, false, Y)],
    },
    CompatEq {
        tag: "(α+α̃)(x∧y) = (R∧(y)⊗1)(α+α̃)(x) + (1⊗L↗(x))α̃(y)",
        lhs: &[Prod(1, Prec, Wedge)],
        rhs: &[Left(1, R(Wedge, Y), Prec, false, X), Right(1, L(Ne, X), Sw, false, Y)],
    },
    CompatEq {
        tag: "(β+β̃)(x∧y) = (R↖(y)⊗1)(β+β̃)(x) + (1⊗L∧(x))β̃(y)",
        lhs: &[Prod(1, Succ, Wedge)],
        rhs: &[Left(1, R(Nw, Y), Succ, false, X), Right(1, L(Wedge, X), Se, false, Y)],
    },
    CompatEq {
        tag: "(β+β̃)(x∨y) = (1⊗L∨(x))(β+β̃)(y) + (R↙(y)⊗1)β(x)",
        lhs: &[Prod(1, Succ, Vee)],
        rhs: &[Right(1, L(Vee, X), Succ, false, Y), Left(1, R(Sw, Y), Ne, false, X)],
    },
    CompatEq {
        tag: "(α+α̃)(x∨y) = (1⊗L↘(x))(α+α̃)(y) + (R∨(y)⊗1)α(x)",
        lhs: &[Prod(1, Prec, Vee)],
        rhs: &[Right(1, L(Se, X), Prec, false, Y), Left(1, R(Vee, Y), Nw, false, X)],
    },
    CompatEq {
        tag: "(α+β)(x≻y) = (1⊗L↘(x))(α+β)(y) + (R≻(y)⊗1)α(x)",
        lhs: &[Prod(1, Wedge, Succ)],
        rhs: &[Right(1, L(Se, X), Wedge, false, Y), Left(1, R(Succ, Y), Nw, false, X)],
    },
    CompatEq {
        tag: "(α̃+β̃)(x≻y) = (1⊗L≻(x))(α̃+β̃)(y) + (R↗(y)⊗1)α̃(x)",
        lhs: &[Prod(1, Vee, Succ)],
        rhs: &[Right(1, L(Succ, X), Vee, false, Y), Left(1, R(Ne, Y), Sw, false, X)],
    },
    CompatEq {
        tag: "(α+β)(x≺y) = (R≺(y)⊗1)(α+β)(x) + (1⊗L↙(x))β(y)",
        lhs: &[Prod(1, Wedge, Prec)],
        rhs: &[Left(1, R(Prec, Y), Wedge, false, X), Right(1, L(Sw, X), Ne, false, Y)],
    },
    CompatEq {
        tag: "(α̃+β̃)(x≺y) = (R↖(y)⊗1)(α̃+β̃)(x) + (1⊗L≺(x))β̃(y)",
        lhs: &[Prod(1, Vee, Prec)],
        rhs: &[Left(1, R(Nw, Y), Vee, false, X), Right(1, L(Prec, X), Se, false, Y)],
    },
    CompatEq {
        tag: "(1⊗L≻(y) - R∧(y)⊗1)τβ(x) = (1⊗R≺(x) - L∨(x)⊗1)α̃(y)",
        lhs: &[Right(1, L(Succ, Y), Ne, true, X), Left(-1, R(Wedge, Y), Ne, true, X)],
        rhs: &[Right(1, R(Prec, X), Sw, false, Y), Left(-1, L(Vee, X), Sw, false, Y)],
    },
    CompatEq {
        tag: "(1⊗R↖(x) - L∨(x)⊗1)(α+α̃)(y) = (1⊗L↗(y))τβ(x) - (R∨(y)⊗1)τβ̃(x)",
        lhs: &[Right(1, R(Nw, X), Prec, false, Y), Left(-1, L(Vee, X), Prec, false, Y)],
        rhs: &[Right(1, L(Ne, Y), Ne, true, X), Left(-1, R(Vee, Y), Se, true, X)],
    },
    CompatEq {
        tag: "(R∧(y)⊗1 - 1⊗L↘(y))(τβ+τβ̃)(x) = (L∧(x)⊗1)α(y) - (1⊗R↙(x))α̃(y)",
        lhs: &[Left(1, R(Wedge, Y), Succ, true, X), Right(-1, L(Se, Y), Succ, true, X)],
        rhs: &[Left(1, L(Wedge, X), Nw, false, Y), Right(-1, R(Sw, X), Sw, false, Y)],
    },
    CompatEq {
        tag: "(1⊗L≻(x) - R↖(x)⊗1)(τα+τβ)(y) = (1⊗R≻(y))β̃(x) - (L↙(y)⊗1)α̃(x)",
        lhs: &[Right(1, L(Succ, X), Wedge, true, Y), Left(-1, R(Nw, X), Wedge, true, Y)],
        rhs: &[Right(1, R(Succ, Y), Se, false, X), Left(-1, L(Sw, Y), Sw, false, X)],
    },
    CompatEq {
        tag: "(1⊗L↘(x) - R≺(x)⊗1)(τα̃+τβ̃)(y) = (1⊗R↗(y))β(x) - (L≺(y)⊗1)α(x)",
        lhs: &[Right(1, L(Se, X), Vee, true, Y), Left(-1, R(Prec, X), Vee, true, Y)],
        rhs: &[Right(1, R(Ne, Y), Ne, false, X), Left(-1, L(Prec, Y), Nw, false, X)],
    },
    CompatEq {
        tag: "(α+β+α̃+β̃)(x↙y) = (R↙(y)⊗1)(α+β)(x) + (1⊗L↙(x))(β+β̃)(y)",
        lhs: &[Prod(1, Star, Sw)],
        rhs: &[Left(1, R(Sw, Y), Wedge, false, X), Right(1, L(Sw, X), Succ, false, Y)],
    },
    CompatEq {
        tag: "(α+β+α̃+β̃)(x↗y) = (R↗(y)⊗1)(α+α̃)(x) + (1⊗L↗(x))(α̃+β̃)(y)",
        lhs: &[Prod(1, Star, Ne)],
        rhs: &[Left(1, R(Ne, Y), Prec, false, X), Right(1, L(Ne, X), Vee, false, Y)],
    },
    CompatEq {
        tag: "(L↙(y)⊗1)(α+α̃)(x) + (1⊗L↗(x))(τα+τβ)(y) = (R↙(x)⊗1)(τα̃+τβ̃)(y) + (1⊗R↗(y))(β+β̃)(x)",
        lhs: &[Left(1, L(Sw, Y), Prec, false, X), Right(1, L(Ne, X), Wedge, true, Y)],
        rhs: &[Left(1, R(Sw, X), Vee, true, Y), Right(1, R(Ne, Y), Succ, false, X)],
    },
];

/// Tags of the eighteen compatibility identities, in order.
pub fn compat_tags() -> Vec<&'static str> {
    COMPAT.iter().map(|e| e.tag).collect()
}

struct Mults {
    left: Vec<MapFamily>,
    right: Vec<MapFamily>,
}

impl Mults {
    fn new(q: &QuadriAlgebra) -> Self {
        Self {
            left: Op::ALL.iter().map(|&o| q.left(o)).collect(),
            right: Op::ALL.iter().map(|&o| q.right(o)).collect(),
        }
    }

    fn get(&self, m: Mult, i: usize, j: usize) -> &Matrix {
        let pick = |a: Arg| match a {
            X => i,
            Y => j,
        };
        match m {
            L(o, a) => self.left[o.index()].at(pick(a)),
            R(o, a) => self.right[o.index()].at(pick(a)),
        }
    }
}

/// The eighteen compatibility identities on every basis pair `(x, y)`.
pub fn check_bialgebra_compat(b: &QuadriBialgebra) -> Result<Report> {
    let q = &b.algebra;
    let n = q.dim();
    if b.coalgebra.dim() != n {
        return Err(Error::shape("algebra and coalgebra dimensions differ"));
    }
    let mults = Mults::new(q);
    let ops = q.all_ops();
    let co: Vec<Vec<TensorElement>> = Op::ALL.iter().map(|&o| b.coalgebra.comult(o)).collect();
    let eval = |t: &Term, i: usize, j: usize| -> Matrix {
        let pick = |a: Arg| match a {
            X => i,
            Y => j,
        };
        let (sign, m) = match *t {
            Prod(sign, c, o) => {
                let v = ops[o.index()].basis_product(i, j);
                let mut acc = Matrix::zeros(n, n);
                for (k, vk) in v.iter().enumerate() {
                    if !vk.is_zero() {
                        acc = acc.add(&co[c.index()][k].coeffs().scale(vk));
                    }
                }
                (sign, acc)
            }
            Left(sign, mult, c, tw, a) | Right(sign, mult, c, tw, a) => {
                let base = co[c.index()][pick(a)].coeffs();
                let t_base = if tw { base.transpose() } else { base.clone() };
                let m = mults.get(mult, i, j);
                let out = match t {
                    Left(..) => m.mul(&t_base),
                    _ => t_base.mul(&m.transpose()),
                };
                (sign, out)
            }
        };
        if sign < 0 {
            m.neg()
        } else {
            m
        }
    };
    let mut report = Report::new();
    for eq in COMPAT.iter() {
        for i in 0..n {
            for j in 0..n {
                let mut acc = Matrix::zeros(n, n);
                for t in eq.lhs {
                    acc = acc.add(&eval(t, i, j));
                }
                for t in eq.rhs {
                    acc = acc.sub(&eval(t, i, j));
                }
                report.check(eq.tag, &[i, j], acc.entries().to_vec());
            }
        }
    }
    Ok(report)
}

fn require_dim(q: &QuadriAlgebra, r: &TensorElement) -> Result<()> {
    if q.dim() != r.dim() {
        return Err(Error::shape(format!(
            "tensor dimension {} differs from algebra dimension {}",
            r.dim(),
            q.dim()
        )));
    }
    Ok(())
}

/// `α(x) = (-1⊗L↘(x) + R★(x)⊗1)r`, `β(x) = (1⊗L∨(x) - R≺(x)⊗1)r`,
/// `α̃(x) = (1⊗L≻(x) - R∧(x)⊗1)r`, `β̃(x) = (-1⊗L★(x) + R↖(x)⊗1)r`.
pub fn coboundary_comults(q: &QuadriAlgebra, r: &TensorElement) -> Result<QuadriCoalgebra> {
    require_dim(q, r)?;
    let n = q.dim();
    let c = r.coeffs();
    let m = Mults::new(q);
    let fam = |lo: Op, lsign: bool, ro: Op| -> Vec<TensorElement> {
        (0..n)
            .map(|s| {
                let left_part = c.mul(&m.left[lo.index()].at(s).transpose());
                let right_part = m.right[ro.index()].at(s).mul(c);
                let coeffs = if lsign {
                    left_part.sub(&right_part)
                } else {
                    right_part.sub(&left_part)
                };
                TensorElement::new(coeffs).unwrap()
            })
            .collect()
    };
    Ok(QuadriCoalgebra {
        alpha: fam(Se, false, Star),
        beta: fam(Vee, true, Prec),
        alpha_t: fam(Succ, true, Wedge),
        beta_t: fam(Star, false, Nw),
    })
}

pub fn coboundary_bialgebra(q: &QuadriAlgebra, r: &TensorElement) -> Result<QuadriBialgebra> {
    Ok(QuadriBialgebra {
        algebra: q.clone(),
        coalgebra: coboundary_comults(q, r)?,
    })
}

/// `[Q₁¹, Q₁², Q₂¹, Q₂², Q₃¹, Q₃²]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QTensors(pub [Tensor3; 6]);

pub const Q_NAMES: [&str; 6] = ["Q₁¹", "Q₁²", "Q₂¹", "Q₂²", "Q₃¹", "Q₃²"];

impl QTensors {
    pub fn get(&self, i: usize, j: usize) -> &Tensor3 {
        &self.0[2 * (i - 1) + (j - 1)]
    }

    pub fn all_zero(&self) -> bool {
        self.0.iter().all(Tensor3::is_zero)
    }

    pub fn pair_zero(&self, i: usize) -> bool {
        self.get(i, 1).is_zero() && self.get(i, 2).is_zero()
    }
}

pub fn q_tensors(q: &QuadriAlgebra, r: &TensorElement) -> Result<QTensors> {
    use Placement::{P12, P13, P23};
    require_dim(q, r)?;
    let d = crate::quadri::derived_ops(q);
    let lp = |u: Placement, v: Placement, op: &BilinearOp| leg_product(&leg_embed(r, u), &leg_embed(r, v), op);
    let q11 = lp(P23, P12, &d.wedge)?.sub(&lp(P13, P23, &d.succ)?).add(&lp(P12, P13, &q.sw)?);
    let q12 = lp(P23, P12, &d.vee)?.sub(&lp(P12, P13, &d.prec)?).add(&lp(P13, P23, &q.ne)?);
    let q21 = lp(P12, P13, &d.wedge)?.sub(&lp(P23, P12, &d.succ)?).sub(&lp(P13, P23, &q.sw)?);
    let q22 = lp(P12, P13, &d.vee)?.add(&lp(P13, P23, &d.prec)?).add(&lp(P23, P12, &q.ne)?);
    let q31 = lp(P13, P23, &d.wedge)?.add(&lp(P12, P13, &d.succ)?).add(&lp(P23, P12, &q.sw)?);
    let q32 = lp(P13, P23, &d.vee)?.sub(&lp(P23, P12, &d.prec)?).sub(&lp(P12, P13, &q.ne)?);
    Ok(QTensors([q11, q12, q21, q22, q31, q32]))
}

fn push_tensor(report: &mut Report, tag: &str, t: &Tensor3) {
    for ((i, j, k), c) in t.nonzero_terms() {
        report.push(tag, vec![i, j, k], vec![c.clone()]);
    }
}

/// Passes iff `Q₁¹ = Q₁² = 0`; non-skewness is reported as a note.
pub fn check_q_equation(q: &QuadriAlgebra, r: &TensorElement) -> Result<Report> {
    let qt = q_tensors(q, r)?;
    let mut report = Report::new();
    push_tensor(&mut report, Q_NAMES[0], qt.get(1, 1));
    push_tensor(&mut report, Q_NAMES[1], qt.get(1, 2));
    if !r.is_skew() {
        report.note("r is not skew-symmetric");
    }
    Ok(report)
}

/// `(sign, Q index)` terms of one condition.
type SignedTerms = &'static [(i8, usize)];

/// `(L, R, terms)` for the nine conditions
/// `(1⊗1⊗L(x) - R(x)⊗1⊗1)(Σ ±Q) = 0`.
const COBOUNDARY_CONDITIONS: [(Op, Op, SignedTerms); 9] = [
    (Se, Star, &[(1, 1), (-1, 4)]),
    (Se, Prec, &[(1, 1)]),
    (Vee, Prec, &[(1, 4)]),
    (Se, Wedge, &[(1, 2)]),
    (Se, Nw, &[(1, 2), (1, 5)]),
    (Vee, Nw, &[(1, 5)]),
    (Succ, Wedge, &[(1, 3)]),
    (Succ, Nw, &[(1, 0)]),
    (Star, Nw, &[(1, 4), (1, 5)]),
];

pub fn coboundary_condition_tag(c: usize) -> String {
    let (lo, ro, combo) = COBOUNDARY_CONDITIONS[c];
    let mut qs = String::new();
    for (pos, &(sign, k)) in combo.iter().enumerate() {
        if pos > 0 {
            qs.push_str(if sign < 0 { " - " } else { " + " });
        }
        qs.push_str(Q_NAMES[k]);
    }
    let qs = if combo.len() > 1 { format!("({qs})") } else { qs };
    format!("(1⊗1⊗L{}(x) - R{}(x)⊗1⊗1){}", lo.symbol(), ro.symbol(), qs)
}

/// The nine operator-applied Q-tensor conditions on every basis `x`.
pub fn check_coboundary_coalgebra(q: &QuadriAlgebra, r: &TensorElement) -> Result<Report> {
    let qt = q_tensors(q, r)?;
    let n = q.dim();
    let m = Mults::new(q);
    let mut report = Report::new();
    for (c, &(lo, ro, combo)) in COBOUNDARY_CONDITIONS.iter().enumerate() {
        let mut t = Tensor3::zero(n);
        for &(sign, k) in combo {
            t = if sign < 0 { t.sub(&qt.0[k]) } else { t.add(&qt.0[k]) };
        }
        let tag = coboundary_condition_tag(c);
        for s in 0..n {
            let res = t
                .apply_leg(2, m.left[lo.index()].at(s))
                .sub(&t.apply_leg(0, m.right[ro.index()].at(s)));
            report.check(&tag, &[s], res.flat().to_vec());
        }
    }
    Ok(report)
}

fn check_bialgebra_all(b: &QuadriBialgebra) -> Result<Report> {
    let mut report = Report::new();
    report.merge_prefixed("quadri", check_quadri(&b.algebra));
    report.merge_prefixed("coalgebra", check_quadri_coalgebra(&b.coalgebra));
    report.merge_prefixed("compat", check_bialgebra_compat(b)?);
    Ok(report)
}

/// Algebra, coalgebra and compatibility checks together.
pub fn check_bialgebra(b: &QuadriBialgebra) -> Result<Report> {
    check_bialgebra_all(b)
}

fn dual_bialgebra_unchecked(b: &QuadriBialgebra) -> QuadriBialgebra {
    QuadriBialgebra {
        algebra: dual_quadri_of_coalgebra(&b.coalgebra),
        coalgebra: QuadriCoalgebra::from_dual_algebra(&b.algebra),
    }
}

/// `(A*, α*, β*, α̃*, β̃*, γ, δ, γ̃, δ̃)` with `γ* = ↖`, `δ* = ↗`,
/// `γ̃* = ↙`, `δ̃* = ↘`.
pub fn dual_bialgebra(b: &QuadriBialgebra) -> Result<QuadriBialgebra> {
    let report = check_bialgebra_all(b)?;
    if !report.passed() {
        return Err(Error::precondition("not a quadri-bialgebra", report));
    }
    Ok(dual_bialgebra_unchecked(b))
}

/// `r = Σ e_i ⊗ e_i*` on `A ⊕ A*`.
pub fn canonical_r(n: usize) -> TensorElement {
    let mut m = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        m.set(i, n + i, num::One::one());
    }
    TensorElement::new(m).unwrap()
}

/// `r̃ = Σ e_i* ⊗ e_i` on `A ⊕ A*`.
pub fn canonical_r_tilde(n: usize) -> TensorElement {
    twist_of(&canonical_r(n))
}

fn twist_of(r: &TensorElement) -> TensorElement {
    crate::exactlin::twist(r)
}

/// The quadri-algebra of the Drinfeld double on `A ⊕ A*` (no validation).
pub fn double_algebra(b: &QuadriBialgebra) -> Result<QuadriAlgebra> {
    let dual = dual_quadri_of_coalgebra(&b.coalgebra);
    let pair = QuadriMatchedPair {
        a_on_b: dual_quadri_bimodule(&QuadriBimodule::regular(&b.algebra)),
        b_on_a: dual_quadri_bimodule(&QuadriBimodule::regular(&dual)),
        a: b.algebra.clone(),
        b: dual,
    };
    Ok(crate::quadri::build_quadri_bowtie(&pair)?.0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrinfeldDouble {
    pub algebra: QuadriAlgebra,
    pub coalgebra: QuadriCoalgebra,
    pub report: Report,
}

impl DrinfeldDouble {
    pub fn bialgebra(&self) -> QuadriBialgebra {
        QuadriBialgebra {
            algebra: self.algebra.clone(),
            coalgebra: self.coalgebra.clone(),
        }
    }
}

fn inclusion(n: usize, second: bool) -> LinearMap {
    LinearMap::new(Matrix::from_fn(2 * n, n, |i, j| {
        let target = if second { n + j } else { j };
        if i == target {
            num::One::one()
        } else {
            Zero::zero()
        }
    }))
}

pub fn drinfeld_double(b: &QuadriBialgebra) -> Result<DrinfeldDouble> {
    drinfeld_double_with(b, Executor::default())
}

/// Builds the double and certifies it: quadri axioms, coalgebra axioms,
/// compatibility, both Manin triples, and the inclusions `i₁` from
/// `(A, -α, -β, -α̃, -β̃)` and `i₂` from the dual bialgebra.
pub fn drinfeld_double_with(b: &QuadriBialgebra, exec: Executor) -> Result<DrinfeldDouble> {
    let input = check_bialgebra_all(b)?;
    if !input.passed() {
        return Err(Error::precondition("input is not a quadri-bialgebra", input));
    }
    let n = b.dim();
    let algebra = double_algebra(b)?;
    let coalgebra = coboundary_comults(&algebra, &canonical_r(n))?;
    let double = QuadriBialgebra {
        algebra: algebra.clone(),
        coalgebra: coalgebra.clone(),
    };
    let structural = || -> Result<Report> {
        let (bi, manin) = exec.join(
            || check_bialgebra_all(&double),
            || -> Result<Report> {
                let mut r = Report::new();
                r.merge_prefixed("manin quadri", check_manin_quadri(&algebra, n)?);
                r.merge_prefixed(
                    "manin dendriform",
                    check_manin_dd(&project_dd(&algebra, Projection::Vertical), n)?,
                );
                Ok(r)
            },
        );
        let mut r = bi?;
        r.merge(manin?);
        Ok(r)
    };
    let morphisms = || -> Result<Report> {
        let negated = b.with_negated_coalgebra();
        let dual = dual_bialgebra_unchecked(b);
        let mut r = Report::new();
        r.merge_prefixed(
            "i1",
            check_homomorphism(
                &inclusion(n, false),
                Structure::QuadriBialgebra(&negated),
                Structure::QuadriBialgebra(&double),
            )?,
        );
        r.merge_prefixed(
            "i2",
            check_homomorphism(
                &inclusion(n, true),
                Structure::QuadriBialgebra(&dual),
                Structure::QuadriBialgebra(&double),
            )?,
        );
        Ok(r)
    };
    let (a, m) = exec.join(structural, morphisms);
    let mut report = a?;
    report.merge(m?);
    Ok(DrinfeldDouble {
        algebra,
        coalgebra,
        report,
    })
}

fn require_skew_solution(q: &QuadriAlgebra, r: &TensorElement) -> Result<()> {
    require_dim(q, r)?;
    let qeq = check_q_equation(q, r)?;
    if !r.is_skew() {
        return Err(Error::precondition("r is not skew-symmetric", qeq));
    }
    if !qeq.passed() {
        return Err(Error::precondition("r does not solve the Q-equation", qeq));
    }
    Ok(())
}

/// The Drinfeld double of the coboundary bialgebra of a skew Q-solution,
/// assembled directly from `T_r`.
pub fn double_from_r(q: &QuadriAlgebra, r: &TensorElement) -> Result<QuadriAlgebra> {
    require_skew_solution(q, r)?;
    Ok(double_from_r_unchecked(q, r))
}

pub(crate) fn double_from_r_unchecked(q: &QuadriAlgebra, r: &TensorElement) -> QuadriAlgebra {
    let n = q.dim();
    let t = r.coeffs();
    let lt: Vec<MapFamily> = Op::ALL.iter().map(|&o| q.left(o).dual()).collect();
    let rt: Vec<MapFamily> = Op::ALL.iter().map(|&o| q.right(o).dual()).collect();
    let ls = |o: Op, v: &[crate::exactlin::Scalar]| lt[o.index()].eval(v);
    let rs = |o: Op, v: &[crate::exactlin::Scalar]| rt[o.index()].eval(v);
    let ops = q.base();
    let tv = |v: &[crate::exactlin::Scalar]| t.mul_vec(v);
    let join = |x: Vector, a: Vector| -> Vector { x.into_iter().chain(a).collect() };
    let zero = || crate::exactlin::zero_vec(n);
    let neg = |v: Vector| v.into_iter().map(|c| -c).collect::<Vector>();
    let e = |i: usize| basis_vec(n, i);

    // (R-dual op, L-dual op, sign) for a*∘b* = s·(R*(Ta)b + L*(Tb)a)
    let dual_dual: [(Op, Op, bool); 4] = [(Se, Star, true), (Vee, Prec, false), (Succ, Wedge, false), (Star, Nw, true)];

    let cubes: Vec<BilinearOp> = (0..4)
        .map(|k| {
            let op = ops[k];
            let (r_op, l_op, positive) = dual_dual[k];
            let product = |u: usize, v: usize| -> Vector {
                match (u < n, v < n) {
                    (true, true) => join(op.basis_product(u, v), zero()),
                    (false, false) => {
                        let (a, b) = (e(u - n), e(v - n));
                        let w = crate::exactlin::vec_add(
                            &rs(r_op, &tv(&a)).mul_vec(&b),
                            &ls(l_op, &tv(&b)).mul_vec(&a),
                        );
                        join(zero(), if positive { w } else { neg(w) })
                    }
                    (false, true) => {
                        // a*∘x
                        let (a, x) = (e(u - n), e(v));
                        let d = ls(l_op, &x).mul_vec(&a);
                        let d = if positive { d } else { neg(d) };
                        let a_part = vec_sub(&op.apply(&tv(&a), &x), &tv(&d));
                        join(a_part, d)
                    }
                    (true, false) => {
                        // x∘a*
                        let (x, a) = (e(u), e(v - n));
                        let d = rs(r_op, &x).mul_vec(&a);
                        let d = if positive { d } else { neg(d) };
                        let a_part = vec_sub(&op.apply(&x, &tv(&a)), &tv(&d));
                        join(a_part, d)
                    }
                }
            };
            let mut c = BilinearOp::zero(2 * n);
            for u in 0..2 * n {
                for v in 0..2 * n {
                    for (k2, val) in product(u, v).into_iter().enumerate() {
                        *c.entry_mut(u, v, k2) = val;
                    }
                }
            }
            c
        })
        .collect();
    let [nw, ne, sw, se]: [BilinearOp; 4] = cubes.try_into().unwrap();
    QuadriAlgebra { nw, ne, sw, se }
}

/// Verdicts of the graph characterization of Q-solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCheck {
    /// Graph of `T` is isotropic (hence Lagrangian) under `𝔅_S`.
    pub lagrangian: bool,
    /// Graph of `T` is closed under all four products of `A ⋉ A*`.
    pub closed: bool,
    /// The tensor of `T` is skew and solves the Q-equation.
    pub q_solution: bool,
    /// `θ(x, a*) = (x + T a*, a*)` is an isomorphism from the double to
    /// `A ⋉ A*`; `None` when the double is undefined.
    pub theta: Option<bool>,
    pub report: Report,
}

impl GraphCheck {
    /// The three verdicts agree and θ, when defined, is an isomorphism.
    pub fn consistent(&self) -> bool {
        let both = self.lagrangian && self.closed;
        both == self.q_solution && self.theta != Some(false)
    }
}

/// The semidirect sum `A ⋉ A*` by the dual of the regular bimodule.
pub fn dual_semidirect(q: &QuadriAlgebra) -> QuadriAlgebra {
    semidirect_sum_unchecked(q, &dual_quadri_bimodule(&QuadriBimodule::regular(q)))
        .expect("regular dual bimodule has matching shapes")
}

pub fn graph_lagrangian_check(q: &QuadriAlgebra, t: &LinearMap) -> Result<GraphCheck> {
    let n = q.dim();
    if t.src_dim() != n || t.dst_dim() != n {
        return Err(Error::shape("T must map A* to A"));
    }
    let s = dual_semidirect(q);
    let tm = t.matrix();
    let graph: Vec<Vector> = (0..n)
        .map(|j| tm.column(j).into_iter().chain(basis_vec(n, j)).collect())
        .collect();
    let mut report = Report::new();
    let form = BilinearForm::hyperbolic(n);
    for i in 0..n {
        for j in 0..n {
            report.check(
                "graph isotropic: 𝔅_S(g_i,g_j) = 0",
                &[i, j],
                vec![form.eval(&graph[i], &graph[j])],
            );
        }
    }
    let lagrangian = report.passed();
    for (name, op) in s.named_ops() {
        let tag = format!("graph closed under {name}");
        for i in 0..n {
            for j in 0..n {
                let p = op.apply(&graph[i], &graph[j]);
                let (x, a) = p.split_at(n);
                report.check(&tag, &[i, j], vec_sub(x, &tm.mul_vec(a)));
            }
        }
    }
    let closed = !report.has_tag_prefix("graph closed");
    let r = TensorElement::new(tm.clone())?;
    let qeq = check_q_equation(q, &r)?;
    let q_solution = qeq.passed() && r.is_skew();
    report.merge_prefixed("q-equation", qeq);
    if !r.is_skew() {
        report.push("q-equation: r skew-symmetric", vec![], vec![]);
    }
    let theta = if q_solution {
        let double = double_from_r_unchecked(q, &r);
        let theta_map = LinearMap::new(Matrix::block(
            &Matrix::identity(n),
            tm,
            &Matrix::zeros(n, n),
            &Matrix::identity(n),
        ));
        let hom = check_homomorphism(&theta_map, Structure::Quadri(&double), Structure::Quadri(&s))?;
        let ok = hom.passed();
        report.merge_prefixed("θ", hom);
        Some(ok)
    } else {
        None
    };
    let check = GraphCheck {
        lagrangian,
        closed,
        q_solution,
        theta,
        report,
    };
    let mut check = check;
    if (check.lagrangian && check.closed) != check.q_solution {
        check.report.push("co-occurrence", vec![], vec![]);
    }
    Ok(check)
}

/// `T_r` as a homomorphism from the dual bialgebra to
/// `(A, -α, -β, -α̃, -β̃)`, and for skew `r` the map
/// `T̃_r(x + a*) = x + T_r(a*)` from the tilde-double to `(A, α, β, α̃, β̃)`.
pub fn t_r_morphism_checks(q: &QuadriAlgebra, r: &TensorElement) -> Result<Report> {
    let qt = q_tensors(q, r)?;
    if !qt.all_zero() {
        let mut pre = Report::new();
        for (k, t) in qt.0.iter().enumerate() {
            push_tensor(&mut pre, Q_NAMES[k], t);
        }
        return Err(Error::precondition("r does not solve all six Q-equations", pre));
    }
    let n = q.dim();
    let cob = coboundary_bialgebra(q, r)?;
    let t = LinearMap::new(r.coeffs().clone());
    let mut report = Report::new();
    report.merge_prefixed(
        "T_r",
        check_homomorphism(
            &t,
            Structure::QuadriBialgebra(&dual_bialgebra_unchecked(&cob)),
            Structure::QuadriBialgebra(&cob.with_negated_coalgebra()),
        )?,
    );
    if r.is_skew() {
        let algebra = double_from_r_unchecked(q, r);
        let coalgebra = coboundary_comults(&algebra, &canonical_r_tilde(n))?;
        let tilde = QuadriBialgebra { algebra, coalgebra };
        let mut m = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            m.set(i, i, num::One::one());
            for j in 0..n {
                m.set(i, n + j, r.coeffs().get(i, j).clone());
            }
        }
        report.merge_prefixed(
            "T̃_r",
            check_homomorphism(
                &LinearMap::new(m),
                Structure::QuadriBialgebra(&tilde),
                Structure::QuadriBialgebra(&cob),
            )?,
        );
    } else {
        report.note("r is not skew-symmetric; the tilde-double part is skipped");
    }
    Ok(report)
}

/// `true` when every entry of the vector is zero.
pub fn is_zero_vector(v: &[crate::exactlin::Scalar]) -> bool {
    is_zero_vec(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;

    fn se1() -> QuadriAlgebra {
        let mut q = QuadriAlgebra::zero(1);
        *q.se.entry_mut(0, 0, 0) = int(1);
        q
    }

    fn one(c: i64) -> TensorElement {
        TensorElement::new(Matrix::from_i64(&[&[c]])).unwrap()
    }

    #[test]
    fn dual_of_coalgebra_examples() {
        assert!(dual_quadri_of_coalgebra(&QuadriCoalgebra::zero(2)).is_zero());
        let mut c = QuadriCoalgebra::zero(1);
        c.alpha[0] = one(1);
        let q = dual_quadri_of_coalgebra(&c);
        assert_eq!(q.nw.get(0, 0, 0), &int(1));
        assert!(q.ne.is_zero() && q.sw.is_zero() && q.se.is_zero());
        assert_eq!(QuadriCoalgebra::from_dual_algebra(&q), c);
    }

    #[test]
    fn coalgebra_examples() {
        assert!(check_quadri_coalgebra(&QuadriCoalgebra::zero(2)).passed());
        let mut c = QuadriCoalgebra::zero(1);
        c.beta_t[0] = one(1);
        assert!(check_quadri_coalgebra(&c).passed());
        c.alpha[0] = one(1);
        let r = check_quadri_coalgebra(&c);
        assert!(r.tags().contains(coalgebra_axiom_tag(0).as_str()));
    }

    #[test]
    fn coboundary_dim1_hand_values() {
        let c = coboundary_comults(&se1(), &one(3)).unwrap();
        assert_eq!(c.alpha[0], one(0));
        assert_eq!(c.beta[0], one(3));
        assert_eq!(c.alpha_t[0], one(3));
        assert_eq!(c.beta_t[0], one(-3));
        assert!(coboundary_comults(&se1(), &one(0)).unwrap().is_zero());
        let z = QuadriAlgebra::zero(2);
        let r = TensorElement::new(Matrix::from_i64(&[&[1, 2], &[3, 4]])).unwrap();
        assert!(coboundary_comults(&z, &r).unwrap().is_zero());
    }

    #[test]
    fn compat_trivial_cases() {
        let b = QuadriBialgebra::new(se1(), QuadriCoalgebra::zero(1)).unwrap();
        assert!(check_bialgebra_compat(&b).unwrap().passed());
        assert_eq!(compat_tags().len(), 18);
    }

    #[test]
    fn q_tensors_vanish_trivially() {
        let z = QuadriAlgebra::zero(2);
        let r = TensorElement::new(Matrix::from_i64(&[&[1, 2], &[3, 4]])).unwrap();
        assert!(q_tensors(&z, &r).unwrap().all_zero());
        assert!(q_tensors(&se1(), &TensorElement::zero(1)).unwrap().all_zero());
        assert!(check_q_equation(&z, &r).unwrap().passed());
        assert!(check_coboundary_coalgebra(&z, &r).unwrap().passed());
    }

    #[test]
    fn double_of_se1() {
        let b = QuadriBialgebra::new(se1(), QuadriCoalgebra::zero(1)).unwrap();
        let d = drinfeld_double(&b).unwrap();
        assert!(d.report.passed(), "{}", d.report.render_text(Some(1)));
        assert_eq!(d.algebra.dim(), 2);
        // A*-products vanish
        for op in d.algebra.base() {
            assert!(op.basis_product(1, 1).iter().all(|c| c.is_zero()));
        }
        let direct = double_from_r(&se1(), &TensorElement::zero(1)).unwrap();
        assert_eq!(direct, d.algebra);
    }

    #[test]
    fn zero_double() {
        let b = QuadriBialgebra::new(QuadriAlgebra::zero(2), QuadriCoalgebra::zero(2)).unwrap();
        let d = drinfeld_double(&b).unwrap();
        assert!(d.algebra.is_zero() && d.coalgebra.is_zero() && d.report.passed());
    }

    #[test]
    fn dual_bialgebra_examples() {
        let b = QuadriBialgebra::new(se1(), QuadriCoalgebra::zero(1)).unwrap();
        let d = dual_bialgebra(&b).unwrap();
        assert!(d.algebra.is_zero());
        assert_eq!(d.coalgebra.beta_t[0], one(1));
        assert!(d.coalgebra.alpha[0].is_zero());
        assert_eq!(dual_bialgebra(&d).unwrap(), b);
    }

    #[test]
    fn graph_trivial_and_symmetric() {
        let g = graph_lagrangian_check(&se1(), &LinearMap::new(Matrix::zeros(1, 1))).unwrap();
        assert!(g.lagrangian && g.closed && g.q_solution && g.theta == Some(true));
        assert!(g.report.passed());
        let z = QuadriAlgebra::zero(2);
        let sym = LinearMap::new(Matrix::from_i64(&[&[1, 0], &[0, 0]]));
        let g = graph_lagrangian_check(&z, &sym).unwrap();
        assert!(!g.lagrangian && !g.q_solution && g.consistent());
        assert!(g.report.has_tag_prefix("q-equation: r skew"));
    }

    #[test]
    fn t_r_trivial() {
        assert!(t_r_morphism_checks(&se1(), &TensorElement::zero(1)).unwrap().passed());
        let z = QuadriAlgebra::zero(2);
        let r = TensorElement::new(Matrix::from_i64(&[&[0, 5], &[-5, 0]])).unwrap();
        assert!(t_r_morphism_checks(&z, &r).unwrap().passed());
    }
}
