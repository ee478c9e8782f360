//! Dendriform dialgebras, their bimodules, 2-cocycles, matched pairs and
//! Manin triples.

use num::Zero;

use crate::bialgebra::QuadriBialgebra;
use crate::error::{Error, Result};
use crate::exactlin::{
    basis_vec, dot, is_isotropic, vec_add, vec_sub, zero_vec, BilinearForm, BilinearOp, LinearMap, MapFamily,
    Matrix, Scalar, Vector,
};
use crate::quadri::QuadriAlgebra;
use crate::report::Report;

/// The two dendriform operations and their sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DOp {
    Prec,
    Succ,
    Star,
}

impl DOp {
    pub fn symbol(self) -> &'static str {
        match self {
            DOp::Prec => "≺",
            DOp::Succ => "≻",
            DOp::Star => "★",
        }
    }
}

/// `(x op1 y) op2 z = x op3 (y op4 z)`
pub(crate) const DD_AXIOMS: [[DOp; 4]; 3] = [
    [DOp::Prec, DOp::Prec, DOp::Prec, DOp::Star],
    [DOp::Succ, DOp::Prec, DOp::Succ, DOp::Prec],
    [DOp::Star, DOp::Succ, DOp::Succ, DOp::Succ],
];

pub(crate) fn axiom_tag(s: [&str; 4]) -> String {
    format!("(x{}y){}z = x{}(y{}z)", s[0], s[1], s[2], s[3])
}

/// Residual of `(e_i c1 e_j) c2 e_k - e_i c3 (e_j c4 e_k)`.
pub(crate) fn axiom_residual(c: [&BilinearOp; 4], i: usize, j: usize, k: usize) -> Vector {
    let n = c[0].dim();
    let mut out = zero_vec(n);
    for m in 0..n {
        let a = c[0].get(i, j, m);
        if !a.is_zero() {
            for t in 0..n {
                let b = c[1].get(m, k, t);
                if !b.is_zero() {
                    out[t] += a * b;
                }
            }
        }
        let a = c[3].get(j, k, m);
        if !a.is_zero() {
            for t in 0..n {
                let b = c[2].get(i, m, t);
                if !b.is_zero() {
                    out[t] -= a * b;
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DendriformAlgebra {
    pub prec: BilinearOp,
    pub succ: BilinearOp,
}

impl DendriformAlgebra {
    pub fn new(prec: BilinearOp, succ: BilinearOp) -> Result<Self> {
        if prec.dim() != succ.dim() || prec.dim() == 0 {
            return Err(Error::shape("dendriform cubes must share a positive dimension"));
        }
        Ok(Self { prec, succ })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            prec: BilinearOp::zero(dim),
            succ: BilinearOp::zero(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.prec.dim()
    }

    pub fn star(&self) -> BilinearOp {
        self.prec.add(&self.succ)
    }

    pub fn op(&self, o: DOp) -> BilinearOp {
        match o {
            DOp::Prec => self.prec.clone(),
            DOp::Succ => self.succ.clone(),
            DOp::Star => self.star(),
        }
    }

    pub fn apply(&self, o: DOp, x: &[Scalar], y: &[Scalar]) -> Vector {
        match o {
            DOp::Prec => self.prec.apply(x, y),
            DOp::Succ => self.succ.apply(x, y),
            DOp::Star => vec_add(&self.prec.apply(x, y), &self.succ.apply(x, y)),
        }
    }
}

pub fn check_dendriform(d: &DendriformAlgebra) -> Report {
    let n = d.dim();
    let cubes = [d.prec.clone(), d.succ.clone(), d.star()];
    let get = |o: DOp| match o {
        DOp::Prec => &cubes[0],
        DOp::Succ => &cubes[1],
        DOp::Star => &cubes[2],
    };
    let mut report = Report::new();
    for ax in DD_AXIOMS {
        let tag = axiom_tag(ax.map(DOp::symbol));
        let c = ax.map(get);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    report.check(&tag, &[i, j, k], axiom_residual(c, i, j, k));
                }
            }
        }
    }
    report
}

pub fn assoc_of(d: &DendriformAlgebra) -> BilinearOp {
    d.star()
}

/// Action maps `l_≺, r_≺, l_≻, r_≻ : A → gl(V)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DDBimodule {
    pub l_prec: MapFamily,
    pub r_prec: MapFamily,
    pub l_succ: MapFamily,
    pub r_succ: MapFamily,
}

impl DDBimodule {
    pub fn zero(algebra_dim: usize, module_dim: usize) -> Self {
        let z = MapFamily::zero(algebra_dim, module_dim);
        Self {
            l_prec: z.clone(),
            r_prec: z.clone(),
            l_succ: z.clone(),
            r_succ: z,
        }
    }

    /// Left and right multiplications of `d` acting on itself.
    pub fn regular(d: &DendriformAlgebra) -> Self {
        Self {
            l_prec: d.prec.left_family(),
            r_prec: d.prec.right_family(),
            l_succ: d.succ.left_family(),
            r_succ: d.succ.right_family(),
        }
    }

    pub fn algebra_dim(&self) -> usize {
        self.l_prec.len()
    }

    pub fn module_dim(&self) -> usize {
        self.l_prec.module_dim().unwrap_or(0)
    }

    pub fn l(&self, o: DOp) -> MapFamily {
        match o {
            DOp::Prec => self.l_prec.clone(),
            DOp::Succ => self.l_succ.clone(),
            DOp::Star => self.l_prec.add(&self.l_succ),
        }
    }

    pub fn r(&self, o: DOp) -> MapFamily {
        match o {
            DOp::Prec => self.r_prec.clone(),
            DOp::Succ => self.r_succ.clone(),
            DOp::Star => self.r_prec.add(&self.r_succ),
        }
    }

    fn shape_ok(&self, algebra_dim: usize, module_dim: usize) -> bool {
        [&self.l_prec, &self.r_prec, &self.l_succ, &self.r_succ]
            .iter()
            .all(|f| f.shape_ok(algebra_dim, module_dim))
    }
}

/// The three operator identities attached to one axiom
/// `(x op1 y) op2 z = x op3 (y op4 z)`, with the module element placed in
/// the first, second and third slot respectively.
pub(crate) fn bimodule_identities(
    report: &mut Report,
    n: usize,
    ops: [&BilinearOp; 4],
    l: [&MapFamily; 4],
    r: [&MapFamily; 4],
    sym: [&str; 4],
) {
    for i in 0..n {
        for j in 0..n {
            let x = basis_vec(n, i);
            let y = basis_vec(n, j);
            // u in the first slot
            let lhs = r[1].at(j).mul(r[0].at(i));
            let rhs = r[2].eval(&ops[3].basis_product(i, j));
            report.check(
                &format!("r{}(y)r{}(x) = r{}(x{}y)", sym[1], sym[0], sym[2], sym[3]),
                &[i, j],
                lhs.sub(&rhs).entries().to_vec(),
            );
            // u in the second slot
            let lhs = r[1].at(j).mul(l[0].at(i));
            let rhs = l[2].at(i).mul(r[3].at(j));
            report.check(
                &format!("r{}(y)l{}(x) = l{}(x)r{}(y)", sym[1], sym[0], sym[2], sym[3]),
                &[i, j],
                lhs.sub(&rhs).entries().to_vec(),
            );
            // u in the third slot
            let lhs = l[1].eval(&ops[0].apply(&x, &y));
            let rhs = l[2].at(i).mul(l[3].at(j));
            report.check(
                &format!("l{}(x{}y) = l{}(x)l{}(y)", sym[1], sym[0], sym[2], sym[3]),
                &[i, j],
                lhs.sub(&rhs).entries().to_vec(),
            );
        }
    }
}

pub fn check_dd_bimodule(d: &DendriformAlgebra, m: &DDBimodule) -> Result<Report> {
    let n = d.dim();
    if !m.shape_ok(n, m.module_dim()) {
        return Err(Error::shape("bimodule families do not match the algebra"));
    }
    let cubes = [d.prec.clone(), d.succ.clone(), d.star()];
    let ls = [m.l(DOp::Prec), m.l(DOp::Succ), m.l(DOp::Star)];
    let rs = [m.r(DOp::Prec), m.r(DOp::Succ), m.r(DOp::Star)];
    let idx = |o: DOp| match o {
        DOp::Prec => 0,
        DOp::Succ => 1,
        DOp::Star => 2,
    };
    let mut report = Report::new();
    for ax in DD_AXIOMS {
        bimodule_identities(
            &mut report,
            n,
            ax.map(|o| &cubes[idx(o)]),
            ax.map(|o| &ls[idx(o)]),
            ax.map(|o| &rs[idx(o)]),
            ax.map(DOp::symbol),
        );
    }
    Ok(report)
}

/// `(V*, -r_≻*, l_≻* + l_≺*, r_≻* + r_≺*, -l_≺*)`
pub fn dual_dd_bimodule(m: &DDBimodule) -> DDBimodule {
    DDBimodule {
        l_prec: m.r_succ.dual().neg(),
        r_prec: m.l(DOp::Star).dual(),
        l_succ: m.r(DOp::Star).dual(),
        r_succ: m.l_prec.dual().neg(),
    }
}

/// Reports asymmetric Gram entries under the tag `symmetry`.
pub(crate) fn check_symmetry(report: &mut Report, form: &BilinearForm) {
    let g = form.gram();
    let n = form.dim();
    for i in 0..n {
        for j in i + 1..n {
            let d = g.get(i, j) - g.get(j, i);
            if !d.is_zero() {
                report.push("symmetry", vec![i, j], vec![d]);
            }
        }
    }
}

/// `B(x★y, z) = B(y, z≺x) + B(x, y≻z)` with `≺`, `≻` in the vertical
/// reading `∧`, `∨`.
pub fn check_dd_2cocycle(d: &DendriformAlgebra, form: &BilinearForm) -> Result<Report> {
    let n = d.dim();
    if form.dim() != n {
        return Err(Error::shape("form dimension differs from algebra dimension"));
    }
    let mut report = Report::new();
    check_symmetry(&mut report, form);
    let star = d.star();
    let g = form.gram();
    let b = |u: &[Scalar], v: &[Scalar]| dot(u, &g.mul_vec(v));
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (x, y, z) = (basis_vec(n, i), basis_vec(n, j), basis_vec(n, k));
                let lhs = b(&star.basis_product(i, j), &z);
                let rhs = b(&y, &d.prec.basis_product(k, i)) + b(&x, &d.succ.basis_product(j, k));
                report.check("B(x★y,z) = B(y,z∧x) + B(x,y∨z)", &[i, j, k], vec![lhs - rhs]);
            }
        }
    }
    Ok(report)
}

/// Two dendriform algebras acting on each other. `a_on_b` holds the maps
/// `A → gl(B)`, `b_on_a` the maps `B → gl(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DDMatchedPair {
    pub a: DendriformAlgebra,
    pub b: DendriformAlgebra,
    pub a_on_b: DDBimodule,
    pub b_on_a: DDBimodule,
}

impl DDMatchedPair {
    fn check_shapes(&self) -> Result<()> {
        let (na, nb) = (self.a.dim(), self.b.dim());
        if !self.a_on_b.shape_ok(na, nb) || !self.b_on_a.shape_ok(nb, na) {
            return Err(Error::shape("matched pair maps do not match the algebras"));
        }
        Ok(())
    }
}

/// The nine conditions with two elements `x, y` of `xa` and one element
/// `a` of `ya`, projected on `xa`.
fn matched_pair_half(
    report: &mut Report,
    prefix: &str,
    xa: &DendriformAlgebra,
    ya: &DendriformAlgebra,
    x_on_y: &DDBimodule,
    y_on_x: &DDBimodule,
) {
    use DOp::{Prec as W, Star as S, Succ as V};
    let (n, m) = (xa.dim(), ya.dim());
    let lx = [x_on_y.l(W), x_on_y.l(V), x_on_y.l(S)];
    let rx = [x_on_y.r(W), x_on_y.r(V), x_on_y.r(S)];
    let ly = [y_on_x.l(W), y_on_x.l(V), y_on_x.l(S)];
    let ry = [y_on_x.r(W), y_on_x.r(V), y_on_x.r(S)];
    let k = |o: DOp| match o {
        W => 0,
        V => 1,
        S => 2,
    };
    // actions of `y`-side elements on x-side vectors and vice versa
    let lb = |o: DOp, a: &[Scalar], v: &[Scalar]| ly[k(o)].eval(a).mul_vec(v);
    let rb = |o: DOp, a: &[Scalar], v: &[Scalar]| ry[k(o)].eval(a).mul_vec(v);
    let la = |o: DOp, x: &[Scalar], a: &[Scalar]| lx[k(o)].eval(x).mul_vec(a);
    let ra = |o: DOp, x: &[Scalar], a: &[Scalar]| rx[k(o)].eval(x).mul_vec(a);
    let p = |o: DOp, u: &[Scalar], v: &[Scalar]| xa.apply(o, u, v);

    for i in 0..n {
        for j in 0..n {
            for t in 0..m {
                let (x, y, a) = (basis_vec(n, i), basis_vec(n, j), basis_vec(m, t));
                let conds: [(Vector, Vector); 9] = [
                    (
                        vec_add(&p(W, &lb(W, &a, &x), &y), &lb(W, &ra(W, &x, &a), &y)),
                        lb(W, &a, &p(S, &x, &y)),
                    ),
                    (
                        vec_add(&lb(W, &la(W, &x, &a), &y), &p(W, &rb(W, &a, &x), &y)),
                        vec_add(&p(W, &x, &lb(S, &a, &y)), &rb(W, &ra(S, &y, &a), &x)),
                    ),
                    (
                        rb(W, &a, &p(W, &x, &y)),
                        vec_add(&rb(W, &la(S, &y, &a), &x), &p(W, &x, &rb(S, &a, &y))),
                    ),
                    (
                        vec_add(&p(W, &lb(V, &a, &x), &y), &lb(W, &ra(V, &x, &a), &y)),
                        lb(V, &a, &p(W, &x, &y)),
                    ),
                    (
                        vec_add(&lb(W, &la(V, &x, &a), &y), &p(W, &rb(V, &a, &x), &y)),
                        vec_add(&p(V, &x, &lb(W, &a, &y)), &rb(V, &ra(W, &y, &a), &x)),
                    ),
                    (
                        rb(W, &a, &p(V, &x, &y)),
                        vec_add(&rb(V, &la(W, &y, &a), &x), &p(V, &x, &rb(W, &a, &y))),
                    ),
                    (
                        vec_add(&p(V, &lb(S, &a, &x), &y), &lb(V, &ra(S, &x, &a), &y)),
                        lb(V, &a, &p(V, &x, &y)),
                    ),
                    (
                        vec_add(&lb(V, &la(S, &x, &a), &y), &p(V, &rb(S, &a, &x), &y)),
                        vec_add(&p(V, &x, &lb(V, &a, &y)), &rb(V, &ra(V, &y, &a), &x)),
                    ),
                    (
                        rb(V, &a, &p(S, &x, &y)),
                        vec_add(&rb(V, &la(V, &y, &a), &x), &p(V, &x, &rb(V, &a, &y))),
                    ),
                ];
                for (c, (lhs, rhs)) in conds.iter().enumerate() {
                    report.check(&format!("{prefix}.{}", c + 1), &[i, j, t], vec_sub(lhs, rhs));
                }
            }
        }
    }
}

/// The eighteen compatibility conditions of a dendriform matched pair,
/// tagged `mp.A.1..9` (two elements of `A`) and `mp.B.1..9` (two of `B`).
pub fn dd_matched_pair_conditions(p: &DDMatchedPair) -> Result<Report> {
    p.check_shapes()?;
    let mut report = Report::new();
    matched_pair_half(&mut report, "mp.A", &p.a, &p.b, &p.a_on_b, &p.b_on_a);
    matched_pair_half(&mut report, "mp.B", &p.b, &p.a, &p.b_on_a, &p.a_on_b);
    Ok(report)
}

/// Cube of `(x+a)∘(y+b) = x∘y + l_B(a)y + r_B(b)x + a∘b + l_A(x)b + r_A(y)a`
/// in the basis of `A` followed by the basis of `B`.
pub(crate) fn bowtie_cube(
    a_op: &BilinearOp,
    b_op: &BilinearOp,
    l_a: &MapFamily,
    r_a: &MapFamily,
    l_b: &MapFamily,
    r_b: &MapFamily,
) -> BilinearOp {
    let (na, nb) = (a_op.dim(), b_op.dim());
    let mut c = BilinearOp::zero(na + nb);
    for i in 0..na {
        for j in 0..na {
            for k in 0..na {
                *c.entry_mut(i, j, k) = a_op.get(i, j, k).clone();
            }
        }
    }
    for i in 0..nb {
        for j in 0..nb {
            for k in 0..nb {
                *c.entry_mut(na + i, na + j, na + k) = b_op.get(i, j, k).clone();
            }
        }
    }
    for i in 0..na {
        for t in 0..nb {
            // e_i ∘ f_t = r_B(f_t) e_i + l_A(e_i) f_t
            for k in 0..na {
                *c.entry_mut(i, na + t, k) = r_b.at(t).get(k, i).clone();
            }
            for k in 0..nb {
                *c.entry_mut(i, na + t, na + k) = l_a.at(i).get(k, t).clone();
            }
            // f_t ∘ e_i = l_B(f_t) e_i + r_A(e_i) f_t
            for k in 0..na {
                *c.entry_mut(na + t, i, k) = l_b.at(t).get(k, i).clone();
            }
            for k in 0..nb {
                *c.entry_mut(na + t, i, na + k) = r_a.at(i).get(k, t).clone();
            }
        }
    }
    c
}

/// Assembles the dendriform structure on `A ⊕ B`. The report gathers the
/// eighteen conditions, both bimodule checks, both component checks and the
/// direct axiom check of the assembled algebra.
pub fn build_dd_bowtie(p: &DDMatchedPair) -> Result<(DendriformAlgebra, Report)> {
    p.check_shapes()?;
    let sum = DendriformAlgebra {
        prec: bowtie_cube(
            &p.a.prec,
            &p.b.prec,
            &p.a_on_b.l_prec,
            &p.a_on_b.r_prec,
            &p.b_on_a.l_prec,
            &p.b_on_a.r_prec,
        ),
        succ: bowtie_cube(
            &p.a.succ,
            &p.b.succ,
            &p.a_on_b.l_succ,
            &p.a_on_b.r_succ,
            &p.b_on_a.l_succ,
            &p.b_on_a.r_succ,
        ),
    };
    let mut report = dd_matched_pair_conditions(p)?;
    report.merge_prefixed("A", check_dendriform(&p.a));
    report.merge_prefixed("B", check_dendriform(&p.b));
    report.merge_prefixed("A on B", check_dd_bimodule(&p.a, &p.a_on_b)?);
    report.merge_prefixed("B on A", check_dd_bimodule(&p.b, &p.b_on_a)?);
    report.merge_prefixed("bowtie", check_dendriform(&sum));
    Ok((sum, report))
}

/// Checks that the two coordinate halves of `ops` are closed under every
/// listed operation. Violations carry the leaked coordinates.
pub(crate) fn check_halves_closed(report: &mut Report, ops: &[(&str, &BilinearOp)], n: usize) {
    for (name, op) in ops {
        for i in 0..2 * n {
            for j in 0..2 * n {
                let first = i < n && j < n;
                let second = i >= n && j >= n;
                if !first && !second {
                    continue;
                }
                let prod = op.basis_product(i, j);
                let leaked: Vector = if first {
                    prod[n..].to_vec()
                } else {
                    prod[..n].to_vec()
                };
                let tag = if first {
                    format!("A closed under {name}")
                } else {
                    format!("A* closed under {name}")
                };
                report.check(&tag, &[i, j], leaked);
            }
        }
    }
}

pub(crate) fn check_halves_isotropic(report: &mut Report, n: usize) -> Result<()> {
    let form = BilinearForm::hyperbolic(n);
    let a: Vec<Vector> = (0..n).map(|i| basis_vec(2 * n, i)).collect();
    let a_dual: Vec<Vector> = (n..2 * n).map(|i| basis_vec(2 * n, i)).collect();
    if !is_isotropic(&form, &a)? {
        report.push("A isotropic", vec![], vec![]);
    }
    if !is_isotropic(&form, &a_dual)? {
        report.push("A* isotropic", vec![], vec![]);
    }
    Ok(())
}

/// Standard Manin triple check on `A ⊕ A*` with `dim A = n`.
pub fn check_manin_dd(d: &DendriformAlgebra, n: usize) -> Result<Report> {
    if d.dim() != 2 * n {
        return Err(Error::shape(format!(
            "Manin check needs dimension 2·{n}, got {}",
            d.dim()
        )));
    }
    let mut report = Report::new();
    check_halves_closed(&mut report, &[("∧", &d.prec), ("∨", &d.succ)], n);
    check_halves_isotropic(&mut report, n)?;
    report.merge_prefixed("cocycle", check_dd_2cocycle(d, &BilinearForm::hyperbolic(n))?);
    Ok(report)
}

/// Source or target of a homomorphism check.
#[derive(Clone, Copy, Debug)]
pub enum Structure<'a> {
    Dendriform(&'a DendriformAlgebra),
    Quadri(&'a QuadriAlgebra),
    QuadriBialgebra(&'a QuadriBialgebra),
}

impl Structure<'_> {
    fn dim(&self) -> usize {
        match self {
            Structure::Dendriform(d) => d.dim(),
            Structure::Quadri(q) => q.dim(),
            Structure::QuadriBialgebra(b) => b.algebra.dim(),
        }
    }

    fn ops(&self) -> Vec<(&'static str, &BilinearOp)> {
        match self {
            Structure::Dendriform(d) => vec![("≺", &d.prec), ("≻", &d.succ)],
            Structure::Quadri(q) => q.named_ops(),
            Structure::QuadriBialgebra(b) => b.algebra.named_ops(),
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Structure::Dendriform(_) => "dendriform",
            Structure::Quadri(_) => "quadri",
            Structure::QuadriBialgebra(_) => "quadri_bialgebra",
        }
    }
}

/// `f(x∘y) = f(x)∘f(y)` for every operation on all basis pairs, plus
/// `(f⊗f)δ_X = δ_Y f` for every comultiplication of a bialgebra.
pub fn check_homomorphism(f: &LinearMap, src: Structure<'_>, dst: Structure<'_>) -> Result<Report> {
    if src.kind() != dst.kind() {
        return Err(Error::shape(format!(
            "cannot compare a {} with a {}",
            src.kind(),
            dst.kind()
        )));
    }
    let (n, m) = (src.dim(), dst.dim());
    if f.src_dim() != n || f.dst_dim() != m {
        return Err(Error::shape("map shape does not match source and target"));
    }
    let fm = f.matrix();
    let mut report = Report::new();
    let images: Vec<Vector> = (0..n).map(|i| fm.column(i)).collect();
    for ((name, s_op), (_, d_op)) in src.ops().into_iter().zip(dst.ops()) {
        for i in 0..n {
            for j in 0..n {
                let lhs = fm.mul_vec(&s_op.basis_product(i, j));
                let rhs = d_op.apply(&images[i], &images[j]);
                report.check(&format!("f(x{name}y) = f(x){name}f(y)"), &[i, j], vec_sub(&lhs, &rhs));
            }
        }
    }
    if let (Structure::QuadriBialgebra(x), Structure::QuadriBialgebra(y)) = (src, dst) {
        for ((name, cx), (_, cy)) in x.coalgebra.named().into_iter().zip(y.coalgebra.named()) {
            for s in 0..n {
                let lhs = cx[s].apply_pair(fm, fm);
                let mut rhs = Matrix::zeros(m, m);
                for t in 0..m {
                    let c = fm.get(t, s);
                    if !c.is_zero() {
                        rhs = rhs.add(&cy[t].coeffs().scale(c));
                    }
                }
                report.check(
                    &format!("(f⊗f){name} = {name}f"),
                    &[s],
                    lhs.coeffs().sub(&rhs).entries().to_vec(),
                );
            }
        }
    }
    Ok(report)
}

/// Extra conditions for a homomorphism of Manin triples: both halves are
/// preserved and the forms are compatible.
pub fn check_manin_homomorphism(
    f: &LinearMap,
    src_split: usize,
    dst_split: usize,
    src_form: &BilinearForm,
    dst_form: &BilinearForm,
) -> Result<Report> {
    let fm = f.matrix();
    if src_form.dim() != f.src_dim() || dst_form.dim() != f.dst_dim() {
        return Err(Error::shape("forms do not match the map"));
    }
    let mut report = Report::new();
    for j in 0..f.src_dim() {
        let col = fm.column(j);
        let leaked: Vector = if j < src_split {
            col[dst_split..].to_vec()
        } else {
            col[..dst_split].to_vec()
        };
        let tag = if j < src_split { "f(A+) ⊂ B+" } else { "f(A-) ⊂ B-" };
        report.check(tag, &[j], leaked);
    }
    let pulled = fm.transpose().mul(dst_form.gram()).mul(fm);
    for i in 0..f.src_dim() {
        for j in 0..f.src_dim() {
            let d = src_form.gram().get(i, j) - pulled.get(i, j);
            report.check("B_A(x,y) = B_B(f(x),f(y))", &[i, j], vec![d]);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;

    fn dim1(prec: i64, succ: i64) -> DendriformAlgebra {
        DendriformAlgebra::new(
            BilinearOp::from_terms(1, &[(0, 0, 0, int(prec))]),
            BilinearOp::from_terms(1, &[(0, 0, 0, int(succ))]),
        )
        .unwrap()
    }

    #[test]
    fn zero_algebra_passes() {
        for n in 1..4 {
            assert!(check_dendriform(&DendriformAlgebra::zero(n)).passed());
        }
    }

    #[test]
    fn prec_only_dim1_matches_oracle() {
        // Direct evaluation of each axiom on the single triple, with
        // e≺e = p e, e≻e = s e: residual = c(op1)c(op2) - c(op4)c(op3).
        for (p, s) in [(1, 0), (0, 1), (1, 1), (-1, 1), (2, 0)] {
            let c = |o: DOp| match o {
                DOp::Prec => p,
                DOp::Succ => s,
                DOp::Star => p + s,
            };
            let expected: Vec<(usize, Scalar)> = DD_AXIOMS
                .iter()
                .enumerate()
                .map(|(a, ax)| (a, int(c(ax[0]) * c(ax[1]) - c(ax[3]) * c(ax[2]))))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            let r = check_dendriform(&dim1(p, s));
            assert_eq!(r.violations.len(), expected.len());
            for (v, (_, res)) in r.violations.iter().zip(&expected) {
                assert_eq!(v.residual, vec![res.clone()]);
            }
        }
        // e≺e = e alone is a valid structure: every product equals e.
        assert!(check_dendriform(&dim1(1, 0)).passed());
        assert!(!check_dendriform(&dim1(1, 1)).passed());
    }

    #[test]
    fn succ_only_and_assoc() {
        let d = dim1(0, 1);
        assert!(check_dendriform(&d).passed());
        let star = assoc_of(&d);
        assert_eq!(star.get(0, 0, 0), &int(1));
        assert!(star.is_associative());
        let cancel = DendriformAlgebra::new(d.succ.neg(), d.succ.clone()).unwrap();
        assert!(assoc_of(&cancel).is_zero());
    }

    #[test]
    fn regular_bimodule_and_swap() {
        let d = dim1(0, 1);
        let reg = DDBimodule::regular(&d);
        assert!(check_dd_bimodule(&d, &reg).unwrap().passed());
        let swapped = DDBimodule {
            l_prec: reg.l_succ.clone(),
            l_succ: reg.l_prec.clone(),
            ..reg.clone()
        };
        assert!(!check_dd_bimodule(&d, &swapped).unwrap().passed());
        assert!(check_dd_bimodule(&d, &DDBimodule::zero(1, 3)).unwrap().passed());
    }

    #[test]
    fn dual_of_regular_dim1() {
        let d = dim1(0, 1);
        let dual = dual_dd_bimodule(&DDBimodule::regular(&d));
        assert_eq!(dual.l_prec.at(0), &Matrix::from_i64(&[&[-1]]));
        assert_eq!(dual.r_prec.at(0), &Matrix::from_i64(&[&[1]]));
        assert_eq!(dual.l_succ.at(0), &Matrix::from_i64(&[&[1]]));
        assert_eq!(dual.r_succ.at(0), &Matrix::from_i64(&[&[0]]));
        assert!(check_dd_bimodule(&d, &dual).unwrap().passed());
        assert_eq!(dual_dd_bimodule(&DDBimodule::zero(2, 3)), DDBimodule::zero(2, 3));
    }

    #[test]
    fn cocycle_basics() {
        let d = dim1(0, 1);
        assert!(check_dd_2cocycle(&d, &BilinearForm::zero(1)).unwrap().passed());
        let z = DendriformAlgebra::zero(2);
        let g = BilinearForm::new(Matrix::from_i64(&[&[1, 2], &[2, 5]])).unwrap();
        assert!(check_dd_2cocycle(&z, &g).unwrap().passed());
        let asym = BilinearForm::new(Matrix::from_i64(&[&[0, 1], &[0, 0]])).unwrap();
        let r = check_dd_2cocycle(&z, &asym).unwrap();
        assert!(r.tags().contains("symmetry"));
    }

    #[test]
    fn bowtie_zero_and_direct_sum() {
        let z = DDMatchedPair {
            a: DendriformAlgebra::zero(2),
            b: DendriformAlgebra::zero(1),
            a_on_b: DDBimodule::zero(2, 1),
            b_on_a: DDBimodule::zero(1, 2),
        };
        let (sum, rep) = build_dd_bowtie(&z).unwrap();
        assert!(rep.passed());
        assert_eq!(sum, DendriformAlgebra::zero(3));

        let a = dim1(0, 1);
        let p = DDMatchedPair {
            a: a.clone(),
            b: DendriformAlgebra::zero(2),
            a_on_b: DDBimodule::zero(1, 2),
            b_on_a: DDBimodule::zero(2, 1),
        };
        let (sum, rep) = build_dd_bowtie(&p).unwrap();
        assert!(rep.passed(), "{rep}");
        assert_eq!(sum.succ.get(0, 0, 0), &int(1));
        assert_eq!(sum.succ.restrict(1, 2), BilinearOp::zero(2));
    }

    #[test]
    fn manin_zero_and_leak() {
        assert!(check_manin_dd(&DendriformAlgebra::zero(4), 2).unwrap().passed());
        assert!(check_manin_dd(&DendriformAlgebra::zero(3), 1).is_err());
        let mut d = DendriformAlgebra::zero(2);
        *d.prec.entry_mut(1, 1, 0) = int(1);
        let r = check_manin_dd(&d, 1).unwrap();
        assert!(r.support().contains(&("A* closed under ∧".to_string(), vec![1, 1])));
    }

    #[test]
    fn homomorphism_identity_and_zero() {
        let d = dim1(0, 1);
        let id = LinearMap::identity(1);
        let r = check_homomorphism(&id, Structure::Dendriform(&d), Structure::Dendriform(&d)).unwrap();
        assert!(r.passed());
        let z = DendriformAlgebra::zero(2);
        let zero_map = LinearMap::new(Matrix::zeros(2, 1));
        let r = check_homomorphism(&zero_map, Structure::Dendriform(&d), Structure::Dendriform(&z)).unwrap();
        assert!(r.passed());
    }
}
