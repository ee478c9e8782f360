//! Quadri-algebras: axioms, derived operations, projections, bimodules,
//! semidirect and bowtie sums, invariant forms and 2-cocycles.

use num::Zero;

use crate::dendriform::{
    axiom_residual, axiom_tag, bimodule_identities, bowtie_cube, check_dd_2cocycle, check_dendriform,
    check_halves_closed, check_halves_isotropic, check_symmetry, DDBimodule, DDMatchedPair, DendriformAlgebra,
};
use crate::error::{Error, Result};
use crate::exactlin::{basis_vec, dot, BilinearForm, BilinearOp, MapFamily, Matrix, Scalar, Vector};
use crate::report::Report;

/// The four quadri operations and the five sums built from them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Nw,
    Ne,
    Sw,
    Se,
    Succ,
    Prec,
    Vee,
    Wedge,
    Star,
}

impl Op {
    pub const BASE: [Op; 4] = [Op::Nw, Op::Ne, Op::Sw, Op::Se];
    pub const ALL: [Op; 9] = [
        Op::Nw,
        Op::Ne,
        Op::Sw,
        Op::Se,
        Op::Succ,
        Op::Prec,
        Op::Vee,
        Op::Wedge,
        Op::Star,
    ];

    /// Positions in `[nw, ne, sw, se]` summed by this operation.
    pub fn parts(self) -> &'static [usize] {
        match self {
            Op::Nw => &[0],
            Op::Ne => &[1],
            Op::Sw => &[2],
            Op::Se => &[3],
            Op::Succ => &[1, 3],
            Op::Prec => &[0, 2],
            Op::Vee => &[2, 3],
            Op::Wedge => &[0, 1],
            Op::Star => &[0, 1, 2, 3],
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Op::Nw => "↖",
            Op::Ne => "↗",
            Op::Sw => "↙",
            Op::Se => "↘",
            Op::Succ => "≻",
            Op::Prec => "≺",
            Op::Vee => "∨",
            Op::Wedge => "∧",
            Op::Star => "★",
        }
    }

    pub fn index(self) -> usize {
        Op::ALL.iter().position(|&o| o == self).unwrap()
    }
}

/// `(x op1 y) op2 z = x op3 (y op4 z)`
pub const QUADRI_AXIOMS: [[Op; 4]; 9] = [
    [Op::Nw, Op::Nw, Op::Nw, Op::Star],
    [Op::Ne, Op::Nw, Op::Ne, Op::Prec],
    [Op::Wedge, Op::Ne, Op::Ne, Op::Succ],
    [Op::Sw, Op::Nw, Op::Sw, Op::Wedge],
    [Op::Se, Op::Nw, Op::Se, Op::Nw],
    [Op::Vee, Op::Ne, Op::Se, Op::Ne],
    [Op::Prec, Op::Sw, Op::Sw, Op::Vee],
    [Op::Succ, Op::Sw, Op::Se, Op::Sw],
    [Op::Star, Op::Se, Op::Se, Op::Se],
];

pub fn quadri_axiom_tag(a: usize) -> String {
    axiom_tag(QUADRI_AXIOMS[a].map(Op::symbol))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadriAlgebra {
    pub nw: BilinearOp,
    pub ne: BilinearOp,
    pub sw: BilinearOp,
    pub se: BilinearOp,
}

impl QuadriAlgebra {
    pub fn new(nw: BilinearOp, ne: BilinearOp, sw: BilinearOp, se: BilinearOp) -> Result<Self> {
        let n = nw.dim();
        if n == 0 || ne.dim() != n || sw.dim() != n || se.dim() != n {
            return Err(Error::shape("quadri cubes must share a positive dimension"));
        }
        Ok(Self { nw, ne, sw, se })
    }

    pub fn from_array(cubes: [BilinearOp; 4]) -> Result<Self> {
        let [nw, ne, sw, se] = cubes;
        Self::new(nw, ne, sw, se)
    }

    pub fn zero(dim: usize) -> Self {
        let z = BilinearOp::zero(dim);
        Self {
            nw: z.clone(),
            ne: z.clone(),
            sw: z.clone(),
            se: z,
        }
    }

    pub fn dim(&self) -> usize {
        self.nw.dim()
    }

    pub fn base(&self) -> [&BilinearOp; 4] {
        [&self.nw, &self.ne, &self.sw, &self.se]
    }

    pub fn op(&self, o: Op) -> BilinearOp {
        let b = self.base();
        match o.parts() {
            [k] => b[*k].clone(),
            parts => BilinearOp::sum(self.dim(), parts.iter().map(|&k| b[k])),
        }
    }

    pub fn all_ops(&self) -> Vec<BilinearOp> {
        Op::ALL.iter().map(|&o| self.op(o)).collect()
    }

    pub fn named_ops(&self) -> Vec<(&'static str, &BilinearOp)> {
        vec![("↖", &self.nw), ("↗", &self.ne), ("↙", &self.sw), ("↘", &self.se)]
    }

    pub fn apply(&self, o: Op, x: &[Scalar], y: &[Scalar]) -> Vector {
        let b = self.base();
        let mut out = vec![Scalar::zero(); self.dim()];
        for &k in o.parts() {
            for (acc, v) in out.iter_mut().zip(b[k].apply(x, y)) {
                *acc += v;
            }
        }
        out
    }

    /// `L_o(e_i)` for every basis element.
    pub fn left(&self, o: Op) -> MapFamily {
        self.op(o).left_family()
    }

    /// `R_o(e_j)` for every basis element.
    pub fn right(&self, o: Op) -> MapFamily {
        self.op(o).right_family()
    }

    pub fn is_zero(&self) -> bool {
        self.base().iter().all(|c| c.is_zero())
    }

    pub fn map_cubes(&self, f: impl Fn(&BilinearOp) -> BilinearOp) -> Self {
        Self {
            nw: f(&self.nw),
            ne: f(&self.ne),
            sw: f(&self.sw),
            se: f(&self.se),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedOps {
    pub succ: BilinearOp,
    pub prec: BilinearOp,
    pub vee: BilinearOp,
    pub wedge: BilinearOp,
    pub star: BilinearOp,
}

pub fn derived_ops(q: &QuadriAlgebra) -> DerivedOps {
    DerivedOps {
        succ: q.ne.add(&q.se),
        prec: q.nw.add(&q.sw),
        vee: q.sw.add(&q.se),
        wedge: q.nw.add(&q.ne),
        star: BilinearOp::sum(q.dim(), q.base()),
    }
}

pub fn check_quadri(q: &QuadriAlgebra) -> Report {
    let n = q.dim();
    let ops = q.all_ops();
    let mut report = Report::new();
    for (a, ax) in QUADRI_AXIOMS.iter().enumerate() {
        let tag = quadri_axiom_tag(a);
        let c = ax.map(|o| &ops[o.index()]);
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

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Projection {
    Horizontal,
    Vertical,
}

/// Horizontal `(≺, ≻)` or vertical `(∧, ∨)`, both stored in the
/// `(prec, succ)` slots.
pub fn project_dd(q: &QuadriAlgebra, which: Projection) -> DendriformAlgebra {
    let d = derived_ops(q);
    match which {
        Projection::Horizontal => DendriformAlgebra {
            prec: d.prec,
            succ: d.succ,
        },
        Projection::Vertical => DendriformAlgebra {
            prec: d.wedge,
            succ: d.vee,
        },
    }
}

/// `(A, L↗, R↖, L↘, R↙)` over the vertical projection.
pub fn vertical_regular_bimodule(q: &QuadriAlgebra) -> DDBimodule {
    DDBimodule {
        l_prec: q.ne.left_family(),
        r_prec: q.nw.right_family(),
        l_succ: q.se.left_family(),
        r_succ: q.sw.right_family(),
    }
}

/// `(A, L↙, R↖, L↘, R↗)` over the horizontal projection.
pub fn horizontal_regular_bimodule(q: &QuadriAlgebra) -> DDBimodule {
    DDBimodule {
        l_prec: q.sw.left_family(),
        r_prec: q.nw.right_family(),
        l_succ: q.se.left_family(),
        r_succ: q.ne.right_family(),
    }
}

/// `(A*, -R↗*, L∨*, R∧*, -L↙*)` over the horizontal projection.
pub fn horizontal_dual_bimodule(q: &QuadriAlgebra) -> DDBimodule {
    DDBimodule {
        l_prec: q.right(Op::Ne).dual().neg(),
        r_prec: q.left(Op::Vee).dual(),
        l_succ: q.right(Op::Wedge).dual(),
        r_succ: q.left(Op::Sw).dual().neg(),
    }
}

/// `(A*, -R↙*, L≻*, R≺*, -L↗*)` over the vertical projection.
pub fn vertical_dual_bimodule(q: &QuadriAlgebra) -> DDBimodule {
    DDBimodule {
        l_prec: q.right(Op::Sw).dual().neg(),
        r_prec: q.left(Op::Succ).dual(),
        l_succ: q.right(Op::Prec).dual(),
        r_succ: q.left(Op::Ne).dual().neg(),
    }
}

/// Eight action maps `l_∘, r_∘ : A → gl(V)` for `∘ ∈ {↖, ↗, ↙, ↘}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadriBimodule {
    pub l_nw: MapFamily,
    pub r_nw: MapFamily,
    pub l_ne: MapFamily,
    pub r_ne: MapFamily,
    pub l_sw: MapFamily,
    pub r_sw: MapFamily,
    pub l_se: MapFamily,
    pub r_se: MapFamily,
}

impl QuadriBimodule {
    pub fn zero(algebra_dim: usize, module_dim: usize) -> Self {
        let z = MapFamily::zero(algebra_dim, module_dim);
        Self {
            l_nw: z.clone(),
            r_nw: z.clone(),
            l_ne: z.clone(),
            r_ne: z.clone(),
            l_sw: z.clone(),
            r_sw: z.clone(),
            l_se: z.clone(),
            r_se: z,
        }
    }

    pub fn regular(q: &QuadriAlgebra) -> Self {
        Self {
            l_nw: q.nw.left_family(),
            r_nw: q.nw.right_family(),
            l_ne: q.ne.left_family(),
            r_ne: q.ne.right_family(),
            l_sw: q.sw.left_family(),
            r_sw: q.sw.right_family(),
            l_se: q.se.left_family(),
            r_se: q.se.right_family(),
        }
    }

    fn lefts(&self) -> [&MapFamily; 4] {
        [&self.l_nw, &self.l_ne, &self.l_sw, &self.l_se]
    }

    fn rights(&self) -> [&MapFamily; 4] {
        [&self.r_nw, &self.r_ne, &self.r_sw, &self.r_se]
    }

    pub fn algebra_dim(&self) -> usize {
        self.l_nw.len()
    }

    pub fn module_dim(&self) -> usize {
        self.l_nw.module_dim().unwrap_or(0)
    }

    fn sum(&self, fams: [&MapFamily; 4], o: Op) -> MapFamily {
        let mut parts = o.parts().iter();
        let first = fams[*parts.next().unwrap()].clone();
        parts.fold(first, |acc, &k| acc.add(fams[k]))
    }

    pub fn l(&self, o: Op) -> MapFamily {
        self.sum(self.lefts(), o)
    }

    pub fn r(&self, o: Op) -> MapFamily {
        self.sum(self.rights(), o)
    }

    pub(crate) fn shape_ok(&self, algebra_dim: usize, module_dim: usize) -> bool {
        self.lefts()
            .iter()
            .chain(self.rights().iter())
            .all(|f| f.shape_ok(algebra_dim, module_dim))
    }
}

pub fn check_quadri_bimodule(q: &QuadriAlgebra, m: &QuadriBimodule) -> Result<Report> {
    let n = q.dim();
    if !m.shape_ok(n, m.module_dim()) {
        return Err(Error::shape("bimodule families do not match the algebra"));
    }
    let ops = q.all_ops();
    let ls: Vec<MapFamily> = Op::ALL.iter().map(|&o| m.l(o)).collect();
    let rs: Vec<MapFamily> = Op::ALL.iter().map(|&o| m.r(o)).collect();
    let mut report = Report::new();
    for ax in QUADRI_AXIOMS {
        bimodule_identities(
            &mut report,
            n,
            ax.map(|o| &ops[o.index()]),
            ax.map(|o| &ls[o.index()]),
            ax.map(|o| &rs[o.index()]),
            ax.map(Op::symbol),
        );
    }
    Ok(report)
}

/// `(V*, r↘*, l★*, -r∨*, -l≺*, -r≻*, -l∧*, r★*, l↖*)`
pub fn dual_quadri_bimodule(m: &QuadriBimodule) -> QuadriBimodule {
    QuadriBimodule {
        l_nw: m.r_se.dual(),
        r_nw: m.l(Op::Star).dual(),
        l_ne: m.r(Op::Vee).dual().neg(),
        r_ne: m.l(Op::Prec).dual().neg(),
        l_sw: m.r(Op::Succ).dual().neg(),
        r_sw: m.l(Op::Wedge).dual().neg(),
        l_se: m.r(Op::Star).dual(),
        r_se: m.l_nw.dual(),
    }
}

/// Two quadri-algebras acting on each other; `a_on_b` holds `A → gl(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadriMatchedPair {
    pub a: QuadriAlgebra,
    pub b: QuadriAlgebra,
    pub a_on_b: QuadriBimodule,
    pub b_on_a: QuadriBimodule,
}

fn assemble_bowtie(p: &QuadriMatchedPair) -> Result<QuadriAlgebra> {
    let (na, nb) = (p.a.dim(), p.b.dim());
    if !p.a_on_b.shape_ok(na, nb) || !p.b_on_a.shape_ok(nb, na) {
        return Err(Error::shape("matched pair maps do not match the algebras"));
    }
    let (ab, ba) = (&p.a_on_b, &p.b_on_a);
    let cubes: Vec<BilinearOp> = (0..4)
        .map(|k| {
            bowtie_cube(
                p.a.base()[k],
                p.b.base()[k],
                ab.lefts()[k],
                ab.rights()[k],
                ba.lefts()[k],
                ba.rights()[k],
            )
        })
        .collect();
    let [nw, ne, sw, se]: [BilinearOp; 4] = cubes.try_into().unwrap();
    QuadriAlgebra::new(nw, ne, sw, se)
}

/// Quadri structure on `A ⊕ B`; the report is the axiom check of the
/// assembled algebra, which is the matched-pair condition itself.
pub fn build_quadri_bowtie(p: &QuadriMatchedPair) -> Result<(QuadriAlgebra, Report)> {
    let sum = assemble_bowtie(p)?;
    let report = check_quadri(&sum);
    Ok((sum, report))
}

/// `A ⊕ V` with `(x₁+u₁)∘(x₂+u₂) = x₁∘x₂ + l_∘(x₁)u₂ + r_∘(x₂)u₁`.
pub fn semidirect_sum(q: &QuadriAlgebra, m: &QuadriBimodule) -> Result<QuadriAlgebra> {
    let report = check_quadri_bimodule(q, m)?;
    if !report.passed() {
        return Err(Error::precondition("not a bimodule of the algebra", report));
    }
    semidirect_sum_unchecked(q, m)
}

/// Assembles the semidirect cubes without validating the bimodule.
pub fn semidirect_sum_unchecked(q: &QuadriAlgebra, m: &QuadriBimodule) -> Result<QuadriAlgebra> {
    let (n, k) = (q.dim(), m.module_dim());
    assemble_bowtie(&QuadriMatchedPair {
        a: q.clone(),
        b: QuadriAlgebra::zero(k),
        a_on_b: m.clone(),
        b_on_a: QuadriBimodule::zero(k, n),
    })
}

/// Solves the four defining identities of a nondegenerate symmetric
/// 2-cocycle for the quadri operations.
pub fn quadri_from_2cocycle(d: &DendriformAlgebra, form: &BilinearForm) -> Result<QuadriAlgebra> {
    let n = d.dim();
    let cocycle = check_dd_2cocycle(d, form)?;
    if cocycle.has_tag_prefix("symmetry") {
        return Err(Error::precondition("form is not symmetric", cocycle.filtered("symmetry")));
    }
    let g = form.gram();
    let g_inv_t = g
        .inverse()
        .ok_or_else(|| Error::Degenerate("form is degenerate".into()))?
        .transpose();
    if !cocycle.passed() {
        return Err(Error::precondition("form is not a 2-cocycle", cocycle));
    }
    let star = d.star();
    let b = |u: &[Scalar], v: &[Scalar]| dot(u, &g.mul_vec(v));
    let e = |i: usize| basis_vec(n, i);
    // x∘y is the vector w with B(w, e_k) = rhs_k, i.e. Gᵀ w = rhs.
    let solve = |rhs: &dyn Fn(usize, usize, usize) -> Scalar| {
        BilinearOp::from_fn(n, |i, j, k| {
            let v: Vector = (0..n).map(|z| rhs(i, j, z)).collect();
            g_inv_t.mul_vec(&v)[k].clone()
        })
    };
    let nw = solve(&|i, j, z| b(&e(i), &star.basis_product(j, z)));
    let ne = solve(&|i, j, z| -b(&e(j), &d.succ.basis_product(z, i)));
    let sw = solve(&|i, j, z| -b(&e(i), &d.prec.basis_product(j, z)));
    let se = solve(&|i, j, z| b(&e(j), &star.basis_product(z, i)));
    QuadriAlgebra::new(nw, ne, sw, se)
}

/// Symmetry plus the four invariance identities.
pub fn check_invariant_form(q: &QuadriAlgebra, form: &BilinearForm) -> Result<Report> {
    let n = q.dim();
    if form.dim() != n {
        return Err(Error::shape("form dimension differs from algebra dimension"));
    }
    let mut report = Report::new();
    check_symmetry(&mut report, form);
    let g = form.gram();
    let b = |u: &[Scalar], v: &[Scalar]| dot(u, &g.mul_vec(v));
    let e = |i: usize| basis_vec(n, i);
    let d = derived_ops(q);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let idx = [i, j, k];
                let (x, y, z) = (e(i), e(j), e(k));
                report.check(
                    "B(x↖y,z) = B(x,y★z)",
                    &idx,
                    vec![b(&q.nw.basis_product(i, j), &z) - b(&x, &d.star.basis_product(j, k))],
                );
                report.check(
                    "B(x↗y,z) = -B(y,z∨x)",
                    &idx,
                    vec![b(&q.ne.basis_product(i, j), &z) + b(&y, &d.vee.basis_product(k, i))],
                );
                report.check(
                    "B(x↙y,z) = -B(x,y∧z)",
                    &idx,
                    vec![b(&q.sw.basis_product(i, j), &z) + b(&x, &d.wedge.basis_product(j, k))],
                );
                report.check(
                    "B(x↘y,z) = B(y,z★x)",
                    &idx,
                    vec![b(&q.se.basis_product(i, j), &z) - b(&y, &d.star.basis_product(k, i))],
                );
            }
        }
    }
    Ok(report)
}

pub const OMEGA_WEDGE: &str = "ω(x,y∧z) = -ω(x↙y,z) + ω(z≻x,y)";
pub const OMEGA_VEE: &str = "ω(x,y∨z) = ω(x≺y,z) - ω(z↗x,y)";

/// The two 2-cocycle identities for a (not necessarily symmetric) form,
/// followed by the dendriform 2-cocycle check of `ω + ωᵀ` on the vertical
/// projection under the prefix `symmetrized`.
pub fn check_omega_2cocycle(q: &QuadriAlgebra, omega: &BilinearForm) -> Result<Report> {
    let mut report = check_omega_identities(q, omega)?;
    let g = omega.gram();
    let sym = BilinearForm::new(g.add(&g.transpose()))?;
    report.merge_prefixed(
        "symmetrized",
        check_dd_2cocycle(&project_dd(q, Projection::Vertical), &sym)?,
    );
    Ok(report)
}

/// Only the two defining identities of a quadri 2-cocycle.
pub fn check_omega_identities(q: &QuadriAlgebra, omega: &BilinearForm) -> Result<Report> {
    let n = q.dim();
    if omega.dim() != n {
        return Err(Error::shape("form dimension differs from algebra dimension"));
    }
    let g = omega.gram();
    let w = |u: &[Scalar], v: &[Scalar]| dot(u, &g.mul_vec(v));
    let e = |i: usize| basis_vec(n, i);
    let d = derived_ops(q);
    let mut report = Report::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let idx = [i, j, k];
                let (x, y, z) = (e(i), e(j), e(k));
                let lhs = w(&x, &d.wedge.basis_product(j, k));
                let rhs = -w(&q.sw.basis_product(i, j), &z) + w(&d.succ.basis_product(k, i), &y);
                report.check(OMEGA_WEDGE, &idx, vec![lhs - rhs]);
                let lhs = w(&x, &d.vee.basis_product(j, k));
                let rhs = w(&d.prec.basis_product(i, j), &z) - w(&q.ne.basis_product(k, i), &y);
                report.check(OMEGA_VEE, &idx, vec![lhs - rhs]);
            }
        }
    }
    Ok(report)
}

/// Standard Manin triple of quadri-algebras on `A ⊕ A*`, `dim A = n`.
pub fn check_manin_quadri(q: &QuadriAlgebra, n: usize) -> Result<Report> {
    if q.dim() != 2 * n {
        return Err(Error::shape(format!(
            "Manin check needs dimension 2·{n}, got {}",
            q.dim()
        )));
    }
    let mut report = Report::new();
    check_halves_closed(&mut report, &q.named_ops(), n);
    check_halves_isotropic(&mut report, n)?;
    report.merge_prefixed("invariance", check_invariant_form(q, &BilinearForm::hyperbolic(n))?);
    Ok(report)
}

/// Vertical projections with the summed action maps.
pub fn induced_dd_matched_pair(p: &QuadriMatchedPair) -> DDMatchedPair {
    let fold = |m: &QuadriBimodule| DDBimodule {
        l_prec: m.l(Op::Wedge),
        r_prec: m.r(Op::Wedge),
        l_succ: m.l(Op::Vee),
        r_succ: m.r(Op::Vee),
    };
    DDMatchedPair {
        a: project_dd(&p.a, Projection::Vertical),
        b: project_dd(&p.b, Projection::Vertical),
        a_on_b: fold(&p.a_on_b),
        b_on_a: fold(&p.b_on_a),
    }
}

/// Checks for the three equivalent descriptions of a quadri structure:
/// the axioms, the vertical projection with its regular bimodule, and the
/// horizontal projection with its regular bimodule.
pub fn structure_equivalence(q: &QuadriAlgebra) -> [bool; 3] {
    let v = project_dd(q, Projection::Vertical);
    let h = project_dd(q, Projection::Horizontal);
    let vert = check_dendriform(&v).passed()
        && crate::dendriform::check_dd_bimodule(&v, &vertical_regular_bimodule(q))
            .map(|r| r.passed())
            .unwrap_or(false);
    let hor = check_dendriform(&h).passed()
        && crate::dendriform::check_dd_bimodule(&h, &horizontal_regular_bimodule(q))
            .map(|r| r.passed())
            .unwrap_or(false);
    [check_quadri(q).passed(), vert, hor]
}

/// Block-diagonal identity helper used by callers building maps on `A ⊕ B`.
pub fn direct_sum_matrix(a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::block(
        a,
        &Matrix::zeros(a.rows(), b.cols()),
        &Matrix::zeros(b.rows(), a.cols()),
        b,
    )
}
