//! Rota-Baxter, Nijenhuis and O-operators, and the operator families on
//! doubles and semidirect sums.

use num::{One, Zero};

use crate::bialgebra::{check_q_equation, double_from_r_unchecked};
use crate::dendriform::{
    build_dd_bowtie, check_dd_bimodule, check_homomorphism, dd_matched_pair_conditions, DDBimodule,
    DDMatchedPair, DendriformAlgebra, Structure,
};
use crate::error::{Error, Result};
use crate::exactlin::{frac, vec_add, vec_sub, BilinearOp, LinearMap, Matrix, Scalar, TensorElement};
use crate::quadri::{
    check_quadri, check_quadri_bimodule, project_dd, vertical_regular_bimodule, Op, Projection, QuadriAlgebra,
    QuadriBimodule,
};
use crate::report::Report;

/// A vector space with a named set of bilinear operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpFamilyAlgebra {
    pub ops: Vec<(String, BilinearOp)>,
}

impl OpFamilyAlgebra {
    pub fn new(ops: Vec<(String, BilinearOp)>) -> Result<Self> {
        let Some((_, first)) = ops.first() else {
            return Err(Error::shape("operation family is empty"));
        };
        let n = first.dim();
        if ops.iter().any(|(_, c)| c.dim() != n) {
            return Err(Error::shape("operations have different dimensions"));
        }
        Ok(Self { ops })
    }

    pub fn quadri(q: &QuadriAlgebra) -> Self {
        Self {
            ops: q
                .named_ops()
                .into_iter()
                .map(|(s, c)| (s.to_string(), c.clone()))
                .collect(),
        }
    }

    pub fn dendriform(d: &DendriformAlgebra) -> Self {
        Self {
            ops: vec![("≺".into(), d.prec.clone()), ("≻".into(), d.succ.clone())],
        }
    }

    pub fn associative(op: &BilinearOp) -> Self {
        Self {
            ops: vec![("∗".into(), op.clone())],
        }
    }

    pub fn dim(&self) -> usize {
        self.ops[0].1.dim()
    }

    /// Sum of all operations.
    pub fn star(&self) -> BilinearOp {
        BilinearOp::sum(self.dim(), self.ops.iter().map(|(_, c)| c))
    }

    fn with_star(&self) -> Vec<(String, BilinearOp)> {
        let mut all = self.ops.clone();
        if all.len() > 1 {
            all.push(("★".into(), self.star()));
        }
        all
    }
}

fn require_square(a: &OpFamilyAlgebra, p: &Matrix) -> Result<()> {
    if p.rows() != a.dim() || p.cols() != a.dim() {
        return Err(Error::shape(format!(
            "operator is {}x{}, algebra has dimension {}",
            p.rows(),
            p.cols(),
            a.dim()
        )));
    }
    Ok(())
}

/// `P(x)∗P(y) = P(P(x)∗y + x∗P(y) + λ x∗y)` for every operation.
pub fn check_rota_baxter(a: &OpFamilyAlgebra, p: &Matrix, lambda: &Scalar) -> Result<Report> {
    require_square(a, p)?;
    let n = a.dim();
    let mut report = Report::new();
    for (name, op) in &a.ops {
        let tag = format!("P(x){name}P(y) = P(P(x){name}y + x{name}P(y) + λx{name}y)");
        for i in 0..n {
            for j in 0..n {
                let (px, py) = (p.column(i), p.column(j));
                let lhs = op.apply(&px, &py);
                let xy: Vec<Scalar> = op.basis_product(i, j).iter().map(|c| c * lambda).collect();
                let inner = vec_add(
                    &vec_add(&op.apply(&px, &crate::exactlin::basis_vec(n, j)), &op.apply(&crate::exactlin::basis_vec(n, i), &py)),
                    &xy,
                );
                report.check(&tag, &[i, j], vec_sub(&lhs, &p.mul_vec(&inner)));
            }
        }
    }
    Ok(report)
}

/// `N(x)∗N(y) = N(N(x)∗y + x∗N(y) - N(x∗y))` for every operation and for
/// the sum `★` of all of them.
pub fn check_nijenhuis(a: &OpFamilyAlgebra, nmat: &Matrix) -> Result<Report> {
    require_square(a, nmat)?;
    let n = a.dim();
    let e = |i: usize| crate::exactlin::basis_vec(n, i);
    let mut report = Report::new();
    for (name, op) in a.with_star() {
        let tag = format!("N(x){name}N(y) = N(N(x){name}y + x{name}N(y) - N(x{name}y))");
        for i in 0..n {
            for j in 0..n {
                let (nx, ny) = (nmat.column(i), nmat.column(j));
                let lhs = op.apply(&nx, &ny);
                let inner = vec_sub(
                    &vec_add(&op.apply(&nx, &e(j)), &op.apply(&e(i), &ny)),
                    &nmat.mul_vec(&op.basis_product(i, j)),
                );
                report.check(&tag, &[i, j], vec_sub(&lhs, &nmat.mul_vec(&inner)));
            }
        }
    }
    Ok(report)
}

/// `P = (-λ id - N)/2`, defined when `N² = λ² id`.
pub fn nijenhuis_to_rb(nmat: &Matrix, lambda: &Scalar) -> Result<Matrix> {
    if !nmat.is_square() {
        return Err(Error::shape("operator must be square"));
    }
    let n = nmat.rows();
    let lam2 = Matrix::scalar_identity(n, &(lambda * lambda));
    if nmat.mul(nmat) != lam2 {
        return Err(Error::Parameter("N² differs from λ²·id".into()));
    }
    let half = frac(1, 2);
    Ok(Matrix::scalar_identity(n, &-lambda).sub(nmat).scale(&half))
}

/// A skew Q-solution `r` on `A` together with its Drinfeld double.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDouble {
    pub base: QuadriAlgebra,
    pub r: TensorElement,
    pub algebra: QuadriAlgebra,
    t: Matrix,
    t_inv: Option<Matrix>,
}

impl QDouble {
    pub fn new(base: &QuadriAlgebra, r: &TensorElement) -> Result<Self> {
        if base.dim() != r.dim() {
            return Err(Error::shape("tensor and algebra dimensions differ"));
        }
        let qeq = check_q_equation(base, r)?;
        if !r.is_skew() {
            return Err(Error::precondition("r is not skew-symmetric", qeq));
        }
        if !qeq.passed() {
            return Err(Error::precondition("r does not solve the Q-equation", qeq));
        }
        Ok(Self {
            base: base.clone(),
            r: r.clone(),
            algebra: double_from_r_unchecked(base, r),
            t: r.coeffs().clone(),
            t_inv: r.coeffs().inverse(),
        })
    }

    pub fn n(&self) -> usize {
        self.base.dim()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.t_inv.is_some()
    }

    pub fn family(&self) -> OpFamilyAlgebra {
        OpFamilyAlgebra::quadri(&self.algebra)
    }

    fn t_inv(&self) -> Result<&Matrix> {
        self.t_inv
            .as_ref()
            .ok_or_else(|| Error::Degenerate("r is degenerate, T_r has no inverse".into()))
    }

    /// `[[a I, b T], [c T⁻¹ or c I, d I]]`.
    fn blocks(&self, a: &Scalar, b: &Scalar, c: &Matrix, d: &Scalar) -> Matrix {
        let n = self.n();
        Matrix::block(
            &Matrix::scalar_identity(n, a),
            &self.t.scale(b),
            c,
            &Matrix::scalar_identity(n, d),
        )
    }
}

/// Parameters of the block Nijenhuis operators on a double.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DoubleParams {
    /// `(x, a*) ↦ (λ₁T(a*) + λ₂x, λ₃T⁻¹(x) + λ₄a*)`
    Full([Scalar; 4]),
    /// `(x, a*) ↦ (λ₁T(a*) + λ₂x, λ₃a*)`
    Triangular([Scalar; 3]),
}

pub fn double_nijenhuis(qd: &QDouble, params: &DoubleParams) -> Result<Matrix> {
    let n = qd.n();
    Ok(match params {
        DoubleParams::Full([l1, l2, l3, l4]) => {
            let c = if l3.is_zero() {
                Matrix::zeros(n, n)
            } else {
                qd.t_inv()?.scale(l3)
            };
            qd.blocks(l2, l1, &c, l4)
        }
        DoubleParams::Triangular([l1, l2, l3]) => qd.blocks(l2, l1, &Matrix::zeros(n, n), l3),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    F1,
    F2,
    F3,
    G1,
    G2,
    G3,
}

impl FamilyKind {
    pub fn is_idempotent_family(self) -> bool {
        matches!(self, FamilyKind::G1 | FamilyKind::G2 | FamilyKind::G3)
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "F1" => FamilyKind::F1,
            "F2" => FamilyKind::F2,
            "F3" => FamilyKind::F3,
            "G1" => FamilyKind::G1,
            "G2" => FamilyKind::G2,
            "G3" => FamilyKind::G3,
            _ => return Err(Error::parse(format!("unknown family {s:?}"))),
        })
    }
}

/// Parameters for the Rota-Baxter families. `lambda` is ignored (forced to
/// −1) for the G families; `sign` picks the `+` or `−` member of the first
/// two families; `lambda3`, when given, must match the value forced by
/// `N² = λ² id` for the third family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub lambda: Scalar,
    pub plus: bool,
    pub k: Scalar,
    pub k1: Scalar,
    pub k2: Scalar,
    pub lambda3: Option<Scalar>,
}

impl Default for FamilyParams {
    fn default() -> Self {
        Self {
            lambda: Scalar::zero(),
            plus: true,
            k: Scalar::zero(),
            k1: Scalar::zero(),
            k2: Scalar::zero(),
            lambda3: None,
        }
    }
}

impl FamilyParams {
    pub fn weight(&self, kind: FamilyKind) -> Scalar {
        if kind.is_idempotent_family() {
            -Scalar::one()
        } else {
            self.lambda.clone()
        }
    }
}

/// The Nijenhuis operator `N` whose conversion gives the family member.
pub fn family_nijenhuis(kind: FamilyKind, p: &FamilyParams, qd: &QDouble) -> Result<Matrix> {
    let lam = p.weight(kind);
    let z = Scalar::zero();
    let params = match kind {
        FamilyKind::F1 | FamilyKind::G1 => {
            if p.k.is_zero() {
                return Err(Error::Parameter("k must be nonzero".into()));
            }
            let (l2, l4) = if p.plus { (lam.clone(), -lam) } else { (-lam.clone(), lam) };
            DoubleParams::Full([z, l2, p.k.clone(), l4])
        }
        FamilyKind::F2 | FamilyKind::G2 => {
            if p.k.is_zero() && lam.is_zero() {
                return Err(Error::Parameter("(k̂, λ) must not both vanish".into()));
            }
            let (l2, l4) = if p.plus { (lam.clone(), -lam) } else { (-lam.clone(), lam) };
            DoubleParams::Full([p.k.clone(), l2, z, l4])
        }
        FamilyKind::F3 | FamilyKind::G3 => {
            if p.k1.is_zero() {
                return Err(Error::Parameter("k₁ must be nonzero".into()));
            }
            if p.k2 == lam || p.k2 == -lam.clone() {
                return Err(Error::Parameter("k₂ must differ from ±λ".into()));
            }
            let l3 = (&lam * &lam - &p.k2 * &p.k2) / &p.k1;
            if let Some(given) = &p.lambda3 {
                if *given != l3 {
                    return Err(Error::Parameter(format!(
                        "λ₃ is forced to (λ²-k₂²)/k₁ = {}",
                        crate::exactlin::format_scalar(&l3)
                    )));
                }
            }
            DoubleParams::Full([p.k1.clone(), p.k2.clone(), l3, -p.k2.clone()])
        }
    };
    double_nijenhuis(qd, &params)
}

/// The explicit block operator of each family.
pub fn rb_family(kind: FamilyKind, p: &FamilyParams, qd: &QDouble) -> Result<Matrix> {
    // parameter validation is shared with the defining Nijenhuis operator
    family_nijenhuis(kind, p, qd)?;
    let lam = p.weight(kind);
    let n = qd.n();
    let z = Scalar::zero();
    let zn = Matrix::zeros(n, n);
    let half = frac(1, 2);
    Ok(match kind {
        FamilyKind::F1 | FamilyKind::G1 => {
            let c = qd.t_inv()?.scale(&(-&p.k * &half));
            if p.plus {
                qd.blocks(&-lam, &z, &c, &z)
            } else {
                qd.blocks(&z, &z, &c, &-lam)
            }
        }
        FamilyKind::F2 | FamilyKind::G2 => {
            let b = -&p.k * &half;
            if p.plus {
                qd.blocks(&-lam, &b, &zn, &z)
            } else {
                qd.blocks(&z, &b, &zn, &-lam)
            }
        }
        FamilyKind::F3 | FamilyKind::G3 => {
            let a = -(&p.k2 + &lam) * &half;
            let b = -&p.k1 * &half;
            let c = (&p.k2 * &p.k2 - &lam * &lam) / (Scalar::from_integer(2.into()) * &p.k1);
            let d = (&p.k2 - &lam) * &half;
            qd.blocks(&a, &b, &qd.t_inv()?.scale(&c), &d)
        }
    })
}

/// Output of [`semidirect_nijenhuis_theta`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemidirectNijenhuis {
    pub semidirect: DendriformAlgebra,
    pub operator: Matrix,
    pub theta: LinearMap,
    /// The self-bowtie when the self matched-pair conditions hold.
    pub bowtie: Option<DendriformAlgebra>,
    pub report: Report,
}

fn dd_semidirect(d: &DendriformAlgebra, m: &DDBimodule) -> Result<DendriformAlgebra> {
    let n = d.dim();
    let k = m.module_dim();
    let pair = DDMatchedPair {
        a: d.clone(),
        b: DendriformAlgebra::zero(k),
        a_on_b: m.clone(),
        b_on_a: DDBimodule::zero(k, n),
    };
    Ok(build_dd_bowtie(&pair)?.0)
}

/// `N(x, y) = (λ₁y + λ₂x, λ₃x + λ₄y)` on `A_v ⋉ A` (vertical projection,
/// regular bimodule `(L↗, R↖, L↘, R↙)`) and `θ(x, y) = (x + y, x)`.
pub fn semidirect_nijenhuis_theta(q: &QuadriAlgebra, params: &[Scalar; 4]) -> Result<SemidirectNijenhuis> {
    let axioms = check_quadri(q);
    if !axioms.passed() {
        return Err(Error::precondition("not a quadri-algebra", axioms));
    }
    let n = q.dim();
    let v = project_dd(q, Projection::Vertical);
    let m = vertical_regular_bimodule(q);
    let semidirect = dd_semidirect(&v, &m)?;
    let [l1, l2, l3, l4] = params;
    let id = Matrix::identity(n);
    let operator = Matrix::block(&id.scale(l2), &id.scale(l1), &id.scale(l3), &id.scale(l4));
    let theta_m = Matrix::block(&id, &id, &id, &Matrix::zeros(n, n));
    let theta_inv = Matrix::block(&Matrix::zeros(n, n), &id, &id, &id.neg());
    let mut report = Report::new();
    report.merge_prefixed(
        "semidirect",
        check_nijenhuis(&OpFamilyAlgebra::dendriform(&semidirect), &operator)?,
    );
    if theta_m.mul(&theta_inv) != Matrix::identity(2 * n) {
        report.push("θ invertible", vec![], vec![]);
    }
    let pair = DDMatchedPair {
        a: v.clone(),
        b: v.clone(),
        a_on_b: m.clone(),
        b_on_a: m,
    };
    let conditions = dd_matched_pair_conditions(&pair)?;
    let bowtie = if conditions.passed() {
        let (b, _) = build_dd_bowtie(&pair)?;
        report.merge_prefixed(
            "bowtie",
            check_nijenhuis(&OpFamilyAlgebra::dendriform(&b), &operator)?,
        );
        report.merge_prefixed(
            "θ",
            check_homomorphism(
                &LinearMap::new(theta_m.clone()),
                Structure::Dendriform(&b),
                Structure::Dendriform(&semidirect),
            )?,
        );
        Some(b)
    } else {
        report.note("self matched-pair conditions fail; bowtie and θ not checked");
        None
    };
    Ok(SemidirectNijenhuis {
        semidirect,
        operator,
        theta: LinearMap::new(theta_m),
        bowtie,
        report,
    })
}

/// Algebra, bimodule and kind for an O-operator check.
#[derive(Clone, Copy, Debug)]
pub enum OOperatorInput<'a> {
    Dendriform(&'a DendriformAlgebra, &'a DDBimodule),
    Quadri(&'a QuadriAlgebra, &'a QuadriBimodule),
}

/// `T(u)∘T(v) = T(l_∘(T(u))v + r_∘(T(v))u)` for every operation of the kind.
pub fn check_o_operator(input: OOperatorInput<'_>, t: &LinearMap) -> Result<Report> {
    let (n, k, actions): (usize, usize, Vec<(String, BilinearOp, _, _)>) = match input {
        OOperatorInput::Dendriform(d, m) => {
            let valid = check_dd_bimodule(d, m)?;
            if !valid.passed() {
                return Err(Error::precondition("not a bimodule of the algebra", valid));
            }
            (
                d.dim(),
                m.module_dim(),
                vec![
                    ("≺".to_string(), d.prec.clone(), m.l_prec.clone(), m.r_prec.clone()),
                    ("≻".to_string(), d.succ.clone(), m.l_succ.clone(), m.r_succ.clone()),
                ],
            )
        }
        OOperatorInput::Quadri(q, m) => {
            let valid = check_quadri_bimodule(q, m)?;
            if !valid.passed() {
                return Err(Error::precondition("not a bimodule of the algebra", valid));
            }
            (
                q.dim(),
                m.module_dim(),
                Op::BASE
                    .iter()
                    .map(|&o| (o.symbol().to_string(), q.op(o), m.l(o), m.r(o)))
                    .collect(),
            )
        }
    };
    if t.src_dim() != k || t.dst_dim() != n {
        return Err(Error::shape("T must map the module into the algebra"));
    }
    let tm = t.matrix();
    let mut report = Report::new();
    for (name, op, l, r) in &actions {
        let tag = format!("T(u){name}T(v) = T(l{name}(T(u))v + r{name}(T(v))u)");
        for i in 0..k {
            for j in 0..k {
                let (tu, tv) = (tm.column(i), tm.column(j));
                let lhs = op.apply(&tu, &tv);
                let inner = vec_add(&l.eval(&tu).column(j), &r.eval(&tv).column(i));
                report.check(&tag, &[i, j], vec_sub(&lhs, &tm.mul_vec(&inner)));
            }
        }
    }
    Ok(report)
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

    #[test]
    fn trivial_rota_baxter() {
        let a = OpFamilyAlgebra::quadri(&se1());
        for lam in [int(0), int(2), frac(-1, 3)] {
            assert!(check_rota_baxter(&a, &Matrix::zeros(1, 1), &lam).unwrap().passed());
            let p = Matrix::scalar_identity(1, &-lam.clone());
            assert!(check_rota_baxter(&a, &p, &lam).unwrap().passed());
        }
        assert!(!check_rota_baxter(&a, &Matrix::identity(1), &int(0)).unwrap().passed());
    }

    #[test]
    fn trivial_nijenhuis_and_conversion() {
        let a = OpFamilyAlgebra::quadri(&se1());
        assert!(check_nijenhuis(&a, &Matrix::identity(1)).unwrap().passed());
        assert!(check_nijenhuis(&a, &Matrix::zeros(1, 1)).unwrap().passed());
        let lam = int(3);
        let n = Matrix::scalar_identity(2, &lam);
        assert_eq!(nijenhuis_to_rb(&n, &lam).unwrap(), Matrix::scalar_identity(2, &int(-3)));
        assert!(nijenhuis_to_rb(&n.neg(), &lam).unwrap().is_zero());
        assert!(matches!(
            nijenhuis_to_rb(&Matrix::identity(2), &int(2)),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn family_examples_on_zero_double() {
        let z = QuadriAlgebra::zero(2);
        let r = TensorElement::new(Matrix::from_i64(&[&[0, 1], &[-1, 0]])).unwrap();
        let qd = QDouble::new(&z, &r).unwrap();
        let g2 = rb_family(
            FamilyKind::G2,
            &FamilyParams {
                plus: false,
                ..Default::default()
            },
            &qd,
        )
        .unwrap();
        let proj = Matrix::block(
            &Matrix::zeros(2, 2),
            &Matrix::zeros(2, 2),
            &Matrix::zeros(2, 2),
            &Matrix::identity(2),
        );
        assert_eq!(g2, proj);
        let f2 = rb_family(
            FamilyKind::F2,
            &FamilyParams {
                k: int(2),
                ..Default::default()
            },
            &qd,
        )
        .unwrap();
        let expect = Matrix::block(&Matrix::zeros(2, 2), &r.coeffs().neg(), &Matrix::zeros(2, 2), &Matrix::zeros(2, 2));
        assert_eq!(f2, expect);
        let g3 = rb_family(
            FamilyKind::G3,
            &FamilyParams {
                k1: int(2),
                ..Default::default()
            },
            &qd,
        )
        .unwrap();
        let tinv = r.coeffs().inverse().unwrap();
        let expect = Matrix::block(
            &Matrix::scalar_identity(2, &frac(1, 2)),
            &r.coeffs().neg(),
            &tinv.scale(&frac(-1, 4)),
            &Matrix::scalar_identity(2, &frac(1, 2)),
        );
        assert_eq!(g3, expect);
        assert_eq!(g3.mul(&g3), g3);
        let bad = FamilyParams {
            k1: int(2),
            lambda3: Some(int(7)),
            ..Default::default()
        };
        assert!(matches!(rb_family(FamilyKind::G3, &bad, &qd), Err(Error::Parameter(_))));
    }

    #[test]
    fn semidirect_theta_identity() {
        let out = semidirect_nijenhuis_theta(&se1(), &[int(0), int(1), int(0), int(1)]).unwrap();
        assert_eq!(out.operator, Matrix::identity(2));
        assert!(out.report.passed(), "{}", out.report);
        let z = semidirect_nijenhuis_theta(&QuadriAlgebra::zero(2), &[int(1), int(2), int(3), int(4)]).unwrap();
        assert!(z.report.passed());
    }

    #[test]
    fn o_operator_trivial() {
        let q = se1();
        let m = crate::quadri::dual_quadri_bimodule(&QuadriBimodule::regular(&q));
        let t0 = LinearMap::new(Matrix::zeros(1, 1));
        assert!(check_o_operator(OOperatorInput::Quadri(&q, &m), &t0).unwrap().passed());
        let z = QuadriAlgebra::zero(2);
        let mz = QuadriBimodule::zero(2, 2);
        let t = LinearMap::new(Matrix::from_i64(&[&[1, 2], &[3, 4]]));
        assert!(check_o_operator(OOperatorInput::Quadri(&z, &mz), &t).unwrap().passed());
    }
}
