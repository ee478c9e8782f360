//! Exhaustive and seeded enumeration of small structures and Q-solutions.

use num::{BigInt, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bialgebra::{check_coboundary_coalgebra, check_q_equation, q_tensors};
use crate::dendriform::{check_dendriform, DendriformAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::{BilinearOp, Matrix, Scalar, Tensor3, TensorElement};
use crate::exec::Executor;
use crate::quadri::{check_quadri, derived_ops, QuadriAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchKind {
    Dendriform,
    Quadri,
}

impl SearchKind {
    pub fn op_count(self) -> usize {
        match self {
            SearchKind::Dendriform => 2,
            SearchKind::Quadri => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub kind: SearchKind,
    pub dim: usize,
    pub coefficients: Vec<Scalar>,
    /// Which structure constants may be nonzero, in `op, i, j, k` order;
    /// `None` allows all of them.
    pub mask: Option<Vec<bool>>,
    /// Upper bound on the number of nonzero structure constants.
    pub max_nonzero: Option<usize>,
    pub seed: u64,
    pub budget: u64,
}

impl SearchSpec {
    pub fn new(kind: SearchKind, dim: usize, coefficients: Vec<Scalar>) -> Self {
        Self {
            kind,
            dim,
            coefficients,
            mask: None,
            max_nonzero: None,
            seed: 0,
            budget: 1 << 20,
        }
    }

    pub fn slots(&self) -> usize {
        self.kind.op_count() * self.dim.pow(3)
    }

    /// Mask allowing only the cube at `op` (0-based in the kind's order).
    pub fn single_op_mask(kind: SearchKind, dim: usize, op: usize) -> Vec<bool> {
        let per = dim.pow(3);
        (0..kind.op_count() * per).map(|p| p / per == op).collect()
    }

    fn validate(&self) -> Result<Vec<usize>> {
        if self.dim == 0 {
            return Err(Error::Parameter("dimension must be positive".into()));
        }
        if self.coefficients.is_empty() {
            return Err(Error::Parameter("coefficient set is empty".into()));
        }
        match &self.mask {
            Some(m) if m.len() != self.slots() => Err(Error::shape(format!(
                "mask has {} entries, expected {}",
                m.len(),
                self.slots()
            ))),
            Some(m) => Ok((0..m.len()).filter(|&p| m[p]).collect()),
            None => Ok((0..self.slots()).collect()),
        }
    }
}

/// A structure found by [`enumerate_structures`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Found {
    Dendriform(DendriformAlgebra),
    Quadri(QuadriAlgebra),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome<T> {
    pub hits: Vec<T>,
    /// Candidates examined.
    pub checked: u128,
    /// Size of the candidate space.
    pub total: u128,
    pub exhaustive: bool,
}

impl<T> SearchOutcome<T> {
    pub fn coverage(&self) -> f64 {
        if self.total == 0 {
            1.0
        } else {
            self.checked as f64 / self.total as f64
        }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Number of assignments of `coeffs` to `slots` positions with at most
/// `max_nonzero` nonzero values.
fn candidate_count(slots: usize, coeffs: &[Scalar], max_nonzero: Option<usize>) -> u128 {
    let c = coeffs.len() as u128;
    let has_zero = coeffs.iter().any(Zero::is_zero);
    match max_nonzero {
        None => (c).checked_pow(slots as u32).unwrap_or(u128::MAX),
        Some(m) if has_zero => {
            let nz = c - 1;
            (0..=m.min(slots))
                .map(|k| binomial(slots as u128, k as u128).saturating_mul(nz.saturating_pow(k as u32)))
                .fold(0u128, |a, b| a.saturating_add(b))
        }
        Some(m) => {
            if slots <= m {
                c.checked_pow(slots as u32).unwrap_or(u128::MAX)
            } else {
                0
            }
        }
    }
}

/// All assignments in lexicographic order of the coefficient indices.
fn all_assignments(slots: usize, coeffs: &[Scalar], max_nonzero: Option<usize>) -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    let mut cur: Vec<Scalar> = Vec::with_capacity(slots);
    fn rec(
        slots: usize,
        coeffs: &[Scalar],
        budget: Option<usize>,
        cur: &mut Vec<Scalar>,
        out: &mut Vec<Vec<Scalar>>,
    ) {
        if cur.len() == slots {
            out.push(cur.clone());
            return;
        }
        for c in coeffs {
            let nz = !c.is_zero();
            if nz && budget == Some(0) {
                continue;
            }
            cur.push(c.clone());
            rec(slots, coeffs, budget.map(|b| b - usize::from(nz)), cur, out);
            cur.pop();
        }
    }
    rec(slots, coeffs, max_nonzero, &mut cur, &mut out);
    out
}

fn sample_assignment(rng: &mut ChaCha8Rng, slots: usize, coeffs: &[Scalar], max_nonzero: Option<usize>) -> Vec<Scalar> {
    match max_nonzero {
        Some(m) if coeffs.iter().any(Zero::is_zero) => {
            let nonzero: Vec<&Scalar> = coeffs.iter().filter(|c| !c.is_zero()).collect();
            let mut out = vec![Scalar::zero(); slots];
            if nonzero.is_empty() {
                return out;
            }
            let k = rng.gen_range(0..=m.min(slots));
            let mut positions: Vec<usize> = (0..slots).collect();
            for i in 0..k {
                let j = rng.gen_range(i..slots);
                positions.swap(i, j);
                out[positions[i]] = nonzero[rng.gen_range(0..nonzero.len())].clone();
            }
            out
        }
        _ => (0..slots)
            .map(|_| coeffs[rng.gen_range(0..coeffs.len())].clone())
            .collect(),
    }
}

fn assemble(spec: &SearchSpec, positions: &[usize], values: &[Scalar]) -> Vec<BilinearOp> {
    let n = spec.dim;
    let per = n.pow(3);
    let mut flat = vec![Scalar::zero(); spec.slots()];
    for (p, v) in positions.iter().zip(values) {
        flat[*p] = v.clone();
    }
    (0..spec.kind.op_count())
        .map(|o| BilinearOp::from_flat(n, flat[o * per..(o + 1) * per].to_vec()).unwrap())
        .collect()
}

fn validate_candidate(kind: SearchKind, cubes: Vec<BilinearOp>) -> Option<Found> {
    match kind {
        SearchKind::Dendriform => {
            let mut it = cubes.into_iter();
            let d = DendriformAlgebra {
                prec: it.next().unwrap(),
                succ: it.next().unwrap(),
            };
            check_dendriform(&d).passed().then_some(Found::Dendriform(d))
        }
        SearchKind::Quadri => {
            let [nw, ne, sw, se]: [BilinearOp; 4] = cubes.try_into().unwrap();
            let q = QuadriAlgebra { nw, ne, sw, se };
            check_quadri(&q).passed().then_some(Found::Quadri(q))
        }
    }
}

fn flat_key(f: &Found) -> Vec<Scalar> {
    let cubes: Vec<&BilinearOp> = match f {
        Found::Dendriform(d) => vec![&d.prec, &d.succ],
        Found::Quadri(q) => q.base().to_vec(),
    };
    cubes.into_iter().flat_map(|c| c.flat().iter().cloned()).collect()
}

pub fn enumerate_structures(spec: &SearchSpec) -> Result<SearchOutcome<Found>> {
    enumerate_structures_with(spec, Executor::default())
}

/// Exhaustive when the candidate space fits the budget, otherwise `budget`
/// seeded samples. Hits are deduplicated and sorted lexicographically by
/// structure constants.
pub fn enumerate_structures_with(spec: &SearchSpec, exec: Executor) -> Result<SearchOutcome<Found>> {
    let positions = spec.validate()?;
    let total = candidate_count(positions.len(), &spec.coefficients, spec.max_nonzero);
    if spec.budget == 0 {
        return Err(Error::Budget { checked: 0, total });
    }
    let exhaustive = total <= spec.budget as u128;
    let candidates: Vec<Vec<Scalar>> = if exhaustive {
        all_assignments(positions.len(), &spec.coefficients, spec.max_nonzero)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        (0..spec.budget)
            .map(|_| sample_assignment(&mut rng, positions.len(), &spec.coefficients, spec.max_nonzero))
            .collect()
    };
    let checked = candidates.len() as u128;
    let found = exec.map(&candidates, |vals| {
        validate_candidate(spec.kind, assemble(spec, &positions, vals))
    });
    let mut hits: Vec<(Vec<Scalar>, Found)> = found.into_iter().flatten().map(|f| (flat_key(&f), f)).collect();
    hits.sort_by(|a, b| a.0.cmp(&b.0));
    hits.dedup_by(|a, b| a.0 == b.0);
    Ok(SearchOutcome {
        hits: hits.into_iter().map(|(_, f)| f).collect(),
        checked,
        total,
        exhaustive,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSearchSpec {
    pub coefficients: Vec<Scalar>,
    /// Which entries of the `n×n` coefficient matrix may be nonzero,
    /// row-major; for skew search only the strict upper triangle is read.
    pub mask: Option<Vec<bool>>,
    pub budget: u64,
    pub require_skew: bool,
    pub require_nondegenerate: bool,
    pub seed: u64,
}

fn free_cells(n: usize, skew: bool, mask: Option<&[bool]>) -> Vec<(usize, usize)> {
    let mut cells = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if (!skew || i < j) && mask.is_none_or(|m| m[i * n + j]) {
                cells.push((i, j));
            }
        }
    }
    cells
}

fn tensor_from(n: usize, skew: bool, cells: &[(usize, usize)], vals: &[Scalar]) -> TensorElement {
    let mut m = Matrix::zeros(n, n);
    for (&(i, j), v) in cells.iter().zip(vals) {
        if skew {
            m.set(j, i, -v.clone());
        }
        m.set(i, j, v.clone());
    }
    TensorElement::new(m).unwrap()
}

pub fn search_q_solutions(q: &QuadriAlgebra, spec: &QSearchSpec) -> Result<SearchOutcome<TensorElement>> {
    search_q_solutions_with(q, spec, Executor::default())
}

/// Tensors over the coefficient set solving the Q-equation; skew tensors
/// are parameterized by their strict upper triangle. Every hit is
/// re-verified by an index-loop expansion and, for skew hits, by the
/// coboundary-coalgebra conditions.
pub fn search_q_solutions_with(
    q: &QuadriAlgebra,
    spec: &QSearchSpec,
    exec: Executor,
) -> Result<SearchOutcome<TensorElement>> {
    let n = q.dim();
    if spec.coefficients.is_empty() {
        return Err(Error::Parameter("coefficient set is empty".into()));
    }
    if let Some(m) = &spec.mask {
        if m.len() != n * n {
            return Err(Error::shape(format!("mask has {} entries, expected {}", m.len(), n * n)));
        }
    }
    let cells = free_cells(n, spec.require_skew, spec.mask.as_deref());
    let slots = cells.len();
    let total = candidate_count(slots, &spec.coefficients, None);
    if spec.budget == 0 {
        return Err(Error::Budget { checked: 0, total });
    }
    let exhaustive = total <= spec.budget as u128;
    let candidates: Vec<Vec<Scalar>> = if exhaustive {
        all_assignments(slots, &spec.coefficients, None)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        (0..spec.budget)
            .map(|_| sample_assignment(&mut rng, slots, &spec.coefficients, None))
            .collect()
    };
    let checked = candidates.len() as u128;
    let found = exec.map(&candidates, |vals| -> Result<Option<TensorElement>> {
        let r = tensor_from(n, spec.require_skew, &cells, vals);
        if spec.require_nondegenerate && r.coeffs().determinant().is_zero() {
            return Ok(None);
        }
        if !check_q_equation(q, &r)?.passed() {
            return Ok(None);
        }
        let [q11, q12, ..] = q_tensors_bruteforce(q, &r);
        if !q11.is_zero() || !q12.is_zero() {
            return Err(Error::Parameter("index-loop expansion disagrees with the leg route".into()));
        }
        if r.is_skew() && !check_coboundary_coalgebra(q, &r)?.passed() {
            return Err(Error::Parameter("skew hit fails the coboundary-coalgebra conditions".into()));
        }
        Ok(Some(r))
    });
    let mut hits = Vec::new();
    for f in found {
        if let Some(r) = f? {
            hits.push(r);
        }
    }
    hits.sort_by(|a, b| a.coeffs().entries().cmp(b.coeffs().entries()));
    hits.dedup();
    Ok(SearchOutcome {
        hits,
        checked,
        total,
        exhaustive,
    })
}

/// The six Q-tensors by direct index expansion of
/// `r = Σ r[a][b] e_a⊗e_b`.
pub fn q_tensors_bruteforce(q: &QuadriAlgebra, r: &TensorElement) -> [Tensor3; 6] {
    let n = q.dim();
    let d = derived_ops(q);
    let c = r.coeffs();
    // r23∘r12 = Σ e_c ⊗ (e_a∘e_d) ⊗ e_b
    let t23_12 = |op: &BilinearOp| {
        let mut t = Tensor3::zero(n);
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    for dd in 0..n {
                        let w = c.get(a, b) * c.get(cc, dd);
                        if w.is_zero() {
                            continue;
                        }
                        for (k, v) in op.basis_product(a, dd).iter().enumerate() {
                            *t.entry_mut(cc, k, b) += &w * v;
                        }
                    }
                }
            }
        }
        t
    };
    // r13∘r23 = Σ e_a ⊗ e_c ⊗ (e_b∘e_d)
    let t13_23 = |op: &BilinearOp| {
        let mut t = Tensor3::zero(n);
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    for dd in 0..n {
                        let w = c.get(a, b) * c.get(cc, dd);
                        if w.is_zero() {
                            continue;
                        }
                        for (k, v) in op.basis_product(b, dd).iter().enumerate() {
                            *t.entry_mut(a, cc, k) += &w * v;
                        }
                    }
                }
            }
        }
        t
    };
    // r12∘r13 = Σ (e_a∘e_c) ⊗ e_b ⊗ e_d
    let t12_13 = |op: &BilinearOp| {
        let mut t = Tensor3::zero(n);
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    for dd in 0..n {
                        let w = c.get(a, b) * c.get(cc, dd);
                        if w.is_zero() {
                            continue;
                        }
                        for (k, v) in op.basis_product(a, cc).iter().enumerate() {
                            *t.entry_mut(k, b, dd) += &w * v;
                        }
                    }
                }
            }
        }
        t
    };
    [
        t23_12(&d.wedge).sub(&t13_23(&d.succ)).add(&t12_13(&q.sw)),
        t23_12(&d.vee).sub(&t12_13(&d.prec)).add(&t13_23(&q.ne)),
        t12_13(&d.wedge).sub(&t23_12(&d.succ)).sub(&t13_23(&q.sw)),
        t12_13(&d.vee).add(&t13_23(&d.prec)).add(&t23_12(&q.ne)),
        t13_23(&d.wedge).add(&t12_13(&d.succ)).add(&t23_12(&q.sw)),
        t13_23(&d.vee).sub(&t23_12(&d.prec)).sub(&t12_13(&q.ne)),
    ]
}

/// Checks the leg-product route against the index-loop expansion.
pub fn q_tensors_agree(q: &QuadriAlgebra, r: &TensorElement) -> Result<bool> {
    Ok(q_tensors(q, r)?.0 == q_tensors_bruteforce(q, r))
}

fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> Scalar {
    let bound = bound.max(1);
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=bound);
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Seeded skew tensor with entries `p/q`, `|p| ≤ bound`, `1 ≤ q ≤ bound`.
pub fn random_skew_tensor(dim: usize, seed: u64, coefficient_bound: i64) -> TensorElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = free_cells(dim, true, None);
    let vals: Vec<Scalar> = cells.iter().map(|_| random_rational(&mut rng, coefficient_bound)).collect();
    tensor_from(dim, true, &cells, &vals)
}

/// Seeded tensor with entries drawn from `coefficients`.
pub fn random_tensor(dim: usize, rng: &mut ChaCha8Rng, coefficients: &[Scalar]) -> TensorElement {
    let cells = free_cells(dim, false, None);
    let vals: Vec<Scalar> = cells
        .iter()
        .map(|_| coefficients[rng.gen_range(0..coefficients.len())].clone())
        .collect();
    tensor_from(dim, false, &cells, &vals)
}

/// Seeded cube; each entry is nonzero with probability `density`.
pub fn random_cube(dim: usize, rng: &mut ChaCha8Rng, coefficients: &[Scalar], density: f64) -> BilinearOp {
    BilinearOp::from_fn(dim, |_, _, _| {
        if rng.gen_bool(density) {
            coefficients[rng.gen_range(0..coefficients.len())].clone()
        } else {
            Scalar::zero()
        }
    })
}

pub fn random_quadri(dim: usize, rng: &mut ChaCha8Rng, coefficients: &[Scalar], density: f64) -> QuadriAlgebra {
    QuadriAlgebra {
        nw: random_cube(dim, rng, coefficients, density),
        ne: random_cube(dim, rng, coefficients, density),
        sw: random_cube(dim, rng, coefficients, density),
        se: random_cube(dim, rng, coefficients, density),
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;

    fn set(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn counts() {
        assert_eq!(candidate_count(4, &set(&[0, 1]), None), 16);
        assert_eq!(candidate_count(8, &set(&[-1, 0, 1]), Some(2)), 1 + 16 + 112);
        assert_eq!(all_assignments(8, &set(&[-1, 0, 1]), Some(2)).len(), 129);
        assert_eq!(all_assignments(3, &set(&[0, 1]), None).len(), 8);
    }

    #[test]
    fn dim1_quadri_zero_one() {
        let spec = SearchSpec::new(SearchKind::Quadri, 1, set(&[0, 1]));
        let out = enumerate_structures(&spec).unwrap();
        assert!(out.exhaustive);
        assert_eq!(out.total, 16);
        let zero = Found::Quadri(QuadriAlgebra::zero(1));
        assert_eq!(out.hits[0], zero);
        for k in 0..4 {
            let mut q = QuadriAlgebra::zero(1);
            let cubes = [&mut q.nw, &mut q.ne, &mut q.sw, &mut q.se];
            *cubes.into_iter().nth(k).unwrap().entry_mut(0, 0, 0) = int(1);
            assert!(out.hits.contains(&Found::Quadri(q)));
        }
    }

    #[test]
    fn dendriform_zero_only() {
        let spec = SearchSpec::new(SearchKind::Dendriform, 1, set(&[0]));
        let out = enumerate_structures(&spec).unwrap();
        assert_eq!(out.hits, vec![Found::Dendriform(DendriformAlgebra::zero(1))]);
    }

    #[test]
    fn budget_zero_is_an_error() {
        let mut spec = SearchSpec::new(SearchKind::Quadri, 1, set(&[0, 1]));
        spec.budget = 0;
        assert!(matches!(enumerate_structures(&spec), Err(Error::Budget { .. })));
    }

    #[test]
    fn sampled_mode_is_reproducible() {
        let mut spec = SearchSpec::new(SearchKind::Quadri, 2, set(&[-1, 0, 1]));
        spec.max_nonzero = Some(3);
        spec.budget = 300;
        spec.seed = 11;
        let a = enumerate_structures_with(&spec, Executor::Parallel).unwrap();
        let b = enumerate_structures_with(&spec, Executor::Sequential).unwrap();
        assert!(!a.exhaustive);
        assert_eq!(a, b);
    }

    #[test]
    fn zero_algebra_skew_solutions() {
        let spec = QSearchSpec {
            coefficients: set(&[-1, 0, 1]),
            mask: None,
            budget: 100,
            require_skew: true,
            require_nondegenerate: false,
            seed: 0,
        };
        let out = search_q_solutions(&QuadriAlgebra::zero(2), &spec).unwrap();
        assert_eq!(out.hits.len(), 3);
        assert!(out.hits.contains(&TensorElement::zero(2)));
    }

    #[test]
    fn random_skew_shapes() {
        assert!(random_skew_tensor(1, 5, 4).is_zero());
        assert_eq!(random_skew_tensor(3, 9, 4), random_skew_tensor(3, 9, 4));
        let r = random_skew_tensor(2, 3, 5);
        assert!(r.coeffs().get(0, 0).is_zero() && r.coeffs().get(1, 1).is_zero());
        assert_eq!(r.coeffs().get(0, 1), &-r.coeffs().get(1, 0));
        assert!(r.is_skew());
    }
}
