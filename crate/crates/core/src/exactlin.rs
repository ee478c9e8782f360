//! Exact scalars, dense matrices, structure-constant cubes and the small
//! tensor calculus used throughout the crate.
//!
//! Every value here is an exact rational, so every identity check in the
//! crate reduces to an exact zero test.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. `BigRational` keeps numerator and denominator
/// reduced with a positive denominator after every operation.
pub type Scalar = BigRational;

/// Coordinate vector over the stored basis.
pub type Vector = Vec<Scalar>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"7"`, `"-3"` or `"p/q"`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let parsed = match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| Error::parse(format!("bad scalar {s:?}")))?;
            let q = BigInt::from_str(q.trim()).map_err(|_| Error::parse(format!("bad scalar {s:?}")))?;
            if q.is_zero() {
                return Err(Error::parse(format!("zero denominator in {s:?}")));
            }
            Scalar::new(p, q)
        }
        None => Scalar::from_integer(
            BigInt::from_str(t).map_err(|_| Error::parse(format!("bad scalar {s:?}")))?,
        ),
    };
    Ok(parsed)
}

/// Canonical text form: `"n"` for integers, `"p/q"` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn zero_vec(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn basis_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Scalar], c: &Scalar) -> Vector {
    a.iter().map(|x| x * c).collect()
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_scalar).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn scalar_identity(n: usize, c: &Scalar) -> Self {
        Self::identity(n).scale(c)
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::shape("ragged matrix rows"));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer convenience constructor, mostly for tests and fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let data: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Self::from_rows(data).expect("rectangular literal")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vector]) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_skew(&self) -> bool {
        self.is_square() && *self == self.transpose().neg()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: vec_scale(&self.data, c),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    fn assert_same_shape(&self, other: &Self) {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix shape mismatch"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_shape(other);
        Self {
            rows: self.rows,
            cols: self.cols,
            data: vec_add(&self.data, &other.data),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_shape(other);
        Self {
            rows: self.rows,
            cols: self.cols,
            data: vec_sub(&self.data, &other.data),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.entry_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        Self::from_fn(a.rows + c.rows, a.cols + b.cols, |i, j| {
            match (i < a.rows, j < a.cols) {
                (true, true) => a.get(i, j).clone(),
                (true, false) => b.get(i, j - a.cols).clone(),
                (false, true) => c.get(i - a.rows, j).clone(),
                (false, false) => d.get(i - a.rows, j - a.cols).clone(),
            }
        })
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Scalar::one();
        }
        // Clear denominators row by row so Bareiss runs over the integers.
        let mut scale = Scalar::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let lcm = self
                .row(i)
                .iter()
                .fold(BigInt::one(), |acc, x| num::integer::lcm(acc, x.denom().clone()));
            scale *= Scalar::from_integer(lcm.clone());
            m.push(
                self.row(i)
                    .iter()
                    .map(|x| (x * Scalar::from_integer(lcm.clone())).to_integer())
                    .collect(),
            );
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return Scalar::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        Scalar::from_integer(sign * m[n - 1][n - 1].clone()) / scale
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a.get(col, col).recip();
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r != col && !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone();
                    a.axpy_row(r, col, &f);
                    inv.axpy_row(r, col, &f);
                }
            }
        }
        Some(inv)
    }

    /// Solves `self * x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        self.inverse().map(|inv| inv.mul_vec(b))
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..a.cols {
            let Some(pivot) = (rank..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            a.swap_rows(pivot, rank);
            let p = a.get(rank, col).recip();
            a.scale_row(rank, &p);
            for r in 0..a.rows {
                if r != rank && !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone();
                    a.axpy_row(r, rank, &f);
                }
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Scalar) {
        for j in 0..self.cols {
            *self.entry_mut(r, j) *= c;
        }
    }

    /// row[target] -= f * row[source]
    fn axpy_row(&mut self, target: usize, source: usize, f: &Scalar) {
        for j in 0..self.cols {
            let v = self.get(source, j) * f;
            *self.entry_mut(target, j) -= v;
        }
    }
}

/// Structure constants of one bilinear operation:
/// `e_i ∘ e_j = Σ_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BilinearOp {
    dim: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for BilinearOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz: Vec<String> = self
            .nonzero_terms()
            .map(|(i, j, k, c)| format!("e{i}.e{j}->{}e{k}", format_scalar(c)))
            .collect();
        write!(f, "BilinearOp(dim={}, {})", self.dim, nz.join(", "))
    }
}

impl BilinearOp {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Scalar::zero(); dim * dim * dim],
        }
    }

    pub fn from_flat(dim: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != dim * dim * dim {
            return Err(Error::shape(format!(
                "cube of dim {dim} needs {} constants, got {}",
                dim * dim * dim,
                data.len()
            )));
        }
        Ok(Self { dim, data })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    data.push(f(i, j, k));
                }
            }
        }
        Self { dim, data }
    }

    /// Builds a cube from `(i, j, k, c)` terms meaning `e_i ∘ e_j += c e_k`.
    pub fn from_terms(dim: usize, terms: &[(usize, usize, usize, Scalar)]) -> Self {
        let mut op = Self::zero(dim);
        for (i, j, k, c) in terms {
            *op.entry_mut(*i, *j, *k) += c;
        }
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn flat(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[(i * self.dim + j) * self.dim + k]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize, k: usize) -> &mut Scalar {
        let d = self.dim;
        &mut self.data[(i * d + j) * d + k]
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn nonzero_terms(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        let d = self.dim;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(idx, c)| (idx / (d * d), (idx / d) % d, idx % d, c))
    }

    /// Product of basis elements `e_i ∘ e_j` as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        let start = (i * self.dim + j) * self.dim;
        self.data[start..start + self.dim].to_vec()
    }

    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let d = self.dim;
        let mut out = zero_vec(d);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                let start = (i * d + j) * d;
                for k in 0..d {
                    let s = &self.data[start + k];
                    if !s.is_zero() {
                        out[k] += &c * s;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `L(x): y ↦ x ∘ y`.
    pub fn left_mult(&self, x: &[Scalar]) -> Matrix {
        let d = self.dim;
        let cols: Vec<Vector> = (0..d).map(|j| self.apply(x, &basis_vec(d, j))).collect();
        Matrix::from_columns(d, &cols)
    }

    /// Matrix of `R(y): x ↦ x ∘ y`.
    pub fn right_mult(&self, y: &[Scalar]) -> Matrix {
        let d = self.dim;
        let cols: Vec<Vector> = (0..d).map(|i| self.apply(&basis_vec(d, i), y)).collect();
        Matrix::from_columns(d, &cols)
    }

    /// `L(e_i)` for every basis element.
    pub fn left_family(&self) -> MapFamily {
        MapFamily::new(
            (0..self.dim)
                .map(|i| Matrix::from_fn(self.dim, self.dim, |k, j| self.get(i, j, k).clone()))
                .collect(),
        )
    }

    /// `R(e_j)` for every basis element.
    pub fn right_family(&self) -> MapFamily {
        MapFamily::new(
            (0..self.dim)
                .map(|j| Matrix::from_fn(self.dim, self.dim, |k, i| self.get(i, j, k).clone()))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "cube dimension mismatch");
        Self {
            dim: self.dim,
            data: vec_add(&self.data, &other.data),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "cube dimension mismatch");
        Self {
            dim: self.dim,
            data: vec_sub(&self.data, &other.data),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            dim: self.dim,
            data: vec_scale(&self.data, c),
        }
    }

    pub fn sum<'a>(dim: usize, ops: impl IntoIterator<Item = &'a BilinearOp>) -> Self {
        ops.into_iter().fold(Self::zero(dim), |acc, op| acc.add(op))
    }

    /// Transports the product along an invertible change of coordinates
    /// `f`: the result satisfies `f(x ∘ y) = f(x) ∘' f(y)`.
    pub fn conjugate(&self, f: &Matrix, f_inv: &Matrix) -> Self {
        let d = self.dim;
        let cols: Vec<Vector> = (0..d).map(|i| f_inv.column(i)).collect();
        Self::from_fn(d, |i, j, k| {
            let prod = self.apply(&cols[i], &cols[j]);
            f.mul_vec(&prod)[k].clone()
        })
    }

    /// Whether `(x∘y)∘z = x∘(y∘z)` on all basis triples.
    pub fn is_associative(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    let lhs = self.apply(&self.basis_product(i, j), &basis_vec(d, k));
                    let rhs = self.apply(&basis_vec(d, i), &self.basis_product(j, k));
                    lhs == rhs
                })
            })
        })
    }

    /// Restriction of the product to the coordinate block `[start, start+len)`.
    pub fn restrict(&self, start: usize, len: usize) -> Self {
        Self::from_fn(len, |i, j, k| self.get(start + i, start + j, start + k).clone())
    }
}

/// Linear maps `A → gl(V)` stored by their values on the basis of `A`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MapFamily {
    maps: Vec<Matrix>,
}

impl MapFamily {
    pub fn new(maps: Vec<Matrix>) -> Self {
        Self { maps }
    }

    pub fn zero(algebra_dim: usize, module_dim: usize) -> Self {
        Self::new(vec![Matrix::zeros(module_dim, module_dim); algebra_dim])
    }

    pub fn constant(algebra_dim: usize, m: &Matrix) -> Self {
        Self::new(vec![m.clone(); algebra_dim])
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Size of the module the matrices act on.
    pub fn module_dim(&self) -> Option<usize> {
        self.maps.first().map(Matrix::rows)
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn at(&self, i: usize) -> &Matrix {
        &self.maps[i]
    }

    /// Value on an arbitrary algebra element `Σ x_i e_i`.
    pub fn eval(&self, x: &[Scalar]) -> Matrix {
        let d = self.module_dim().unwrap_or(0);
        let mut out = Matrix::zeros(d, d);
        for (m, c) in self.maps.iter().zip(x) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.maps.iter().map(Matrix::neg).collect())
    }

    /// Pointwise transpose, i.e. the dual representation `ρ*`.
    pub fn dual(&self) -> Self {
        Self::new(self.maps.iter().map(Matrix::transpose).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn shape_ok(&self, algebra_dim: usize, module_dim: usize) -> bool {
        self.maps.len() == algebra_dim
            && self
                .maps
                .iter()
                .all(|m| m.rows() == module_dim && m.cols() == module_dim)
    }
}

/// Element `r = Σ coeffs[i][j] e_i ⊗ e_j` of `V ⊗ V`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TensorElement {
    coeffs: Matrix,
}

impl TensorElement {
    pub fn new(coeffs: Matrix) -> Result<Self> {
        if !coeffs.is_square() || coeffs.rows() == 0 {
            return Err(Error::shape("tensor coefficients must be a nonempty square matrix"));
        }
        Ok(Self { coeffs })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            coeffs: Matrix::zeros(dim, dim),
        }
    }

    /// `e_i ⊗ e_j`.
    pub fn elementary(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(dim, dim);
        m.set(i, j, Scalar::one());
        Self { coeffs: m }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.rows()
    }

    pub fn coeffs(&self) -> &Matrix {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Matrix {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn is_skew(&self) -> bool {
        self.coeffs.is_skew()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            coeffs: self.coeffs.add(&other.coeffs),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.neg(),
        }
    }

    /// `(M ⊗ N) r`.
    pub fn apply_pair(&self, left: &Matrix, right: &Matrix) -> Self {
        Self {
            coeffs: left.mul(&self.coeffs).mul(&right.transpose()),
        }
    }

    /// `(M ⊗ 1) r`.
    pub fn apply_left(&self, m: &Matrix) -> Self {
        Self {
            coeffs: m.mul(&self.coeffs),
        }
    }

    /// `(1 ⊗ M) r`.
    pub fn apply_right(&self, m: &Matrix) -> Self {
        Self {
            coeffs: self.coeffs.mul(&m.transpose()),
        }
    }
}

/// Flip of the two tensor legs.
pub fn twist(r: &TensorElement) -> TensorElement {
    TensorElement {
        coeffs: r.coeffs.transpose(),
    }
}

/// Three-leg tensor `Σ coeffs[i][j][k] e_i ⊗ e_j ⊗ e_k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tensor3 {
    dim: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Tensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz: Vec<String> = self
            .nonzero_terms()
            .map(|((i, j, k), c)| format!("{}·e{i}e{j}e{k}", format_scalar(c)))
            .collect();
        write!(f, "Tensor3(dim={}, {})", self.dim, nz.join(" + "))
    }
}

impl Tensor3 {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Scalar::zero(); dim * dim * dim],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> Scalar) -> Self {
        let mut t = Self::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    *t.entry_mut(i, j, k) = f(i, j, k);
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn flat(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[(i * self.dim + j) * self.dim + k]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize, k: usize) -> &mut Scalar {
        let d = self.dim;
        &mut self.data[(i * d + j) * d + k]
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn nonzero_terms(&self) -> impl Iterator<Item = ((usize, usize, usize), &Scalar)> {
        let d = self.dim;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(idx, c)| ((idx / (d * d), (idx / d) % d, idx % d), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: vec_add(&self.data, &other.data),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: vec_sub(&self.data, &other.data),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    /// Applies `m` on one leg (0, 1 or 2), identity on the others.
    pub fn apply_leg(&self, leg: usize, m: &Matrix) -> Self {
        let d = self.dim;
        let mut out = Self::zero(d);
        for ((i, j, k), c) in self.nonzero_terms() {
            let idx = [i, j, k];
            for p in 0..d {
                let f = m.get(p, idx[leg]);
                if f.is_zero() {
                    continue;
                }
                let mut t = idx;
                t[leg] = p;
                *out.entry_mut(t[0], t[1], t[2]) += c * f;
            }
        }
        out
    }

    /// `(Δ ⊗ 1) t` for a tensor `t ∈ V⊗V` and comultiplication family `Δ`.
    pub fn comult_first(delta: &[TensorElement], t: &TensorElement) -> Self {
        let d = t.dim();
        let mut out = Self::zero(d);
        for i in 0..d {
            for j in 0..d {
                let c = t.coeffs().get(i, j);
                if c.is_zero() {
                    continue;
                }
                for p in 0..d {
                    for q in 0..d {
                        let v = delta[i].coeffs().get(p, q);
                        if !v.is_zero() {
                            *out.entry_mut(p, q, j) += c * v;
                        }
                    }
                }
            }
        }
        out
    }

    /// `(1 ⊗ Δ) t`.
    pub fn comult_second(delta: &[TensorElement], t: &TensorElement) -> Self {
        let d = t.dim();
        let mut out = Self::zero(d);
        for i in 0..d {
            for j in 0..d {
                let c = t.coeffs().get(i, j);
                if c.is_zero() {
                    continue;
                }
                for p in 0..d {
                    for q in 0..d {
                        let v = delta[j].coeffs().get(p, q);
                        if !v.is_zero() {
                            *out.entry_mut(i, p, q) += c * v;
                        }
                    }
                }
            }
        }
        out
    }
}

/// Which pair of legs carries `r`; the remaining leg holds the formal unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Placement {
    P12,
    P13,
    P23,
}

impl Placement {
    /// Legs (0-based) occupied by the first and second tensor factor.
    pub fn legs(self) -> (usize, usize) {
        match self {
            Placement::P12 => (0, 1),
            Placement::P13 => (0, 2),
            Placement::P23 => (1, 2),
        }
    }

    pub fn unit_leg(self) -> usize {
        match self {
            Placement::P12 => 2,
            Placement::P13 => 1,
            Placement::P23 => 0,
        }
    }
}

impl FromStr for Placement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "12" => Ok(Placement::P12),
            "13" => Ok(Placement::P13),
            "23" => Ok(Placement::P23),
            _ => Err(Error::parse(format!("unknown placement {s:?}"))),
        }
    }
}

/// A three-leg tensor with one leg carrying the formal unit marker.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EmbeddedTensor {
    pub r: TensorElement,
    pub placement: Placement,
}

impl EmbeddedTensor {
    pub fn dim(&self) -> usize {
        self.r.dim()
    }

    /// Coefficient list `(leg-indexed basis triple with the unit leg unset, c)`.
    fn terms(&self) -> Vec<([Option<usize>; 3], &Scalar)> {
        let (a, b) = self.placement.legs();
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let c = self.r.coeffs().get(i, j);
                if c.is_zero() {
                    continue;
                }
                let mut idx = [None; 3];
                idx[a] = Some(i);
                idx[b] = Some(j);
                out.push((idx, c));
            }
        }
        out
    }

    /// Replaces the unit marker by an explicit vector (used by oracles).
    pub fn to_tensor3_with_unit(&self, unit: &[Scalar]) -> Tensor3 {
        let d = self.dim();
        let mut out = Tensor3::zero(d);
        for (idx, c) in self.terms() {
            for (u, uc) in unit.iter().enumerate() {
                if uc.is_zero() {
                    continue;
                }
                let full: Vec<usize> = idx.iter().map(|x| x.unwrap_or(u)).collect();
                *out.entry_mut(full[0], full[1], full[2]) += c * uc;
            }
        }
        out
    }
}

pub fn leg_embed(r: &TensorElement, placement: Placement) -> EmbeddedTensor {
    EmbeddedTensor {
        r: r.clone(),
        placement,
    }
}

/// Product of two leg-embedded tensors: the leg nontrivial in both factors
/// is multiplied with `op`, every other leg copies the single nontrivial
/// entry it carries.
pub fn leg_product(u: &EmbeddedTensor, v: &EmbeddedTensor, op: &BilinearOp) -> Result<Tensor3> {
    let d = u.dim();
    if v.dim() != d || op.dim() != d {
        return Err(Error::shape("leg product dimension mismatch"));
    }
    if u.placement == v.placement {
        return Err(Error::InvalidPattern(format!(
            "both factors occupy legs {:?}",
            u.placement
        )));
    }
    let shared = 3 - u.placement.unit_leg() - v.placement.unit_leg();
    let mut out = Tensor3::zero(d);
    let (ut, vt) = (u.terms(), v.terms());
    for (ui, uc) in &ut {
        for (vi, vc) in &vt {
            let c = *uc * *vc;
            let prod = op.basis_product(ui[shared].unwrap(), vi[shared].unwrap());
            let mut idx = [0usize; 3];
            for leg in 0..3 {
                if leg != shared {
                    idx[leg] = ui[leg].or(vi[leg]).unwrap();
                }
            }
            for (k, pk) in prod.iter().enumerate() {
                if pk.is_zero() {
                    continue;
                }
                idx[shared] = k;
                *out.entry_mut(idx[0], idx[1], idx[2]) += &c * pk;
            }
        }
    }
    Ok(out)
}

/// Linear map `src → dst`; column `j` is the image of the `j`-th source
/// basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Self {
        Self { matrix }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Matrix::identity(n))
    }

    pub fn src_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn dst_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.matrix.mul_vec(v)
    }
}

/// `T*` with `⟨v₁, T*(v₂*)⟩ = ⟨T(v₁), v₂*⟩`.
pub fn dual_map(t: &LinearMap) -> LinearMap {
    LinearMap::new(t.matrix.transpose())
}

/// Pointwise dual `ρ*` of a representation family.
pub fn dual_rep(rho: &MapFamily) -> Result<MapFamily> {
    let n = rho.module_dim().unwrap_or(0);
    if !rho.maps().iter().all(|m| m.rows() == n && m.cols() == n) {
        return Err(Error::shape("representation family has mixed sizes"));
    }
    Ok(rho.dual())
}

/// Bilinear form `𝔅(e_i, e_j) = gram[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BilinearForm {
    gram: Matrix,
}

impl BilinearForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::shape("Gram matrix must be square"));
        }
        Ok(Self { gram })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            gram: Matrix::zeros(dim, dim),
        }
    }

    /// The pairing `𝔅_S(x + a*, y + b*) = ⟨a*, y⟩ + ⟨x, b*⟩` on `A ⊕ A*`.
    pub fn hyperbolic(n: usize) -> Self {
        let i = Matrix::identity(n);
        let z = Matrix::zeros(n, n);
        Self {
            gram: Matrix::block(&z, &i, &i, &z),
        }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        dot(x, &self.gram.mul_vec(y))
    }

    pub fn is_symmetric(&self) -> bool {
        self.gram.is_symmetric()
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.gram.determinant().is_zero()
    }
}

pub fn is_isotropic(form: &BilinearForm, subspace: &[Vector]) -> Result<bool> {
    if subspace.iter().any(|w| w.len() != form.dim()) {
        return Err(Error::shape("subspace vector length differs from form dimension"));
    }
    Ok(subspace
        .iter()
        .all(|w1| subspace.iter().all(|w2| form.eval(w1, w2).is_zero())))
}

/// `T_r : V* → V` together with invertibility and, when invertible, the
/// form obtained from `T_r⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorMap {
    pub map: LinearMap,
    pub invertible: bool,
    /// Gram matrix equal to `coeffs⁻¹`, i.e. `ω(e_i, e_j) = (coeffs⁻¹)[i][j]`.
    pub omega: Option<BilinearForm>,
}

pub fn map_of_tensor(r: &TensorElement) -> TensorMap {
    let m = r.coeffs().clone();
    let inv = m.inverse();
    TensorMap {
        map: LinearMap::new(m),
        invertible: inv.is_some(),
        omega: inv.map(|g| BilinearForm { gram: g }),
    }
}

/// Returns `x` as a Scalar when it is a signed small integer.
pub fn to_i64(x: &Scalar) -> Option<i64> {
    use num::ToPrimitive;
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn abs(x: &Scalar) -> Scalar {
    x.abs()
}
