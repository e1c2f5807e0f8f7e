//! Exact rational linear algebra: arbitrary-precision rationals, matrices,
//! reduced row-echelon form, kernels/images and subspace lattice operations.
//!
//! Everything here is exact; there is no tolerance anywhere in this module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Exact rational scalar. Always stored reduced with a positive denominator.
pub type Rat = BigRational;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum QlinalgError {
    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },
    #[error("cannot parse rational {text:?}")]
    ParseRational { text: String },
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational n/d. Panics on d == 0.
pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p/q" or "p" with arbitrary-precision integers.
pub fn parse_rat(s: &str) -> Result<Rat, QlinalgError> {
    BigRational::from_str(s.trim()).map_err(|_| QlinalgError::ParseRational { text: s.to_string() })
}

/// Formats as "p/q", or "p" when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Dense matrix over the exact rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rat).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, QlinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(QlinalgError::DimensionMismatch { context: "ragged rows".into() });
        }
        Ok(RationalMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Diagonal matrix from the given entries.
    pub fn diagonal(entries: &[Rat]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
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

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Rat> {
        self.row(i).to_vec()
    }

    pub fn col_vec(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self.at(i, k) * other.at(k, j)).sum()
        })
    }

    pub fn mat_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "mat_vec dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * s)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn is_idempotent(&self) -> bool {
        self.is_square() && self.matmul(self) == *self
    }

    /// Exact inverse via Gauss-Jordan on [A | I]; None when singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let ech = rref(&aug);
        if ech.pivots.len() != n || ech.pivots.iter().enumerate().any(|(k, &p)| p != k) {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| ech.matrix.at(i, n + j).clone()))
    }
}

/// Result of Gauss-Jordan elimination: the echelon matrix, its rank and the
/// pivot columns in order.
pub struct Echelon {
    pub matrix: RationalMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Reduced row-echelon form. Pivoting picks the first nonzero entry; exact
/// arithmetic needs no numerical pivoting.
pub fn rref(m: &RationalMatrix) -> Echelon {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a.at(i, c).is_zero()) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                let tmp = a.at(piv, j).clone();
                a.set(piv, j, a.at(r, j).clone());
                a.set(r, j, tmp);
            }
        }
        let lead = a.at(r, c).clone();
        for j in 0..cols {
            a.set(r, j, a.at(r, j) / &lead);
        }
        for i in 0..rows {
            if i != r && !a.at(i, c).is_zero() {
                let factor = a.at(i, c).clone();
                for j in 0..cols {
                    let v = a.at(i, j) - &(a.at(r, j) * &factor);
                    a.set(i, j, v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { matrix: a, rank: r, pivots }
}

/// A linear subspace of Q^n, stored as the unique reduced echelon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: RationalMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: RationalMatrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: RationalMatrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors; the basis is canonicalized by rref so equal
    /// subspaces compare equal.
    pub fn span(ambient: usize, vectors: &[Vec<Rat>]) -> Result<Self, QlinalgError> {
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(QlinalgError::DimensionMismatch {
                context: format!("span vectors must have length {ambient}"),
            });
        }
        if vectors.is_empty() {
            return Ok(Self::zero(ambient));
        }
        let ech = rref(&RationalMatrix::from_rows(vectors.to_vec())?);
        let basis = RationalMatrix::from_fn(ech.rank, ambient, |i, j| ech.matrix.at(i, j).clone());
        Ok(Subspace { ambient, basis, pivots: ech.pivots })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.dim()).map(|i| self.basis.row_vec(i)).collect()
    }

    /// Reduces v against the echelon basis; membership means zero remainder.
    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        let mut w = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if !w[p].is_zero() {
                let factor = w[p].clone();
                for j in 0..self.ambient {
                    w[j] = &w[j] - &(self.basis.at(r, j) * &factor);
                }
            }
        }
        w.iter().all(Rat::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_rows().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, QlinalgError> {
        Ok(self.sum_intersect(other)?.0)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, QlinalgError> {
        Ok(self.sum_intersect(other)?.1)
    }

    /// Zassenhaus: one elimination yields both the sum and the intersection.
    /// The dimension formula dim U + dim W = dim(U+W) + dim(U∩W) is asserted.
    pub fn sum_intersect(&self, other: &Subspace) -> Result<(Subspace, Subspace), QlinalgError> {
        if self.ambient != other.ambient {
            return Err(QlinalgError::DimensionMismatch {
                context: format!("ambient {} vs {}", self.ambient, other.ambient),
            });
        }
        let n = self.ambient;
        let mut rows = Vec::new();
        for u in self.basis_rows() {
            let mut row = u.clone();
            row.extend(u);
            rows.push(row);
        }
        for w in other.basis_rows() {
            let mut row = w;
            row.extend(vec![Rat::zero(); n]);
            rows.push(row);
        }
        if rows.is_empty() {
            return Ok((Subspace::zero(n), Subspace::zero(n)));
        }
        let ech = rref(&RationalMatrix::from_rows(rows)?);
        let mut sum_rows = Vec::new();
        let mut int_rows = Vec::new();
        for i in 0..ech.rank {
            let left: Vec<Rat> = (0..n).map(|j| ech.matrix.at(i, j).clone()).collect();
            let right: Vec<Rat> = (n..2 * n).map(|j| ech.matrix.at(i, j).clone()).collect();
            if left.iter().any(|x| !x.is_zero()) {
                sum_rows.push(left);
            } else {
                int_rows.push(right);
            }
        }
        let sum = Subspace::span(n, &sum_rows)?;
        let int = Subspace::span(n, &int_rows)?;
        assert_eq!(
            self.dim() + other.dim(),
            sum.dim() + int.dim(),
            "subspace dimension formula violated"
        );
        Ok((sum, int))
    }
}

/// Null space of m, canonicalized.
pub fn kernel(m: &RationalMatrix) -> Subspace {
    let ech = rref(m);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !ech.pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![Rat::zero(); n];
        v[f] = Rat::one();
        for (r, &p) in ech.pivots.iter().enumerate() {
            v[p] = -ech.matrix.at(r, f).clone();
        }
        basis.push(v);
    }
    let ker = Subspace::span(n, &basis).expect("kernel basis has ambient length");
    assert_eq!(ker.dim() + ech.rank, n, "rank-nullity violated");
    ker
}

/// Column space of m.
pub fn image(m: &RationalMatrix) -> Subspace {
    let cols: Vec<Vec<Rat>> = (0..m.cols()).map(|j| m.col_vec(j)).collect();
    Subspace::span(m.rows(), &cols).expect("image columns have ambient length")
}

/// Particular solution of A x = b with free variables set to zero; None when
/// the system is inconsistent.
pub fn solve(a: &RationalMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.rows(), b.len(), "solve dimension mismatch");
    let mut aug = RationalMatrix::zeros(a.rows(), a.cols() + 1);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            aug.set(i, j, a.at(i, j).clone());
        }
        aug.set(i, a.cols(), b[i].clone());
    }
    let ech = rref(&aug);
    if ech.pivots.contains(&a.cols()) {
        return None;
    }
    let mut x = vec![Rat::zero(); a.cols()];
    for (r, &p) in ech.pivots.iter().enumerate() {
        x[p] = ech.matrix.at(r, a.cols()).clone();
    }
    Some(x)
}

/// Vector addition helper.
pub fn vec_add(u: &[Rat], v: &[Rat]) -> Vec<Rat> {
    assert_eq!(u.len(), v.len());
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

/// Vector subtraction helper.
pub fn vec_sub(u: &[Rat], v: &[Rat]) -> Vec<Rat> {
    assert_eq!(u.len(), v.len());
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub fn vec_is_zero(v: &[Rat]) -> bool {
    v.iter().all(Rat::is_zero)
}

/// abs helper used by tests constructing small random rationals.
pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}
