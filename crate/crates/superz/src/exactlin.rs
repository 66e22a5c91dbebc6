//! Exact rational linear algebra.
//!
//! Everything here works over `BigRational`; there is no floating point.
//! Subspaces are kept in reduced row-echelon form so that two equal
//! subspaces always have identical representations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// Exact rational scalar.
pub type Q = BigRational;

/// Build a rational from a machine integer.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Build the fraction `a / b`.
pub fn frac(a: i64, b: i64) -> Q {
    Q::new(BigInt::from(a), BigInt::from(b))
}

/// Integer value of `x`, if it is an integer that fits in an `i64`.
pub fn to_i64(x: &Q) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    i64::try_from(x.to_integer()).ok()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("linear system has no solution")]
    NoSolution,
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Q::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Q>) -> Result<Self, LinAlgError> {
        if data.len() != rows * cols {
            return Err(LinAlgError::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        Ok(RationalMatrix { rows, cols, data })
    }

    /// Convenience constructor from integer rows. Panics on ragged input.
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row.iter().map(|&x| q(x)));
        }
        RationalMatrix { rows: r, cols: c, data }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<Q>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row.iter().cloned());
        }
        RationalMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Q] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, got: other.rows });
        }
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
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Q]) -> Result<Vec<Q>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Q::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduced row-echelon form and the pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut ech = Echelon::new(self.cols);
        for r in 0..self.rows {
            ech.insert(self.row(r).to_vec());
        }
        let sub = ech.into_subspace();
        let pivots = sub.pivots.clone();
        let mut m = Self::from_rows(self.cols, &sub.basis);
        // keep the original row count, padding with zero rows
        m.data.resize(self.rows.max(m.rows) * self.cols, Q::zero());
        m.rows = self.rows.max(m.rows);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols);
        for r in 0..self.rows {
            ech.insert(self.row(r).to_vec());
            if ech.rank() == self.cols {
                break;
            }
        }
        ech.rank()
    }
}

/// Incremental row reduction.
///
/// Rows are kept normalized (pivot entry 1) and mutually reduced: every stored
/// row is zero in the pivot columns of all other stored rows. Insertion order
/// is therefore irrelevant to the final span, and sorting by pivot gives RREF.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the stored rows in place.
    pub fn reduce(&self, v: &mut [Q]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }

    /// Insert a row; returns true if it increased the rank.
    pub fn insert(&mut self, mut v: Vec<Q>) -> bool {
        assert_eq!(v.len(), self.cols, "row length mismatch");
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        if !inv.is_one() {
            for x in v.iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// The row space as a canonical subspace.
    pub fn into_subspace(self) -> Subspace {
        let mut pairs: Vec<(usize, Vec<Q>)> = self.pivots.into_iter().zip(self.rows).collect();
        pairs.sort_by_key(|(p, _)| *p);
        let (pivots, basis) = pairs.into_iter().unzip();
        Subspace { ambient: self.cols, basis, pivots }
    }

    /// Kernel of the linear map whose rows have been inserted.
    pub fn kernel(&self) -> Subspace {
        let mut is_pivot = vec![None; self.cols];
        for (i, &p) in self.pivots.iter().enumerate() {
            is_pivot[p] = Some(i);
        }
        let mut vecs = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f].is_some() {
                continue;
            }
            let mut v = vec![Q::zero(); self.cols];
            v[f] = Q::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row[f].is_zero() {
                    v[p] = -row[f].clone();
                }
            }
            vecs.push(v);
        }
        Subspace::from_vectors(self.cols, vecs)
    }
}

/// A linear subspace of `Q^ambient` in canonical reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![Q::zero(); ambient];
                v[i] = Q::one();
                v
            })
            .collect();
        Subspace { ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn from_vectors<I>(ambient: usize, vecs: I) -> Self
    where
        I: IntoIterator<Item = Vec<Q>>,
    {
        let mut ech = Echelon::new(ambient);
        for v in vecs {
            ech.insert(v);
        }
        ech.into_subspace()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn residual(&self, v: &[Q]) -> Vec<Q> {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        v.len() == self.ambient && self.residual(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        if self.ambient != other.ambient {
            return Err(LinAlgError::DimensionMismatch { expected: self.ambient, got: other.ambient });
        }
        Ok(Subspace::from_vectors(
            self.ambient,
            self.basis.iter().chain(other.basis.iter()).cloned(),
        ))
    }

    /// Exact intersection.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        if self.ambient != other.ambient {
            return Err(LinAlgError::DimensionMismatch { expected: self.ambient, got: other.ambient });
        }
        // x = sum a_i A_i lies in B iff its residual modulo B vanishes; the
        // residual is linear in a.
        let residuals: Vec<Vec<Q>> = self.basis.iter().map(|a| other.residual(a)).collect();
        let d = self.dim();
        let mut ech = Echelon::new(d);
        for c in 0..self.ambient {
            let row: Vec<Q> = residuals.iter().map(|r| r[c].clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                ech.insert(row);
                if ech.rank() == d {
                    break;
                }
            }
        }
        let coeffs = ech.kernel();
        let vecs = coeffs.basis.iter().map(|a| combine(&self.basis, a, self.ambient));
        Ok(Subspace::from_vectors(self.ambient, vecs))
    }
}

/// `sum_i coeffs[i] * vecs[i]`.
pub fn combine(vecs: &[Vec<Q>], coeffs: &[Q], len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); len];
    for (v, c) in vecs.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o += c * x;
            }
        }
    }
    out
}

/// `{v : M v = 0}`.
pub fn nullspace(m: &RationalMatrix) -> Subspace {
    let mut ech = Echelon::new(m.cols);
    for r in 0..m.rows {
        ech.insert(m.row(r).to_vec());
        if ech.rank() == m.cols {
            break;
        }
    }
    ech.kernel()
}

/// Kernel of the linear map `Q^d -> Q^len` sending the `s`-th unit vector to `images[s]`.
pub fn kernel_of_images(images: &[Vec<Q>], len: usize) -> Subspace {
    let d = images.len();
    let mut ech = Echelon::new(d);
    for c in 0..len {
        if images.iter().all(|v| v[c].is_zero()) {
            continue;
        }
        let row: Vec<Q> = images.iter().map(|v| v[c].clone()).collect();
        ech.insert(row);
        if ech.rank() == d {
            break;
        }
    }
    ech.kernel()
}

/// Some `x` with `M x = b`; free variables are set to zero.
pub fn solve(m: &RationalMatrix, b: &[Q]) -> Result<Vec<Q>, LinAlgError> {
    if b.len() != m.rows {
        return Err(LinAlgError::DimensionMismatch { expected: m.rows, got: b.len() });
    }
    let mut ech = Echelon::new(m.cols + 1);
    for (r, rhs) in b.iter().enumerate() {
        let mut row = m.row(r).to_vec();
        row.push(rhs.clone());
        ech.insert(row);
    }
    let mut x = vec![Q::zero(); m.cols];
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        if p == m.cols {
            return Err(LinAlgError::NoSolution);
        }
        x[p] = row[m.cols].clone();
    }
    Ok(x)
}

/// Render a rational compactly (`3`, `-1/2`).
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(x: &Q) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn nullspace_of_zero_is_everything() {
        let m = RationalMatrix::zeros(3, 3);
        assert_eq!(nullspace(&m), Subspace::full(3));
    }

    #[test]
    fn nullspace_of_identity_is_trivial() {
        assert_eq!(nullspace(&RationalMatrix::identity(4)).dim(), 0);
    }

    #[test]
    fn nullspace_rank_one() {
        let m = RationalMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
        let k = nullspace(&m);
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis()[0], vec![q(1), frac(-1, 2)]);
        assert!(k.contains(&v(&[-2, 1])));
    }

    #[test]
    fn intersections() {
        let full = Subspace::full(3);
        let b = Subspace::from_vectors(3, vec![v(&[1, 1, 0])]);
        assert_eq!(full.intersect(&b).unwrap(), b);
        let l1 = Subspace::from_vectors(2, vec![v(&[1, 0])]);
        let l2 = Subspace::from_vectors(2, vec![v(&[1, 1])]);
        assert_eq!(l1.intersect(&l2).unwrap().dim(), 0);
        let xy = Subspace::from_vectors(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let yz = Subspace::from_vectors(3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(xy.intersect(&yz).unwrap(), Subspace::from_vectors(3, vec![v(&[0, 1, 0])]));
        assert!(xy.intersect(&Subspace::full(2)).is_err());
    }

    #[test]
    fn solving() {
        let id = RationalMatrix::identity(3);
        assert_eq!(solve(&id, &v(&[4, -1, 7])).unwrap(), v(&[4, -1, 7]));
        let z = RationalMatrix::zeros(2, 2);
        assert_eq!(solve(&z, &v(&[1, 0])), Err(LinAlgError::NoSolution));
        let m = RationalMatrix::from_i64(&[vec![1, 1], vec![0, 0]]);
        assert_eq!(solve(&m, &v(&[3, 0])).unwrap(), v(&[3, 0]));
    }

    #[test]
    fn rref_is_canonical() {
        let a = Subspace::from_vectors(3, vec![v(&[1, 2, 3]), v(&[0, 1, 1])]);
        let b = Subspace::from_vectors(3, vec![v(&[1, 3, 4]), v(&[2, 5, 7])]);
        assert_eq!(a, b);
        assert_eq!(a.coordinates(&v(&[1, 3, 4])), Some(vec![q(1), q(3)]));
    }
}
