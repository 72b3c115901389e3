//! Dense exact linear algebra over the rationals.
//!
//! Elimination runs fraction-free on integer-scaled rows (each row is kept
//! primitive), and only the final reduced form is divided through by its
//! pivots. All dimension counts downstream come from [`Subspace`].

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Self { rows: r, cols: c, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| rational::int(rows[i][j]))
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rational>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        Self::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Self { rows, cols, data })
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

    pub fn as_slice(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_flat(self) -> Vec<Rational> {
        self.data
    }

    pub fn row(&self, i: usize) -> Vec<Rational> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum()
            })
            .collect())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self · rhs − rhs · self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        &(self * rhs) - &(rhs * self)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    /// Gauss–Jordan inverse; `Error::Singular` when not invertible.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let (r, piv) = rref(&aug);
        if piv.len() < n || piv[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
    }

    /// Basis of the right kernel `{x : self · x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, piv) = rref(self);
        let mut is_pivot = vec![false; self.cols];
        for &c in &piv {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &c) in piv.iter().enumerate() {
                    v[c] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    /// One solution of `self · x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (r, piv) = rref(&aug);
        if piv.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &c) in piv.iter().enumerate() {
            x[c] = r[(i, self.cols)].clone();
        }
        Ok(Some(x))
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| rational::to_f64(&self[(i, j)]))
    }

    pub fn max_abs(&self) -> Rational {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        self.try_mul(rhs).expect("matrix product dimension mismatch")
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum dimension mismatch");
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference dimension mismatch");
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", padded.join("  "))?;
        }
        Ok(())
    }
}

fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|i| clear_denominators(&m.data[i * m.cols..(i + 1) * m.cols]))
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == rows.len() {
            break;
        }
        // smallest nonzero entry keeps intermediate growth down
        let Some(sel) = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].abs())
        else {
            continue;
        };
        rows.swap(r, sel);
        let prow = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let g = prow[c].gcd(&row[c]);
            let a = &prow[c] / &g;
            let b = &row[c] / &g;
            for (x, y) in row.iter_mut().zip(prow.iter()) {
                *x = &*x * &a - y * &b;
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = QMatrix::zeros(m.rows, m.cols);
    for (i, &c) in pivots.iter().enumerate() {
        let p = rows[i][c].clone();
        for j in 0..m.cols {
            if !rows[i][j].is_zero() {
                out[(i, j)] = Rational::new(rows[i][j].clone(), p.clone());
            }
        }
    }
    (out, pivots)
}

/// A linear subspace of `Q^d`, stored as a reduced echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_vectors(
            ambient,
            (0..ambient)
                .map(|i| {
                    let mut v = vec![Rational::zero(); ambient];
                    v[i] = Rational::one();
                    v
                })
                .collect::<Vec<_>>(),
        )
    }

    pub fn from_vectors<V: AsRef<[Rational]>>(ambient: usize, vecs: impl IntoIterator<Item = V>) -> Self {
        let rows: Vec<Vec<Rational>> = vecs
            .into_iter()
            .map(|v| {
                let v = v.as_ref();
                assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
                v.to_vec()
            })
            .collect();
        if rows.is_empty() {
            return Self::zero(ambient);
        }
        let m = QMatrix::from_rows(rows).expect("rows have equal length");
        let (r, pivots) = rref(&m);
        let basis = (0..pivots.len()).map(|i| r.row(i)).collect();
        Self { ambient, basis, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Remainder of `v` after reduction against the echelon basis.
    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            if w[c].is_zero() {
                continue;
            }
            let k = w[c].clone();
            for (x, y) in w.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &k * y;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length does not match ambient dimension");
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Coordinates of `v` in the echelon basis, when `v` lies in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c].clone()).collect())
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn same_span(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_space(other)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::from_vectors(self.ambient, self.basis.iter().chain(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        // a·U = b·W  <=>  [U^T | -W^T] (a, b) = 0
        let k = self.dim();
        let m = QMatrix::from_fn(self.ambient, k + other.dim(), |i, j| {
            if j < k {
                self.basis[j][i].clone()
            } else {
                -other.basis[j - k][i].clone()
            }
        });
        let vecs: Vec<Vec<Rational>> = m
            .nullspace()
            .into_iter()
            .map(|coef| {
                let mut v = vec![Rational::zero(); self.ambient];
                for (a, u) in coef[..k].iter().zip(&self.basis) {
                    for (x, y) in v.iter_mut().zip(u) {
                        *x += a * y;
                    }
                }
                v
            })
            .collect();
        Subspace::from_vectors(self.ambient, vecs)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in Q^{})", self.dim(), self.ambient)
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum()
}

pub fn add_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(k: &Rational, a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|x| k * x).collect()
}

pub fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// `[a, b, …]` with rationals as `n/d`, for messages.
pub fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// One-line rendering of a matrix for error messages.
pub fn fmt_rows(m: &QMatrix) -> String {
    let rows: Vec<String> = (0..m.rows).map(|i| fmt_vec(&m.row(i))).collect();
    format!("[{}]", rows.join(", "))
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn inverse_roundtrip() {
        let m = QMatrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, QMatrix::identity(3));
        let sing = QMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(sing.inverse(), Err(Error::Singular));
    }

    #[test]
    fn nullspace_and_rank() {
        let m = QMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(is_zero_vec(&m.mul_vec(&ns[0]).unwrap()));
    }

    #[test]
    fn rref_handles_fractions() {
        let m = QMatrix::from_fn(2, 2, |i, j| rat((i + 1) as i64, (j + 2) as i64));
        let (r, piv) = rref(&m);
        assert_eq!(piv, vec![0]);
        assert_eq!(r[(0, 0)], int(1));
        assert_eq!(r[(0, 1)], rat(2, 3));
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = QMatrix::from_i64(&[&[1, 1], &[1, -1]]);
        let x = m.solve(&[int(3), int(1)]).unwrap().unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        let s = QMatrix::from_i64(&[&[1, 1], &[2, 2]]);
        assert_eq!(s.solve(&[int(1), int(3)]).unwrap(), None);
    }

    #[test]
    fn subspace_operations() {
        let a = Subspace::from_vectors(3, [vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]]);
        let b = Subspace::from_vectors(3, [vec![int(0), int(1), int(0)], vec![int(0), int(0), int(1)]]);
        let i = a.intersection(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[int(0), int(5), int(0)]));
        assert_eq!(a.sum(&b).dim(), 3);
        assert!(a.contains(&[int(2), int(-1), int(0)]));
        assert!(!a.contains(&[int(0), int(0), int(1)]));
        let c = a.coordinates(&[int(2), int(-1), int(0)]).unwrap();
        assert_eq!(c, vec![int(2), int(-1)]);
    }
}
