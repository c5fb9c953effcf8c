//! Exact linear algebra over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Rational::from_integer(n))
    }
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(fmt_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Input("ragged rows in matrix".into()));
        }
        Ok(RationalMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix with the given shape; `rows` may be empty when `cols` is known.
    pub fn from_rows_shaped(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        let r = rows.len();
        debug_assert!(rows.iter().all(|x| x.len() == cols));
        RationalMatrix { rows: r, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(cols: &[Vec<Rational>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows.iter().flat_map(|row| row.iter().map(|&x| q(x))).collect();
        RationalMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let x = self.get(r, c);
                if !x.is_zero() {
                    t.set(c, r, x.clone());
                }
            }
        }
        t
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
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let mut out = zero_vec(self.rows);
        for (i, o) in out.iter_mut().enumerate() {
            for (k, x) in v.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let a = self.get(i, k);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        RationalMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        RationalMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let data = self.data.iter().map(|a| a * s).collect();
        RationalMatrix { rows: self.rows, cols: self.cols, data }
    }

    /// Rows `rs` and columns `cs` of `self`, in the given order.
    pub fn submatrix(&self, rs: &[usize], cs: &[usize]) -> Self {
        let mut m = Self::zeros(rs.len(), cs.len());
        for (i, &r) in rs.iter().enumerate() {
            for (j, &c) in cs.iter().enumerate() {
                m.set(i, j, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        rref(self)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn trace(&self) -> Rational {
        let mut t = Rational::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && rank(self) == self.rows
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = Self::identity(self.rows);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}

/// Gauss-Jordan elimination on a list of rows, in place. Returns pivot columns.
pub fn rref_rows(rows: &mut Vec<Vec<Rational>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let mut rows = m.to_rows();
    let pivots = rref_rows(&mut rows, m.cols);
    let mut out = RationalMatrix::zeros(m.rows, m.cols);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, x) in row.into_iter().enumerate() {
            out.set(i, j, x);
        }
    }
    (out, pivots)
}

pub fn rank(m: &RationalMatrix) -> usize {
    let mut rows = m.to_rows();
    rref_rows(&mut rows, m.cols).len()
}

/// Rank of the span of a list of vectors of length `n`.
pub fn rank_of(vectors: &[Vec<Rational>], n: usize) -> usize {
    let mut rows = vectors.to_vec();
    rref_rows(&mut rows, n).len()
}

/// Basis of the right kernel {v : m v = 0}.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let mut rows = m.to_rows();
    let pivots = rref_rows(&mut rows, m.cols);
    kernel_from_rref(&rows, &pivots, m.cols)
}

/// Kernel basis from an already reduced system.
pub fn kernel_from_rref(rows: &[Vec<Rational>], pivots: &[usize], ncols: usize) -> Vec<Vec<Rational>> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = zero_vec(ncols);
        v[free] = Rational::one();
        for (row, &p) in rows.iter().zip(pivots) {
            if !row[free].is_zero() {
                v[p] = -row[free].clone();
            }
        }
        out.push(v);
    }
    out
}

/// Particular solution of `a x = b`, if one exists.
pub fn solve_linear(a: &RationalMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if a.rows != b.len() {
        return Err(Error::Input(format!(
            "solve_linear: matrix has {} rows but right-hand side has length {}",
            a.rows,
            b.len()
        )));
    }
    let n = a.cols;
    let mut rows: Vec<Vec<Rational>> = (0..a.rows)
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();
    let pivots = rref_rows(&mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = zero_vec(n);
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[n].clone();
    }
    Ok(Some(x))
}

/// A subspace of Q^n held by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| unit_vec(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vec<Rational>>) -> Self {
        let mut rows: Vec<Vec<Rational>> = vectors.into_iter().filter(|v| !is_zero_vec(v)).collect();
        let pivots = rref_rows(&mut rows, ambient);
        Subspace { ambient, basis: rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts the basis components at pivot positions.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (x, y) in out.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Coordinates of `v` in the rref basis, or `None` if `v` is not in the subspace.
    pub fn coords(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let c: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut back = zero_vec(self.ambient);
        for (ci, row) in c.iter().zip(&self.basis) {
            if ci.is_zero() {
                continue;
            }
            for (x, y) in back.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x += ci * y;
                }
            }
        }
        if back.as_slice() == v {
            Some(c)
        } else {
            None
        }
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x = Σ a_i u_i = Σ b_j w_j
        let n = self.ambient;
        let k = self.dim() + other.dim();
        if k == 0 {
            return Subspace::zero(n);
        }
        let mut cols: Vec<Vec<Rational>> = self.basis.clone();
        cols.extend(other.basis.iter().map(|w| w.iter().map(|x| -x).collect()));
        let m = RationalMatrix::from_columns(&cols, n);
        let vs = kernel_basis(&m).into_iter().map(|sol| {
            let mut x = zero_vec(n);
            for (a, u) in sol.iter().zip(&self.basis) {
                if a.is_zero() {
                    continue;
                }
                for (xi, ui) in x.iter_mut().zip(u) {
                    *xi += a * ui;
                }
            }
            x
        });
        Subspace::span(n, vs)
    }

    /// Standard basis indices that complement the subspace.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }
}

/// Fraction-free Bareiss rank, used as an independent check on `rank`.
pub fn bareiss_rank(m: &RationalMatrix) -> usize {
    let mut lcm = BigInt::one();
    for x in m.entries() {
        lcm = num_integer::Integer::lcm(&lcm, x.denom());
    }
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|r| m.row(r).iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect())
        .collect();
    let (nr, nc) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..nc {
        if r >= nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..nr {
            for j in c + 1..nc {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_identity_and_rank_one() {
        let i = RationalMatrix::identity(2);
        let (r, p) = rref(&i);
        assert_eq!(r, i);
        assert_eq!(p, vec![0, 1]);
        let m = RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let (r, p) = rref(&m);
        assert_eq!(r, RationalMatrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernels() {
        assert!(kernel_basis(&RationalMatrix::identity(3)).is_empty());
        assert_eq!(kernel_basis(&RationalMatrix::zeros(3, 3)).len(), 3);
        let k = kernel_basis(&RationalMatrix::from_i64(&[&[1, 1]]));
        assert_eq!(k, vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn solving() {
        let x = solve_linear(&RationalMatrix::identity(2), &[q(3), qf(1, 2)]).unwrap().unwrap();
        assert_eq!(x, vec![q(3), qf(1, 2)]);
        let a = RationalMatrix::from_i64(&[&[1, 1]]);
        let x = solve_linear(&a, &[q(2)]).unwrap().unwrap();
        assert_eq!(&x[0] + &x[1], q(2));
        let a = RationalMatrix::from_i64(&[&[1], &[1]]);
        assert!(solve_linear(&a, &[q(0), q(1)]).unwrap().is_none());
        assert!(solve_linear(&a, &[q(0)]).is_err());
    }

    #[test]
    fn subspace_ops() {
        let s = Subspace::span(3, vec![vec![q(1), q(1), q(0)], vec![q(0), q(1), q(1)]]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[q(1), q(2), q(1)]));
        assert!(!s.contains(&[q(1), q(0), q(0)]));
        let c = s.coords(&[q(1), q(2), q(1)]).unwrap();
        assert_eq!(c.len(), 2);
        let t = Subspace::span(3, vec![vec![q(1), q(0), q(0)], vec![q(0), q(0), q(1)]]);
        assert_eq!(s.intersection(&t).dim(), 1);
        assert_eq!(s.sum(&t).dim(), 3);
    }
}
