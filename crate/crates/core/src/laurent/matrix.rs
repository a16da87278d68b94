use std::fmt;

use num::One;
use serde::{Deserialize, Serialize};

use super::{LaurentError, Series};
use crate::rational::{QMatrix, Rational};

/// Dense matrix of [`Series`] sharing one precision.
///
/// Entries are truncated to the smallest precision among them whenever the
/// matrix is built, so the matrix as a whole is known modulo `x^precision`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Series>,
    precision: i64,
}

/// Up to this size the determinant is expanded exactly over subsets of
/// columns; above it, elimination is used.
const LAPLACE_LIMIT: usize = 8;

impl LaurentMatrix {
    /// `fallback` is the precision reported for a matrix with no entries.
    fn build(rows: usize, cols: usize, entries: Vec<Series>, fallback: i64) -> Self {
        let precision = entries.iter().map(Series::precision).min().unwrap_or(fallback);
        let entries = entries.into_iter().map(|e| e.truncate(precision)).collect();
        LaurentMatrix { rows, cols, entries, precision }
    }

    pub fn new(rows: usize, cols: usize, entries: Vec<Series>) -> Result<Self, LaurentError> {
        if entries.len() != rows * cols {
            return Err(LaurentError::Shape(rows, cols, entries.len(), 1));
        }
        Ok(Self::build(rows, cols, entries, super::DEFAULT_PRECISION))
    }

    pub fn from_rows(rows: Vec<Vec<Series>>) -> Result<Self, LaurentError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(LaurentError::Shape(r, c, 1, bad.len()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize, precision: i64) -> Self {
        LaurentMatrix { rows, cols, entries: vec![Series::zero(precision); rows * cols], precision }
    }

    pub fn identity(n: usize, precision: i64) -> Self {
        Self::scalar(n, &Series::one(precision))
    }

    /// `s * I_n`.
    pub fn scalar(n: usize, s: &Series) -> Self {
        let mut m = Self::zeros(n, n, s.precision());
        for i in 0..n {
            m.entries[i * n + i] = s.clone();
        }
        m
    }

    pub fn from_qmatrix(q: &QMatrix, precision: i64) -> Self {
        let entries = (0..q.rows())
            .flat_map(|r| (0..q.cols()).map(move |c| (r, c)))
            .map(|(r, c)| Series::constant(q.get(r, c).clone(), precision))
            .collect();
        Self::build(q.rows(), q.cols(), entries, precision)
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

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn get(&self, r: usize, c: usize) -> &Series {
        &self.entries[r * self.cols + c]
    }

    /// Replaces one entry; the common precision drops if the new entry is
    /// known less precisely.
    pub fn set(&mut self, r: usize, c: usize, v: Series) {
        if v.precision() < self.precision {
            *self = self.truncate(v.precision());
        }
        self.entries[r * self.cols + c] = v.truncate(self.precision);
    }

    pub fn entries(&self) -> &[Series] {
        &self.entries
    }

    pub fn row_vecs(&self) -> Vec<Vec<Series>> {
        self.entries.chunks(self.cols.max(1)).take(self.rows).map(<[Series]>::to_vec).collect()
    }

    pub fn truncate(&self, p: i64) -> Self {
        let p = p.min(self.precision);
        LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.truncate(p)).collect(),
            precision: p,
        }
    }

    pub fn map(&self, f: impl Fn(&Series) -> Series) -> Self {
        Self::build(self.rows, self.cols, self.entries.iter().map(f).collect(), self.precision)
    }

    pub fn scale(&self, s: &Series) -> Self {
        self.map(|e| e * s)
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        self.map(|e| e.shift(k))
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        LaurentMatrix { rows: self.cols, cols: self.rows, entries, precision: self.precision }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Series::is_zero)
    }

    /// Smallest valuation among entries known to be nonzero.
    pub fn min_ord(&self) -> Option<i64> {
        self.entries.iter().filter_map(Series::ord).min()
    }

    pub fn congruent(&self, other: &LaurentMatrix) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a.congruent(b))
    }

    fn check_same_shape(&self, rhs: &LaurentMatrix) -> Result<(), LaurentError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LaurentError::Shape(self.rows, self.cols, rhs.rows, rhs.cols));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &LaurentMatrix) -> Result<Self, LaurentError> {
        self.check_same_shape(rhs)?;
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect();
        Ok(Self::build(self.rows, self.cols, entries, self.precision.min(rhs.precision)))
    }

    pub fn sub(&self, rhs: &LaurentMatrix) -> Result<Self, LaurentError> {
        self.check_same_shape(rhs)?;
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect();
        Ok(Self::build(self.rows, self.cols, entries, self.precision.min(rhs.precision)))
    }

    pub fn mul(&self, rhs: &LaurentMatrix) -> Result<Self, LaurentError> {
        if self.cols != rhs.rows {
            return Err(LaurentError::Shape(self.rows, self.cols, rhs.rows, rhs.cols));
        }
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc: Option<Series> = None;
                for k in 0..self.cols {
                    let t = self.get(i, k) * rhs.get(k, j);
                    acc = Some(match acc {
                        None => t,
                        Some(a) => &a + &t,
                    });
                }
                entries.push(acc.unwrap_or_else(|| Series::zero(self.precision.min(rhs.precision))));
            }
        }
        Ok(Self::build(self.rows, rhs.cols, entries, self.precision.min(rhs.precision)))
    }

    pub fn pow(&self, k: u32) -> Result<Self, LaurentError> {
        if !self.is_square() {
            return Err(LaurentError::NotSquare(self.rows, self.cols));
        }
        let mut acc = Self::identity(self.rows, self.precision);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn determinant(&self) -> Result<Series, LaurentError> {
        if !self.is_square() {
            return Err(LaurentError::NotSquare(self.rows, self.cols));
        }
        if self.rows <= LAPLACE_LIMIT {
            Ok(self.det_by_expansion())
        } else {
            self.det_by_elimination()
        }
    }

    /// Sum over permutations, organized as a walk over subsets of used
    /// columns. No entry is skipped, so precision bookkeeping stays honest.
    pub fn det_by_expansion(&self) -> Series {
        let n = self.rows;
        if n == 0 {
            return Series::one(self.precision);
        }
        let mut dp: Vec<Option<Series>> = vec![None; 1 << n];
        for c in 0..n {
            dp[1 << c] = Some(self.get(0, c).clone());
        }
        for mask in 1usize..(1 << n) {
            let r = mask.count_ones() as usize;
            if r >= n {
                continue;
            }
            let Some(cur) = dp[mask].clone() else { continue };
            for c in (0..n).filter(|c| mask & (1 << c) == 0) {
                let mut term = &cur * self.get(r, c);
                if (mask >> (c + 1)).count_ones() % 2 == 1 {
                    term = -&term;
                }
                let slot = &mut dp[mask | (1 << c)];
                *slot = Some(match slot.take() {
                    None => term,
                    Some(a) => &a + &term,
                });
            }
        }
        dp[(1 << n) - 1].take().expect("full mask is reached")
    }

    /// Gaussian elimination, pivoting on the entry of least valuation.
    pub fn det_by_elimination(&self) -> Result<Series, LaurentError> {
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Series::one(self.precision);
        for c in 0..n {
            let p = m.pivot_row(c, c).ok_or(LaurentError::Indeterminate)?;
            if p != c {
                m.swap_rows(p, c);
                det = -&det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let piv_inv = piv.inverse()?;
            for r in c + 1..n {
                let f = m.get(r, c) * &piv_inv;
                for j in c..n {
                    let v = m.get(r, j) - &(&f * m.get(c, j));
                    m.entries[r * n + j] = v;
                }
            }
        }
        Ok(det)
    }

    fn pivot_row(&self, col: usize, from: usize) -> Option<usize> {
        (from..self.rows)
            .filter_map(|r| self.get(r, col).ord().map(|o| (o, r)))
            .min()
            .map(|(_, r)| r)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Valuation of the determinant, the index of the component of
    /// `GL_n(Q((x)))` containing the matrix.
    pub fn det_ord(&self) -> Result<i64, LaurentError> {
        self.determinant()?.ord().ok_or(LaurentError::Indeterminate)
    }

    /// Gauss-Jordan elimination with least-valuation pivots. The returned
    /// precision is whatever survives the arithmetic.
    pub fn inverse(&self) -> Result<Self, LaurentError> {
        if !self.is_square() {
            return Err(LaurentError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n, self.precision);
        for c in 0..n {
            let p = a.pivot_row(c, c).ok_or(LaurentError::Singular)?;
            if p != c {
                a.swap_rows(p, c);
                inv.swap_rows(p, c);
            }
            let piv_inv = a.get(c, c).inverse().map_err(|_| LaurentError::Singular)?;
            for j in 0..n {
                a.entries[c * n + j] = a.get(c, j) * &piv_inv;
                inv.entries[c * n + j] = inv.get(c, j) * &piv_inv;
            }
            for r in (0..n).filter(|&r| r != c) {
                let f = a.get(r, c).clone();
                for j in 0..n {
                    a.entries[r * n + j] = a.get(r, j) - &(&f * a.get(c, j));
                    inv.entries[r * n + j] = inv.get(r, j) - &(&f * inv.get(c, j));
                }
            }
        }
        Ok(Self::build(n, n, inv.entries, self.precision))
    }

    /// Constant-coefficient matrix, defined when no entry has a pole and the
    /// precision reaches `x^1`.
    pub fn residue_matrix(&self) -> Option<QMatrix> {
        if self.precision < 1 || self.entries.iter().any(|e| e.ord().is_some_and(|o| o < 0)) {
            return None;
        }
        let rows = self.row_vecs().iter().map(|r| r.iter().map(|e| e.coeff(0)).collect()).collect();
        QMatrix::from_rows_shaped(self.rows, self.cols, rows).ok()
    }

    /// Entry `(r, c)` is the monomial `coef * x^exp` for listed positions, zero elsewhere.
    pub fn from_monomials(
        rows: usize,
        cols: usize,
        terms: &[(usize, usize, Rational, i64)],
        precision: i64,
    ) -> Self {
        let mut m = Self::zeros(rows, cols, precision);
        for (r, c, coef, exp) in terms {
            let cur = m.get(*r, *c).clone();
            m.entries[r * cols + c] = &cur + &Series::monomial(coef.clone(), *exp, precision);
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = self.get(r, c);
                    if r == c {
                        e.is_monomial() && e.lead() == 0 && e.coeffs()[0].is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|e| format!("{e:#}")).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{:>width$}", cells[r * self.cols + c])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "(mod x^{})", self.precision)
    }
}

impl Serialize for LaurentMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.row_vecs().serialize(s)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum EntryLiteral {
    Full(Series),
    Text(String),
}

impl<'de> Deserialize<'de> for LaurentMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<EntryLiteral>> = Vec::deserialize(d)?;
        let rows = rows
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| match e {
                        EntryLiteral::Full(s) => Ok(s),
                        EntryLiteral::Text(t) => t.parse::<Series>(),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        LaurentMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}
