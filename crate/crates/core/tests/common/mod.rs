#![allow(dead_code)]

use std::collections::BTreeMap;

use dessin_core::laurent::{LaurentMatrix, Series};
use dessin_core::rational::{rat, QMatrix, Rational};
use num::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random Laurent polynomial with exponents in `lo..=hi`, small integer
/// coefficients and the given precision.
pub fn random_series<R: Rng>(rng: &mut R, lo: i64, hi: i64, precision: i64) -> Series {
    let mut terms: Vec<(i64, Rational)> = Vec::new();
    for e in lo..=hi {
        if rng.gen_bool(0.6) {
            terms.push((e, rat(rng.gen_range(-4..=4))));
        }
    }
    Series::from_terms(&terms, precision)
}

pub fn random_unit_series<R: Rng>(rng: &mut R, hi: i64, precision: i64) -> Series {
    let mut s = random_series(rng, 1, hi, precision);
    let c = loop {
        let c = rng.gen_range(-3..=3);
        if c != 0 {
            break c;
        }
    };
    s = &s + &Series::constant(rat(c), precision);
    s
}

/// Product by explicit convolution over the known coefficient ranges.
pub fn convolve(f: &Series, g: &Series) -> Series {
    let (vf, vg) = (f.lead(), g.lead());
    let ef = f.ord().unwrap_or(f.precision());
    let eg = g.ord().unwrap_or(g.precision());
    let precision = (ef + g.precision()).min(eg + f.precision());
    let mut dense: BTreeMap<i64, Rational> = BTreeMap::new();
    for (i, a) in f.coeffs().iter().enumerate() {
        for (j, b) in g.coeffs().iter().enumerate() {
            let e = vf + vg + (i + j) as i64;
            *dense.entry(e).or_insert_with(Rational::zero) += a * b;
        }
    }
    let terms: Vec<(i64, Rational)> = dense.into_iter().filter(|(e, _)| *e < precision).collect();
    Series::from_terms(&terms, precision)
}

pub fn random_laurent_matrix<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64, precision: i64) -> LaurentMatrix {
    let entries = (0..n * n).map(|_| random_series(rng, lo, hi, precision)).collect();
    LaurentMatrix::new(n, n, entries).unwrap()
}

/// Upper unitriangular times lower triangular with unit diagonal, entries
/// in `Q[x]`: an element of `GL_n(R)`.
pub fn random_gl_r<R: Rng>(rng: &mut R, n: usize, precision: i64) -> LaurentMatrix {
    let mut upper = LaurentMatrix::identity(n, precision);
    let mut lower = LaurentMatrix::identity(n, precision);
    for r in 0..n {
        for c in 0..n {
            if r < c {
                upper.set(r, c, random_series(rng, 0, 2, precision));
            } else if r > c {
                lower.set(r, c, random_series(rng, 0, 2, precision));
            } else {
                lower.set(r, c, random_unit_series(rng, 2, precision));
            }
        }
    }
    upper.mul(&lower).unwrap()
}

pub fn random_qmatrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, range: i64) -> QMatrix {
    let mut m = QMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, rat(rng.gen_range(-range..=range)));
        }
    }
    m
}

pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> QMatrix {
    loop {
        let g = random_qmatrix(rng, n, n, 3);
        if !g.determinant().unwrap().is_zero() {
            return g;
        }
    }
}

/// Direct sum of nilpotent Jordan blocks with the given sizes.
pub fn jordan(parts: &[usize]) -> QMatrix {
    let n = parts.iter().sum();
    let mut m = QMatrix::zeros(n, n);
    let mut start = 0;
    for &p in parts {
        for i in start..start + p - 1 {
            m.set(i, i + 1, rat(1));
        }
        start += p;
    }
    m
}

pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Column Hermite normal form over `R = Q[[x]]`: upper triangular, the
/// diagonal entry of column `i` is exactly `x^a_i`, and every entry to its
/// right in row `i` only has exponents below `a_i`. `None` when the
/// precision does not determine the form.
pub fn hermite_form(m: &LaurentMatrix) -> Option<(Vec<i64>, Vec<Vec<Series>>)> {
    let n = m.rows();
    let mut cols: Vec<Vec<Series>> = (0..n).map(|c| (0..n).map(|r| m.get(r, c).clone()).collect()).collect();
    let mut diag = vec![0; n];
    for i in (0..n).rev() {
        let pivot = (0..=i).filter(|&c| cols[c][i].ord().is_some()).min_by_key(|&c| cols[c][i].ord())?;
        if (0..=i).any(|c| cols[c][i].ord().is_none() && cols[c][i].precision() <= cols[pivot][i].ord().unwrap()) {
            return None;
        }
        cols.swap(pivot, i);
        let a = cols[i][i].ord().unwrap();
        let unit_inv = cols[i][i].shift(-a).inverse().ok()?;
        cols[i] = cols[i].iter().map(|e| e * &unit_inv).collect();
        diag[i] = a;
        for c in 0..i {
            let factor = cols[c][i].shift(-a);
            cols[c] = cols[c].iter().zip(&cols[i]).map(|(e, p)| e - &(p * &factor)).collect();
        }
    }
    for i in (0..n).rev() {
        let a = diag[i];
        for c in i + 1..n {
            let e = &cols[c][i];
            if e.precision() < a {
                return None;
            }
            let high: Vec<(i64, Rational)> =
                e.terms().filter(|(k, _)| *k >= a).map(|(k, v)| (k - a, v.clone())).collect();
            let factor = Series::from_terms(&high, e.precision() - a);
            let col_i = cols[i].clone();
            cols[c] = cols[c].iter().zip(&col_i).map(|(e, p)| e - &(p * &factor)).collect();
        }
    }
    let rows = (0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect();
    Some((diag, rows))
}

/// Lattice equality through Hermite forms; `None` when either form is not
/// determined or the forms cannot be compared at the available precision.
pub fn hermite_equal(a: &LaurentMatrix, b: &LaurentMatrix) -> Option<bool> {
    let (da, ra) = hermite_form(a)?;
    let (db, rb) = hermite_form(b)?;
    if da != db {
        return Some(false);
    }
    let n = a.rows();
    for r in 0..n {
        for c in r + 1..n {
            let (x, y) = (&ra[r][c], &rb[r][c]);
            if x.precision() < da[r] || y.precision() < da[r] {
                return None;
            }
            if x.truncate(da[r]) != y.truncate(da[r]) {
                return Some(false);
            }
        }
    }
    Some(true)
}
