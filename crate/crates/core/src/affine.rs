//! Affine permutations of `Z` in window notation: bijections `s` with
//! `s(i + n) = s(i) + n` and `s(1) + ... + s(n) = n(n+1)/2`.

use std::fmt;

use num::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::LaurentMatrix;
use crate::permgroup::Permutation;
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AffineError {
    #[error("window {0:?} is not an affine permutation")]
    InvalidWindow(Vec<i64>),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("generator index {i} outside 1..={n}")]
    GeneratorRange { i: usize, n: usize },
    #[error("affine generators need n >= 2, got {0}")]
    TooSmall(usize),
    #[error("cannot parse window {0:?}")]
    Parse(String),
}

/// Checks distinct residues mod `n` and the window sum.
pub fn validate_window(n: usize, window: &[i64]) -> bool {
    if n == 0 || window.len() != n {
        return false;
    }
    let nn = n as i64;
    let mut seen = vec![false; n];
    for &a in window {
        let r = a.rem_euclid(nn) as usize;
        if std::mem::replace(&mut seen[r], true) {
            return false;
        }
    }
    window.iter().sum::<i64>() == nn * (nn + 1) / 2
}

/// Parses `0,3` or `[0, 3]`.
pub fn parse_window(s: &str) -> Result<Vec<i64>, AffineError> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    t.split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| AffineError::Parse(s.to_string())))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WindowJson", into = "WindowJson")]
pub struct AffinePermutation {
    window: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct WindowJson {
    n: usize,
    window: Vec<i64>,
}

impl TryFrom<WindowJson> for AffinePermutation {
    type Error = AffineError;
    fn try_from(w: WindowJson) -> Result<Self, Self::Error> {
        if w.window.len() != w.n {
            return Err(AffineError::SizeMismatch(w.n, w.window.len()));
        }
        AffinePermutation::new(w.window)
    }
}

impl From<AffinePermutation> for WindowJson {
    fn from(a: AffinePermutation) -> Self {
        WindowJson { n: a.n(), window: a.window }
    }
}

/// Finite part in `S_n` and translation: `window[i] = finite(i) + n t[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineSplit {
    pub finite: Vec<usize>,
    pub translation: Vec<i64>,
}

impl AffineSplit {
    pub fn finite_permutation(&self) -> Permutation {
        Permutation::from_images(self.finite.clone()).expect("split yields a permutation")
    }

    pub fn reassemble(&self) -> Vec<i64> {
        let n = self.finite.len() as i64;
        self.finite.iter().zip(&self.translation).map(|(&f, &t)| f as i64 + n * t).collect()
    }
}

impl AffinePermutation {
    pub fn new(window: Vec<i64>) -> Result<Self, AffineError> {
        if validate_window(window.len(), &window) {
            Ok(AffinePermutation { window })
        } else {
            Err(AffineError::InvalidWindow(window))
        }
    }

    pub fn identity(n: usize) -> Self {
        AffinePermutation { window: (1..=n as i64).collect() }
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn apply(&self, i: i64) -> i64 {
        let n = self.n() as i64;
        self.window[(i - 1).rem_euclid(n) as usize] + n * (i - 1).div_euclid(n)
    }

    /// `self` after `v`.
    pub fn compose(&self, v: &AffinePermutation) -> Result<AffinePermutation, AffineError> {
        if self.n() != v.n() {
            return Err(AffineError::SizeMismatch(self.n(), v.n()));
        }
        Ok(AffinePermutation { window: v.window.iter().map(|&j| self.apply(j)).collect() })
    }

    pub fn inverse(&self) -> AffinePermutation {
        let n = self.n() as i64;
        let mut inv = vec![0; self.n()];
        for (i, &a) in self.window.iter().enumerate() {
            let r = (a - 1).rem_euclid(n);
            let t = (a - 1).div_euclid(n);
            inv[r as usize] = i as i64 + 1 - n * t;
        }
        AffinePermutation { window: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &a)| a == i as i64 + 1)
    }

    pub fn split(&self) -> AffineSplit {
        let n = self.n() as i64;
        AffineSplit {
            finite: self.window.iter().map(|&a| ((a - 1).rem_euclid(n) + 1) as usize).collect(),
            translation: self.window.iter().map(|&a| (a - 1).div_euclid(n)).collect(),
        }
    }

    /// How often each strand wraps the cylinder; positive is clockwise.
    pub fn winding_numbers(&self) -> Vec<i64> {
        self.split().translation
    }

    /// Monomial matrix of `e_j -> e_{s(j)}` with `e_{r + n t} = x^t e_r`.
    pub fn to_matrix(&self, precision: i64) -> LaurentMatrix {
        let split = self.split();
        let terms: Vec<(usize, usize, Rational, i64)> = split
            .finite
            .iter()
            .zip(&split.translation)
            .enumerate()
            .map(|(j, (&r, &t))| (r - 1, j, Rational::one(), t))
            .collect();
        LaurentMatrix::from_monomials(self.n(), self.n(), &terms, precision)
    }

    /// Smallest `k >= 1` with `self^k = e`, if at most `cap`.
    pub fn order(&self, cap: usize) -> Option<usize> {
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.compose(self).ok()?;
        }
        None
    }
}

/// `s_i` swaps `i` and `i + 1` for `i < n`; `s_n = [0, 2, ..., n-1, n+1]`.
pub fn generator(i: usize, n: usize) -> Result<AffinePermutation, AffineError> {
    if n < 2 {
        return Err(AffineError::TooSmall(n));
    }
    if i == 0 || i > n {
        return Err(AffineError::GeneratorRange { i, n });
    }
    let mut w: Vec<i64> = (1..=n as i64).collect();
    if i < n {
        w.swap(i - 1, i);
    } else {
        w[0] = 0;
        w[n - 1] = n as i64 + 1;
    }
    Ok(AffinePermutation { window: w })
}

/// Order of `s_i s_j` predicted by the cyclic Coxeter diagram, `n >= 3`.
pub fn coxeter_exponent(i: usize, j: usize, n: usize) -> usize {
    let d = (i as i64 - j as i64).rem_euclid(n as i64);
    if d == 0 {
        1
    } else if d == 1 || d == n as i64 - 1 {
        3
    } else {
        2
    }
}

impl fmt::Display for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
