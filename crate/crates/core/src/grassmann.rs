//! `R`-lattices in `Q((x))^n`, `R = Q[[x]]`, given by a basis matrix whose
//! columns span the lattice. Two bases span the same lattice exactly when
//! the transition matrix lies in `GL_n(R)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::{LaurentError, LaurentMatrix, Series};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("lattice basis must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("basis columns are not independent to the working precision")]
    Degenerate,
    #[error("precision x^{0} is too low to decide integrality")]
    Undecidable(i64),
    #[error("lattices live in different dimensions: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("a flag needs at least one lattice")]
    EmptyFlag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LaurentMatrix", into = "LaurentMatrix")]
pub struct LatticeBasis {
    matrix: LaurentMatrix,
}

impl TryFrom<LaurentMatrix> for LatticeBasis {
    type Error = LatticeError;
    fn try_from(m: LaurentMatrix) -> Result<Self, Self::Error> {
        LatticeBasis::new(m)
    }
}

impl From<LatticeBasis> for LaurentMatrix {
    fn from(l: LatticeBasis) -> Self {
        l.matrix
    }
}

/// Precision that leaves room for the largest entry order on either side:
/// `2 * max |ord| + 8`.
pub fn working_precision(m: &LaurentMatrix) -> i64 {
    let span = m.entries().iter().filter_map(Series::ord).map(i64::abs).max().unwrap_or(0);
    2 * span + 8
}

impl LatticeBasis {
    pub fn new(matrix: LaurentMatrix) -> Result<Self, LatticeError> {
        if !matrix.is_square() {
            return Err(LatticeError::NotSquare(matrix.rows(), matrix.cols()));
        }
        match matrix.det_ord() {
            Ok(_) => Ok(LatticeBasis { matrix }),
            Err(LaurentError::Indeterminate) => Err(LatticeError::Degenerate),
            Err(e) => Err(e.into()),
        }
    }

    pub fn matrix(&self) -> &LaurentMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    /// `g` applied to every basis vector.
    pub fn act(&self, g: &LaurentMatrix) -> Result<LatticeBasis, LatticeError> {
        LatticeBasis::new(g.mul(&self.matrix)?)
    }

    /// `x^k` times the lattice.
    pub fn scaled(&self, k: i64) -> LatticeBasis {
        LatticeBasis { matrix: self.matrix.shift(k) }
    }

    /// Valuation of the determinant; the component of the affine
    /// Grassmannian containing the lattice.
    pub fn component_index(&self) -> Result<i64, LatticeError> {
        Ok(self.matrix.det_ord()?)
    }
}

/// Columns `x^i e_j, ..., x^i e_{j+n-1}` with `e_{m + r n} = x^r e_m`.
pub fn standard_lattice(n: usize, i: i64, j: i64, precision: i64) -> LatticeBasis {
    let nn = n as i64;
    let terms: Vec<_> = (0..n)
        .map(|k| {
            let m = j + k as i64 - 1;
            (m.rem_euclid(nn) as usize, k, crate::rational::rat(1), m.div_euclid(nn) + i)
        })
        .collect();
    LatticeBasis { matrix: LaurentMatrix::from_monomials(n, n, &terms, precision) }
}

fn check_sizes(a: &LatticeBasis, b: &LatticeBasis) -> Result<(), LatticeError> {
    if a.n() != b.n() {
        return Err(LatticeError::SizeMismatch(a.n(), b.n()));
    }
    Ok(())
}

/// Transition matrix `M1^-1 M2`: the basis of `l2` written in the basis of `l1`.
pub fn transition(l1: &LatticeBasis, l2: &LatticeBasis) -> Result<LaurentMatrix, LatticeError> {
    check_sizes(l1, l2)?;
    Ok(l1.matrix.inverse()?.mul(&l2.matrix)?)
}

/// Every entry has nonnegative valuation. An entry that vanishes to a
/// nonnegative precision is integral; one that vanishes only to a negative
/// precision cannot be decided.
pub fn is_integral(m: &LaurentMatrix) -> Result<bool, LatticeError> {
    let mut undecided = false;
    for e in m.entries() {
        match e.ord() {
            Some(o) if o < 0 => return Ok(false),
            Some(_) => {}
            None if e.precision() < 0 => undecided = true,
            None => {}
        }
    }
    if undecided {
        Err(LatticeError::Undecidable(m.precision()))
    } else {
        Ok(true)
    }
}

/// `l2` is a sublattice of `l1`.
pub fn contains(l1: &LatticeBasis, l2: &LatticeBasis) -> Result<bool, LatticeError> {
    is_integral(&transition(l1, l2)?)
}

/// Same lattice: the transition matrix is integral with unit determinant.
pub fn lattice_equal(l1: &LatticeBasis, l2: &LatticeBasis) -> Result<bool, LatticeError> {
    Ok(contains(l1, l2)? && l1.component_index()? == l2.component_index()?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFlag {
    pub chain: Vec<LatticeBasis>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagReport {
    /// `chain[k] ⊂ chain[k + 1]`.
    pub containments: Vec<bool>,
    /// `x chain[k] ⊂ chain[k + 1]`.
    pub x_twist: Vec<bool>,
    /// `x chain[last] ⊂ chain[0]`, closing the periodic chain.
    pub wraps: bool,
    /// `index(chain[k]) - index(chain[k + 1])`.
    pub index_steps: Vec<i64>,
    pub valid: bool,
}

/// Containments, the `x`-twist, and codimension-one steps measured by the
/// component index.
pub fn validate_flag(flag: &LatticeFlag) -> Result<FlagReport, LatticeError> {
    let chain = &flag.chain;
    let first = chain.first().ok_or(LatticeError::EmptyFlag)?;
    for l in chain {
        check_sizes(first, l)?;
    }
    let mut containments = Vec::new();
    let mut x_twist = Vec::new();
    let mut index_steps = Vec::new();
    for w in chain.windows(2) {
        containments.push(contains(&w[1], &w[0])?);
        x_twist.push(contains(&w[1], &w[0].scaled(1))?);
        index_steps.push(w[0].component_index()? - w[1].component_index()?);
    }
    let last = chain.last().expect("nonempty");
    let wraps = contains(first, &last.scaled(1))?;
    let valid = wraps
        && containments.iter().chain(&x_twist).all(|&b| b)
        && index_steps.iter().all(|&s| s.abs() == 1);
    Ok(FlagReport { containments, x_twist, wraps, index_steps, valid })
}

/// `Λ_k = span(e_1, .., e_k, x e_{k+1}, .., x e_n)` for `k = 1..n`.
pub fn standard_flag(n: usize, precision: i64) -> LatticeFlag {
    let chain = (1..=n)
        .map(|k| {
            let terms: Vec<_> = (0..n)
                .map(|p| (p, p, crate::rational::rat(1), i64::from(p >= k)))
                .collect();
            LatticeBasis { matrix: LaurentMatrix::from_monomials(n, n, &terms, precision) }
        })
        .collect();
    LatticeFlag { chain }
}
