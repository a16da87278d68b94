//! Orders in matrix algebras over `Q((x))` described by entrywise valuation
//! bounds, and the surface order obtained by gluing one hereditary order per
//! sigma-cycle along diagonal residues, one gluing per alpha-pair.

use std::fmt;

use num::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::{LaurentMatrix, Series};
use crate::permgroup::{Constellation, PermError};
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("size must be positive")]
    ZeroSize,
    #[error("projective index {k} outside 1..={n}")]
    ProjectiveIndex { n: usize, k: usize },
    #[error(transparent)]
    Constellation(#[from] PermError),
    #[error("expected {expected} matrices, got {got}")]
    Count { expected: usize, got: usize },
    #[error("matrix {index} is {got_rows}x{got_cols}, expected {expected}x{expected}")]
    Shape { index: usize, expected: usize, got_rows: usize, got_cols: usize },
    #[error("precision {0} does not determine constant terms")]
    Precision(i64),
}

/// Lower bounds on entry valuations; `min_val[p][q]` bounds entry `(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ValuationPattern {
    pub rows: usize,
    pub cols: usize,
    pub min_val: Vec<Vec<i64>>,
}

impl ValuationPattern {
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let min_val = (0..rows).map(|p| (0..cols).map(|q| f(p, q)).collect()).collect();
        ValuationPattern { rows, cols, min_val }
    }

    pub fn get(&self, p: usize, q: usize) -> i64 {
        self.min_val[p][q]
    }

    /// Every entry's valuation meets its bound; entries that vanish to the
    /// known precision count as meeting it.
    pub fn matches(&self, m: &LaurentMatrix) -> bool {
        m.rows() == self.rows
            && m.cols() == self.cols
            && (0..self.rows).all(|p| {
                (0..self.cols).all(|q| m.get(p, q).ord().is_none_or(|o| o >= self.get(p, q)))
            })
    }

    /// `R`, `m`, `m^k` grid, one row per line.
    pub fn render(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .min_val
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| match v {
                        0 => "R".to_string(),
                        1 => "𝔪".to_string(),
                        k => format!("𝔪^{k}"),
                    })
                    .collect()
            })
            .collect();
        let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
        cells
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| format!("{c:<width$}"))
                    .collect::<Vec<_>>()
                    .join(" ")
                    .trim_end()
                    .to_string()
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// `R` on and below the diagonal, the maximal ideal strictly above.
pub fn hereditary_order(n: usize) -> Result<ValuationPattern, OrderError> {
    if n == 0 {
        return Err(OrderError::ZeroSize);
    }
    Ok(ValuationPattern::from_fn(n, n, |p, q| i64::from(p < q)))
}

/// Valuation at least `j` strictly above the diagonal, at least 0 elsewhere.
pub fn iwahori_pattern(n: usize, j: i64) -> ValuationPattern {
    ValuationPattern::from_fn(n, n, |p, q| if p < q { j } else { 0 })
}

/// Valuation bounds of a column lattice; larger bounds mean a smaller lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjectiveColumn {
    pub size: usize,
    pub vals: Vec<i64>,
}

impl ProjectiveColumn {
    /// `self` contains `other` entrywise.
    pub fn contains(&self, other: &ProjectiveColumn) -> bool {
        self.size == other.size && self.vals.iter().zip(&other.vals).all(|(a, b)| a <= b)
    }

    /// Image under left multiplication by [`shift_matrix`]: the last entry
    /// moves to the top picking up a factor `x`.
    pub fn shifted(&self) -> ProjectiveColumn {
        let mut vals = Vec::with_capacity(self.size);
        if let Some(&last) = self.vals.last() {
            vals.push(last + 1);
            vals.extend_from_slice(&self.vals[..self.size - 1]);
        }
        ProjectiveColumn { size: self.size, vals }
    }

    /// Multiplication by `x^k`.
    pub fn scaled(&self, k: i64) -> ProjectiveColumn {
        ProjectiveColumn { size: self.size, vals: self.vals.iter().map(|v| v + k).collect() }
    }
}

/// The `k`-th indecomposable projective of the size-`n` hereditary order:
/// `k - 1` leading ones, then zeros.
pub fn projective_column(n: usize, k: usize) -> Result<ProjectiveColumn, OrderError> {
    if n == 0 {
        return Err(OrderError::ZeroSize);
    }
    if k == 0 || k > n {
        return Err(OrderError::ProjectiveIndex { n, k });
    }
    Ok(ProjectiveColumn { size: n, vals: (0..n).map(|p| i64::from(p + 1 < k)).collect() })
}

/// Ones on the subdiagonal and `x` in the top-right corner; its `n`-th power
/// is `x I`.
pub fn shift_matrix(n: usize, precision: i64) -> LaurentMatrix {
    let mut terms: Vec<(usize, usize, Rational, i64)> =
        (1..n).map(|p| (p, p - 1, Rational::one(), 0)).collect();
    if n > 0 {
        terms.push((0, n - 1, Rational::one(), 1));
    }
    LaurentMatrix::from_monomials(n, n, &terms, precision)
}

/// A diagonal position: `position` within sigma-cycle `cycle`, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slot {
    pub cycle: usize,
    pub position: usize,
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.cycle, self.position)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gluing {
    pub first: Slot,
    pub second: Slot,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceOrder {
    pub vertex_orders: Vec<ValuationPattern>,
    pub gluings: Vec<Gluing>,
}

/// One hereditary order per canonical sigma-cycle; half-edge `e` sits in the
/// diagonal slot given by its position in its cycle, and each alpha-pair
/// glues its two slots.
pub fn build_surface_order(c: &Constellation) -> Result<SurfaceOrder, OrderError> {
    c.ensure_valid()?;
    let cycles = c.sigma().cycles();
    let slots = c.sigma().cycle_slots();
    let slot = |e: usize| {
        let (ci, pos) = slots[e - 1];
        Slot { cycle: ci + 1, position: pos + 1 }
    };
    let vertex_orders =
        cycles.iter().map(|cy| hereditary_order(cy.len())).collect::<Result<Vec<_>, _>>()?;
    let gluings = c
        .alpha()
        .cycles()
        .iter()
        .map(|pair| Gluing { first: slot(pair[0]), second: slot(pair[1]) })
        .collect();
    Ok(SurfaceOrder { vertex_orders, gluings })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub patterns: Vec<bool>,
    pub gluings: Vec<bool>,
    pub member: bool,
}

impl SurfaceOrder {
    pub fn check_membership(&self, element: &[LaurentMatrix]) -> Result<MembershipReport, OrderError> {
        if element.len() != self.vertex_orders.len() {
            return Err(OrderError::Count { expected: self.vertex_orders.len(), got: element.len() });
        }
        for (index, (m, pat)) in element.iter().zip(&self.vertex_orders).enumerate() {
            if m.rows() != pat.rows || m.cols() != pat.cols {
                return Err(OrderError::Shape {
                    index: index + 1,
                    expected: pat.rows,
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                });
            }
            if m.precision() <= 0 {
                return Err(OrderError::Precision(m.precision()));
            }
        }
        let patterns: Vec<bool> =
            element.iter().zip(&self.vertex_orders).map(|(m, p)| p.matches(m)).collect();
        let diag = |s: Slot| -> &Series {
            element[s.cycle - 1].get(s.position - 1, s.position - 1)
        };
        let gluings: Vec<bool> =
            self.gluings.iter().map(|g| diag(g.first).coeff(0) == diag(g.second).coeff(0)).collect();
        let member = patterns.iter().chain(&gluings).all(|&b| b);
        Ok(MembershipReport { patterns, gluings, member })
    }

    pub fn membership(&self, element: &[LaurentMatrix]) -> Result<bool, OrderError> {
        Ok(self.check_membership(element)?.member)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.vertex_orders.iter().map(|p| p.rows).collect()
    }

    /// Pattern grids followed by the gluing table.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, p) in self.vertex_orders.iter().enumerate() {
            out.push_str(&format!("vertex order {} (size {}):\n{}\n", i + 1, p.rows, p.render()));
        }
        out.push_str("gluings:\n");
        for g in &self.gluings {
            out.push_str(&format!("  {} ~ {}\n", g.first, g.second));
        }
        out
    }
}
