//! Lusztig's embedding of nilpotent matrices into the affine Grassmannian,
//! and of nilpotent representations of the cyclic quiver into partial affine
//! flags.
//!
//! A representation of the cyclic quiver on vertices `1..n` has spaces `V_i`
//! of dimension `d_i` and maps `A_i : V_i -> V_{i-1}` (indices mod `n`), so
//! `A_i` is a `d_{i-1} x d_i` matrix. `A_j^[k] = A_{j-k+1} ... A_{j-1} A_j`
//! maps `V_j` to `V_{j-k}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grassmann::{lattice_equal, LatticeBasis, LatticeError};
use crate::laurent::{LaurentError, LaurentMatrix, Series};
use crate::order::ValuationPattern;
use crate::rational::{MatrixError, QMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LusztigError {
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("representation is not nilpotent")]
    RepNotNilpotent,
    #[error("matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("map A_{index} is {got_rows}x{got_cols}, expected {rows}x{cols}")]
    Shape { index: usize, rows: usize, cols: usize, got_rows: usize, got_cols: usize },
    #[error("expected {expected} maps, got {got}")]
    MapCount { expected: usize, got: usize },
    #[error("dimension vector needs a positive entry")]
    EmptyDims,
    #[error("composition {parts:?} does not partition {n}")]
    BadComposition { n: usize, parts: Vec<usize> },
    #[error("change of basis is not invertible")]
    NotInvertible,
    #[error("powers of the big matrix lost all precision")]
    PrecisionExhausted,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// `sum_{k=1}^{n} x^(n-k) N^(k-1)`, whose columns span `Phi(N)`.
pub fn phi_nilpotent(n_mat: &QMatrix, precision: i64) -> Result<LatticeBasis, LusztigError> {
    if !n_mat.is_square() {
        return Err(LusztigError::NotSquare(n_mat.rows(), n_mat.cols()));
    }
    if !n_mat.is_nilpotent()? {
        return Err(LusztigError::NotNilpotent);
    }
    let n = n_mat.rows();
    let mut acc = LaurentMatrix::zeros(n, n, precision);
    let mut power = QMatrix::identity(n);
    for k in 1..=n {
        let term = LaurentMatrix::from_qmatrix(&power, precision).shift((n - k) as i64);
        acc = acc.add(&term)?;
        power = power.try_mul(n_mat)?;
    }
    Ok(LatticeBasis::new(acc)?)
}

/// Decides `Phi(g N g^-1) = g Phi(N)` as lattices.
pub fn check_equivariance(g: &QMatrix, n_mat: &QMatrix, precision: i64) -> Result<bool, LusztigError> {
    let g_inv = g.inverse().map_err(|_| LusztigError::NotInvertible)?;
    let conj = g.try_mul(n_mat)?.try_mul(&g_inv)?;
    let lhs = phi_nilpotent(&conj, precision)?;
    let rhs = phi_nilpotent(n_mat, precision)?.act(&LaurentMatrix::from_qmatrix(g, precision))?;
    Ok(lattice_equal(&lhs, &rhs)?)
}

/// How strictly the cyclic composites must degenerate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NilpotencyMode {
    /// Each cyclic composite `A_j^[n]` is a nilpotent matrix.
    #[default]
    Composite,
    /// Each cyclic composite `A_j^[n]` is zero.
    Vanishing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicQuiverRep {
    dims: Vec<usize>,
    maps: Vec<QMatrix>,
}

#[derive(Deserialize)]
struct RepJson {
    dims: Vec<usize>,
    maps: Vec<QMatrix>,
}

impl<'de> Deserialize<'de> for CyclicQuiverRep {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RepJson::deserialize(d)?;
        CyclicQuiverRep::new(raw.dims, raw.maps).map_err(serde::de::Error::custom)
    }
}

impl CyclicQuiverRep {
    /// Maps with no entries are reshaped to their expected (empty) shape.
    pub fn new(dims: Vec<usize>, maps: Vec<QMatrix>) -> Result<Self, LusztigError> {
        let n = dims.len();
        if dims.iter().all(|&d| d == 0) {
            return Err(LusztigError::EmptyDims);
        }
        if maps.len() != n {
            return Err(LusztigError::MapCount { expected: n, got: maps.len() });
        }
        let mut fixed = Vec::with_capacity(n);
        for (k, m) in maps.into_iter().enumerate() {
            let i = k + 1;
            let (rows, cols) = (dims[(i + n - 2) % n], dims[i - 1]);
            if m.rows() * m.cols() == 0 && rows * cols == 0 {
                fixed.push(QMatrix::zeros(rows, cols));
            } else if m.rows() != rows || m.cols() != cols {
                return Err(LusztigError::Shape {
                    index: i,
                    rows,
                    cols,
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                });
            } else {
                fixed.push(m);
            }
        }
        Ok(CyclicQuiverRep { dims, maps: fixed })
    }

    pub fn zero(dims: Vec<usize>) -> Result<Self, LusztigError> {
        let n = dims.len();
        let maps = (1..=n).map(|i| QMatrix::zeros(dims[(i + n - 2) % n], dims[i - 1])).collect();
        Self::new(dims, maps)
    }

    pub fn n(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Vertex index in `1..=n` of an arbitrary integer index.
    pub fn wrap(&self, i: i64) -> usize {
        ((i - 1).rem_euclid(self.n() as i64) + 1) as usize
    }

    pub fn dim(&self, i: i64) -> usize {
        self.dims[self.wrap(i) - 1]
    }

    /// `A_i`, indices mod `n`.
    pub fn map(&self, i: i64) -> &QMatrix {
        &self.maps[self.wrap(i) - 1]
    }

    /// `A_j^[k]` as a direct left-to-right product; `k = 0` is the identity.
    pub fn chain_product(&self, j: i64, k: usize) -> QMatrix {
        let mut acc = QMatrix::identity(self.dim(j - k as i64));
        for m in (j - k as i64 + 1)..=j {
            acc = acc.try_mul(self.map(m)).expect("shapes chain cyclically");
        }
        acc
    }

    /// The loop `A_j^[n]` at vertex `j`.
    pub fn cyclic_composite(&self, j: usize) -> QMatrix {
        self.chain_product(j as i64, self.n())
    }

    pub fn is_nilpotent(&self, mode: NilpotencyMode) -> bool {
        (1..=self.n()).all(|j| {
            let c = self.cyclic_composite(j);
            match mode {
                NilpotencyMode::Composite => c.is_nilpotent().expect("composite is square"),
                NilpotencyMode::Vanishing => c.is_zero(),
            }
        })
    }

    /// Base change by `g_i in GL(V_i)`: `A_i -> g_{i-1} A_i g_i^-1`.
    pub fn base_change(&self, g: &[QMatrix]) -> Result<CyclicQuiverRep, LusztigError> {
        if g.len() != self.n() {
            return Err(LusztigError::MapCount { expected: self.n(), got: g.len() });
        }
        let inv = g
            .iter()
            .map(|m| m.inverse().map_err(|_| LusztigError::NotInvertible))
            .collect::<Result<Vec<_>, _>>()?;
        let n = self.n();
        let maps = (1..=n)
            .map(|i| {
                let prev = (i + n - 2) % n;
                g[prev].try_mul(&self.maps[i - 1])?.try_mul(&inv[i - 1])
            })
            .collect::<Result<Vec<_>, _>>()?;
        CyclicQuiverRep::new(self.dims.clone(), maps)
    }

    fn offsets(&self) -> Vec<usize> {
        let mut off = vec![0; self.n() + 1];
        for i in 0..self.n() {
            off[i + 1] = off[i] + self.dims[i];
        }
        off
    }
}

pub fn is_nilpotent_rep(rep: &CyclicQuiverRep) -> bool {
    rep.is_nilpotent(NilpotencyMode::default())
}

fn put_block(m: &mut LaurentMatrix, r0: usize, c0: usize, block: &QMatrix, exp: i64) {
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            let v = block.get(r, c);
            if !num::Zero::is_zero(v) {
                let cur = m.get(r0 + r, c0 + c).clone();
                let add = Series::monomial(v.clone(), exp, m.precision());
                m.set(r0 + r, c0 + c, &cur + &add);
            }
        }
    }
}

/// Block matrix on `V_1 + ... + V_n`: block `(i-1, i)` holds `A_i`, block
/// `(n, 1)` holds `A_1`, and `A_n` carries the factor `x^-1`. For `n = 1`
/// this is `x^-1 A_1`.
pub fn big_matrix(rep: &CyclicQuiverRep, precision: i64) -> LaurentMatrix {
    let n = rep.n();
    let off = rep.offsets();
    let total = rep.total_dim();
    let mut m = LaurentMatrix::zeros(total, total, precision);
    for i in 1..=n {
        let row_vertex = rep.wrap(i as i64 - 1);
        let exp = if i == n { -1 } else { 0 };
        put_block(&mut m, off[row_vertex - 1], off[i - 1], &rep.maps[i - 1], exp);
    }
    m
}

/// Whether [`big_matrix`] is nilpotent over `Q((x))`. Its entries are
/// polynomials in `x^-1`, hence so are those of its powers, and a power known
/// modulo a positive power of `x` is known exactly.
pub fn big_matrix_is_nilpotent(rep: &CyclicQuiverRep, precision: i64) -> Result<bool, LusztigError> {
    let m = big_matrix(rep, precision);
    let p = m.pow(m.rows() as u32)?;
    if p.precision() <= 0 {
        return Err(LusztigError::PrecisionExhausted);
    }
    Ok(p.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaLattice {
    /// Vertex `j` whose column carries the chain `A_j^[k]`.
    pub vertex: usize,
    /// Largest `k` with `A_j^[k] != 0`.
    pub depth: usize,
    pub basis: LatticeBasis,
}

/// For each vertex `j`, the lattice whose `V_j` columns stack
/// `I, A_j, A_j^[2], ...` (block `A_j^[k]` sits at position `j - 1 - k`,
/// folded with `x^floor((j-1-k)/n)`), with standard columns `x I` on blocks
/// before `j` and `I` on blocks after it.
pub fn lambda_lattices(rep: &CyclicQuiverRep, precision: i64) -> Result<Vec<LambdaLattice>, LusztigError> {
    if !is_nilpotent_rep(rep) {
        return Err(LusztigError::RepNotNilpotent);
    }
    let n = rep.n();
    let nn = n as i64;
    let off = rep.offsets();
    let total = rep.total_dim();
    let mut out = Vec::with_capacity(n);
    for j in 1..=n {
        let mut m = LaurentMatrix::zeros(total, total, precision);
        for i in 1..=n {
            let exp = i64::from(i < j);
            put_block(&mut m, off[i - 1], off[i - 1], &QMatrix::identity(rep.dims[i - 1]), exp);
        }
        let mut chain = QMatrix::identity(rep.dims[j - 1]);
        let mut depth = 0;
        let limit = n * (total + 1);
        for k in 1..=limit {
            let next_map = rep.map(j as i64 - k as i64 + 1);
            chain = next_map.try_mul(&chain)?;
            if chain.is_zero() {
                break;
            }
            depth = k;
            let pos = j as i64 - 1 - k as i64;
            let block = pos.rem_euclid(nn) as usize;
            put_block(&mut m, off[block], off[j - 1], &chain, pos.div_euclid(nn));
        }
        out.push(LambdaLattice { vertex: j, depth, basis: LatticeBasis::new(m)? });
    }
    Ok(out)
}

/// Block upper triangular pattern of a composition: 0 on and below the
/// diagonal blocks, 1 above them.
pub fn partial_flag_type(n: usize, parts: &[usize]) -> Result<ValuationPattern, LusztigError> {
    if n == 0 || parts.contains(&0) || parts.iter().sum::<usize>() != n {
        return Err(LusztigError::BadComposition { n, parts: parts.to_vec() });
    }
    let block_of: Vec<usize> =
        parts.iter().enumerate().flat_map(|(b, &len)| std::iter::repeat_n(b, len)).collect();
    Ok(ValuationPattern::from_fn(n, n, |p, q| i64::from(block_of[p] < block_of[q])))
}
