//! Exact computations around permutation constellations: genus and
//! monodromy, the medial quiver with its gentle relations, glued hereditary
//! orders, affine permutations, lattices over `Q[[x]]`, Lusztig's embedding
//! of nilpotent representations, and the combinatorics of the free group
//! modulo `xy`, `yx`.

pub mod affine;
pub mod f2gp;
pub mod grassmann;
pub mod laurent;
pub mod lusztig;
pub mod order;
pub mod permgroup;
pub mod quiver;
pub mod rational;

pub use affine::AffinePermutation;
pub use f2gp::ReducedWord;
pub use grassmann::LatticeBasis;
pub use laurent::{LaurentError, LaurentMatrix, Series, DEFAULT_PRECISION};
pub use lusztig::CyclicQuiverRep;
pub use permgroup::{Constellation, Permutation};
pub use quiver::{PathAlgebra, Quiver};
pub use rational::{QMatrix, Rational};
