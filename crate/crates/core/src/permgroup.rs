//! Permutations of `{1..n}`, constellations `[sigma, alpha, phi]`, and the
//! surface data they determine.
//!
//! Permutations act on the left: `compose(p, q)(i) = p(q(i))`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Cycle = Vec<usize>;

pub const DEFAULT_MONODROMY_CAP: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("point {point} outside 1..={degree}")]
    OutOfRange { point: usize, degree: usize },
    #[error("point {0} appears twice")]
    Repeated(usize),
    #[error("invalid constellation: {0}")]
    Invalid(ValidationReport),
    #[error("odd Euler characteristic {0}")]
    OddEuler(i64),
    #[error("degree {0} is odd; half-edges come in pairs")]
    OddDegree(usize),
    #[error("cannot parse cycle notation {0:?}")]
    Parse(String),
}

/// One-line notation, 1-based: `images[i - 1] = p(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        if n == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n {
                return Err(PermError::OutOfRange { point: v, degree: n });
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(PermError::Repeated(v));
            }
        }
        Ok(Permutation { images })
    }

    /// Cycles need not be disjoint-checked by the caller; points not listed
    /// are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Cycle]) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut images: Vec<usize> = (1..=degree).collect();
        let mut seen = vec![false; degree];
        for cyc in cycles {
            for (k, &p) in cyc.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(PermError::OutOfRange { point: p, degree });
                }
                if std::mem::replace(&mut seen[p - 1], true) {
                    return Err(PermError::Repeated(p));
                }
                images[p - 1] = cyc[(k + 1) % cyc.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses `(1,2,3)(4,5)`; `()` or an empty string is the identity.
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Self, PermError> {
        let bad = || PermError::Parse(s.to_string());
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let inner_end = rest.find(')').ok_or_else(bad)?;
            let inner = rest.strip_prefix('(').ok_or_else(bad)?;
            let body = &inner[..inner_end - 1];
            if !body.trim().is_empty() {
                let cyc = body
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<Cycle, _>>()?;
                cycles.push(cyc);
            }
            rest = rest[inner_end + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `self` after `q`: `i -> self(q(i))`.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != q.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), q.degree()));
        }
        Ok(Permutation { images: q.images.iter().map(|&j| self.images[j - 1]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Disjoint cycles, each starting at its minimum, listed by minimum;
    /// fixed points appear as 1-cycles.
    pub fn cycles(&self) -> Vec<Cycle> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start - 1] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p - 1] = true;
                cyc.push(p);
                p = self.apply(p);
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// For each point `i`, `(cycle index, position)` within [`Self::cycles`],
    /// both 0-based, indexed by `i - 1`.
    pub fn cycle_slots(&self) -> Vec<(usize, usize)> {
        let mut slots = vec![(0, 0); self.degree()];
        for (ci, cyc) in self.cycles().iter().enumerate() {
            for (pos, &p) in cyc.iter().enumerate() {
                slots[p - 1] = (ci, pos);
            }
        }
        slots
    }

    pub fn is_fixed_point_free_involution(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v != i + 1 && self.images[v - 1] == i + 1)
    }

    pub fn random<R: Rng + ?Sized>(degree: usize, rng: &mut R) -> Permutation {
        let mut images: Vec<usize> = (1..=degree).collect();
        images.shuffle(rng);
        Permutation { images }
    }

    /// A uniformly random perfect matching on `{1..degree}`, `degree` even.
    pub fn random_fpf_involution<R: Rng + ?Sized>(degree: usize, rng: &mut R) -> Permutation {
        let mut pts: Vec<usize> = (1..=degree).collect();
        pts.shuffle(rng);
        let mut images = vec![0; degree];
        for pair in pts.chunks(2) {
            images[pair[0] - 1] = pair[1];
            images[pair[1] - 1] = pair[0];
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<Cycle> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", body.join(","))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub transitive: bool,
    pub product_identity: bool,
    pub alpha_involution_fpf: bool,
    pub valid: bool,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "transitive={} product_identity={} alpha_involution_fpf={}",
            self.transitive, self.product_identity, self.alpha_involution_fpf
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceData {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    pub genus: u64,
    pub ramification_degrees: Vec<usize>,
}

impl fmt::Display for SurfaceData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ram: Vec<String> = self.ramification_degrees.iter().map(ToString::to_string).collect();
        writeln!(f, "V={}", self.vertices)?;
        writeln!(f, "E={}", self.edges)?;
        writeln!(f, "F={}", self.faces)?;
        writeln!(f, "chi={}", self.euler_characteristic)?;
        writeln!(f, "genus={}", self.genus)?;
        write!(f, "ramification=[{}]", ram.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonodromyOrder {
    Order(usize),
    Overflow,
}

/// `[sigma, alpha, phi]` on the half-edges `{1..degree}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constellation {
    sigma: Permutation,
    alpha: Permutation,
    phi: Permutation,
}

impl Constellation {
    /// Checks only that the degrees agree; see [`Constellation::validate`].
    pub fn new(sigma: Permutation, alpha: Permutation, phi: Permutation) -> Result<Self, PermError> {
        for p in [&alpha, &phi] {
            if p.degree() != sigma.degree() {
                return Err(PermError::DegreeMismatch(sigma.degree(), p.degree()));
            }
        }
        Ok(Constellation { sigma, alpha, phi })
    }

    /// Completes the triple with `phi = (sigma alpha)^-1`.
    pub fn from_sigma_alpha(sigma: Permutation, alpha: Permutation) -> Result<Self, PermError> {
        let phi = sigma.compose(&alpha)?.inverse();
        Self::new(sigma, alpha, phi)
    }

    pub fn from_cycles(
        degree: usize,
        sigma: &[Cycle],
        alpha: &[Cycle],
        phi: Option<&[Cycle]>,
    ) -> Result<Self, PermError> {
        let s = Permutation::from_cycles(degree, sigma)?;
        let a = Permutation::from_cycles(degree, alpha)?;
        match phi {
            Some(p) => Self::new(s, a, Permutation::from_cycles(degree, p)?),
            None => Self::from_sigma_alpha(s, a),
        }
    }

    /// A random valid constellation of even `degree`: `sigma` uniform,
    /// `alpha` a uniform perfect matching, resampled until transitive.
    pub fn random<R: Rng + ?Sized>(degree: usize, rng: &mut R) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        if degree % 2 == 1 {
            return Err(PermError::OddDegree(degree));
        }
        loop {
            let sigma = Permutation::random(degree, rng);
            let alpha = Permutation::random_fpf_involution(degree, rng);
            let c = Self::from_sigma_alpha(sigma, alpha)?;
            if c.is_transitive() {
                return Ok(c);
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.sigma.degree()
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    pub fn phi(&self) -> &Permutation {
        &self.phi
    }

    fn is_transitive(&self) -> bool {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut stack = vec![1];
        seen[0] = true;
        let mut count = 1;
        while let Some(p) = stack.pop() {
            for q in [self.sigma.apply(p), self.alpha.apply(p)] {
                if !seen[q - 1] {
                    seen[q - 1] = true;
                    count += 1;
                    stack.push(q);
                }
            }
        }
        count == n
    }

    pub fn validate(&self) -> ValidationReport {
        let transitive = self.is_transitive();
        let product_identity = self
            .sigma
            .compose(&self.alpha)
            .and_then(|sa| sa.compose(&self.phi))
            .is_ok_and(|p| p.is_identity());
        let alpha_involution_fpf = self.alpha.is_fixed_point_free_involution();
        ValidationReport {
            transitive,
            product_identity,
            alpha_involution_fpf,
            valid: transitive && product_identity && alpha_involution_fpf,
        }
    }

    pub fn ensure_valid(&self) -> Result<(), PermError> {
        let r = self.validate();
        if r.valid {
            Ok(())
        } else {
            Err(PermError::Invalid(r))
        }
    }

    pub fn surface_data(&self) -> Result<SurfaceData, PermError> {
        self.ensure_valid()?;
        let sigma_cycles = self.sigma.cycles();
        let vertices = sigma_cycles.len();
        let edges = self.degree() / 2;
        let faces = self.phi.cycles().len();
        let chi = vertices as i64 - edges as i64 + faces as i64;
        if chi % 2 != 0 {
            return Err(PermError::OddEuler(chi));
        }
        Ok(SurfaceData {
            vertices,
            edges,
            faces,
            euler_characteristic: chi,
            genus: ((2 - chi) / 2) as u64,
            ramification_degrees: sigma_cycles.iter().map(Vec::len).collect(),
        })
    }

    /// Order of `<sigma, alpha>` by breadth-first closure, giving up once
    /// more than `cap` elements have been generated.
    pub fn monodromy_order(&self, cap: usize) -> Result<MonodromyOrder, PermError> {
        self.ensure_valid()?;
        let gens = [&self.sigma, &self.alpha];
        let start = Permutation::identity(self.degree());
        let mut seen: HashSet<Permutation> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(g) = queue.pop_front() {
            for s in gens {
                let h = g.compose(s)?;
                if seen.insert(h.clone()) {
                    if seen.len() > cap {
                        return Ok(MonodromyOrder::Overflow);
                    }
                    queue.push_back(h);
                }
            }
        }
        Ok(MonodromyOrder::Order(seen.len()))
    }
}

#[derive(Serialize, Deserialize)]
struct ConstellationJson {
    degree: usize,
    sigma: Vec<Cycle>,
    alpha: Vec<Cycle>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phi: Option<Vec<Cycle>>,
}

fn nontrivial(p: &Permutation) -> Vec<Cycle> {
    p.cycles().into_iter().filter(|c| c.len() > 1).collect()
}

impl Serialize for Constellation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ConstellationJson {
            degree: self.degree(),
            sigma: nontrivial(&self.sigma),
            alpha: nontrivial(&self.alpha),
            phi: Some(nontrivial(&self.phi)),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Constellation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = ConstellationJson::deserialize(d)?;
        Constellation::from_cycles(raw.degree, &raw.sigma, &raw.alpha, raw.phi.as_deref())
            .map_err(serde::de::Error::custom)
    }
}

/// Fixtures used across tests, examples and benches.
pub mod fixtures {
    use super::Constellation;

    /// `sigma = (1,2)`, `alpha = (1,2)`, `phi = id`.
    pub fn trivial() -> Constellation {
        Constellation::from_cycles(2, &[vec![1, 2]], &[vec![1, 2]], Some(&[])).unwrap()
    }

    /// The single edge with two distinct endpoints: `sigma = id`,
    /// `alpha = phi = (1,2)`.
    pub fn segment() -> Constellation {
        Constellation::from_cycles(2, &[], &[vec![1, 2]], Some(&[vec![1, 2]])).unwrap()
    }

    /// `sigma = (1,2,3,4)`, `alpha = (1,3)(2,4)`, `phi = (1,2,3,4)`.
    pub fn torus() -> Constellation {
        Constellation::from_cycles(
            4,
            &[vec![1, 2, 3, 4]],
            &[vec![1, 3], vec![2, 4]],
            Some(&[vec![1, 2, 3, 4]]),
        )
        .unwrap()
    }
}
