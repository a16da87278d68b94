//! The medial quiver of a constellation, its length-two relations, the
//! surface-algebra axioms, and truncated arithmetic in `kQ/I`.
//!
//! Arrows are named by half-edges. Arrow `e` runs from the vertex (edge)
//! containing `e` to the vertex containing `sigma(e)`, so loops of the
//! underlying graph need no special casing.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};
use std::hash::{Hash, Hasher};

use num::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::permgroup::{Constellation, PermError};
use crate::rational::Rational;

pub const DEFAULT_TRUNCATION: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error(transparent)]
    Constellation(#[from] PermError),
    #[error("surface axioms fail: {0}")]
    Axioms(AxiomReport),
    #[error("path vectors belong to different algebras")]
    Mismatch,
    #[error("unknown arrow {0}")]
    UnknownArrow(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("arrows {0} and {1} are not composable")]
    NotComposable(usize, usize),
    #[error("cycle tag {0} does not carry exactly one nonzero cycle")]
    TagCycle(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    /// The half-edges `{e, alpha(e)}` of the edge this vertex stands for;
    /// empty for quivers not built from a constellation.
    pub half_edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub id: usize,
    pub tail: usize,
    pub head: usize,
    /// 1-based index of the sigma-cycle the arrow traverses.
    pub cycle_tag: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<Arrow>,
}

/// `(a, b)` in `forbidden_pairs` means the composite `b a` (first `a`, then
/// `b`) lies in the ideal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelationIdeal {
    pub forbidden_pairs: BTreeSet<(usize, usize)>,
}

impl RelationIdeal {
    pub fn contains(&self, first: usize, then: usize) -> bool {
        self.forbidden_pairs.contains(&(first, then))
    }
}

impl Quiver {
    pub fn arrow(&self, id: usize) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.id == id)
    }

    fn arrow_map(&self) -> HashMap<usize, &Arrow> {
        self.arrows.iter().map(|a| (a.id, a)).collect()
    }

    pub fn has_vertex(&self, v: usize) -> bool {
        self.vertices.iter().any(|x| x.id == v)
    }

    fn vertex_label(&self, v: usize) -> String {
        match self.vertices.iter().find(|x| x.id == v) {
            Some(x) if !x.half_edges.is_empty() => {
                let parts: Vec<String> = x.half_edges.iter().map(ToString::to_string).collect();
                format!("{{{}}}", parts.join(", "))
            }
            _ => format!("v{v}"),
        }
    }

    /// DOT rendering: arrows in half-edge order, colored by cycle tag,
    /// relations listed as comments.
    pub fn to_dot(&self, ideal: &RelationIdeal) -> String {
        const PALETTE: [&str; 8] =
            ["blue", "red", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"];
        let mut out = String::from("digraph medial {\n");
        for (a, b) in &ideal.forbidden_pairs {
            let _ = writeln!(out, "  // relation: {b} after {a} lies in I");
        }
        for v in &self.vertices {
            let _ = writeln!(out, "  v{} [label=\"{}\"];", v.id, self.vertex_label(v.id));
        }
        let mut arrows: Vec<&Arrow> = self.arrows.iter().collect();
        arrows.sort_by_key(|a| a.id);
        for a in arrows {
            let color = PALETTE[(a.cycle_tag + PALETTE.len() - 1) % PALETTE.len()];
            let _ = writeln!(
                out,
                "  v{} -> v{} [label=\"{}\", color=\"{}\"];",
                a.tail, a.head, a.id, color
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Medial quiver and its gentle ideal. Vertex `k` is the `k`-th alpha-pair
/// ordered by smaller half-edge; arrow `e` has tag `i` when `e` lies in the
/// `i`-th canonical sigma-cycle. The only nonzero continuation of arrow `e`
/// is arrow `sigma(e)`; the other arrow leaving the same vertex,
/// `alpha(sigma(e))`, composes to zero.
pub fn medial_quiver(c: &Constellation) -> Result<(Quiver, RelationIdeal), QuiverError> {
    c.ensure_valid()?;
    let n = c.degree();
    let (sigma, alpha) = (c.sigma(), c.alpha());
    let pairs: Vec<Vec<usize>> = alpha.cycles();
    let mut vertex_of = vec![0; n];
    for (k, pair) in pairs.iter().enumerate() {
        for &e in pair {
            vertex_of[e - 1] = k;
        }
    }
    let slots = sigma.cycle_slots();
    let vertices = pairs
        .into_iter()
        .enumerate()
        .map(|(id, half_edges)| Vertex { id, half_edges })
        .collect();
    let arrows = (1..=n)
        .map(|e| Arrow {
            id: e,
            tail: vertex_of[e - 1],
            head: vertex_of[sigma.apply(e) - 1],
            cycle_tag: slots[e - 1].0 + 1,
        })
        .collect();
    let forbidden_pairs = (1..=n).map(|e| (e, alpha.apply(sigma.apply(e)))).collect();
    Ok((Quiver { vertices, arrows }, RelationIdeal { forbidden_pairs }))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AxiomReport {
    pub regular_degrees: bool,
    pub one_zero_companion: bool,
    pub one_nonzero_companion: bool,
    pub length_two_relations: bool,
    pub all: bool,
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "axiom1(degrees)={} axiom2(zero companions)={} axiom3(nonzero companions)={} axiom4(length two)={}",
            self.regular_degrees,
            self.one_zero_companion,
            self.one_nonzero_companion,
            self.length_two_relations
        )
    }
}

/// Scans the four defining conditions of a surface algebra.
pub fn check_surface_axioms(q: &Quiver, ideal: &RelationIdeal) -> AxiomReport {
    let arrows = q.arrow_map();
    let mut indeg: HashMap<usize, usize> = HashMap::new();
    let mut outdeg: HashMap<usize, usize> = HashMap::new();
    for a in &q.arrows {
        *outdeg.entry(a.tail).or_default() += 1;
        *indeg.entry(a.head).or_default() += 1;
    }
    let regular_degrees = q.vertices.iter().all(|v| {
        indeg.get(&v.id).copied().unwrap_or(0) == 2 && outdeg.get(&v.id).copied().unwrap_or(0) == 2
    });

    let count = |a: &Arrow, after: bool, in_ideal: bool| {
        q.arrows
            .iter()
            .filter(|b| if after { a.head == b.tail } else { b.head == a.tail })
            .filter(|b| {
                let pair = if after { (a.id, b.id) } else { (b.id, a.id) };
                ideal.forbidden_pairs.contains(&pair) == in_ideal
            })
            .count()
    };
    let one_zero_companion = q.arrows.iter().all(|a| count(a, true, true) == 1 && count(a, false, true) == 1);
    let one_nonzero_companion =
        q.arrows.iter().all(|a| count(a, true, false) == 1 && count(a, false, false) == 1);

    let length_two_relations = ideal.forbidden_pairs.iter().all(|(a, b)| {
        matches!((arrows.get(a), arrows.get(b)), (Some(x), Some(y)) if x.head == y.tail)
    });

    AxiomReport {
        regular_degrees,
        one_zero_companion,
        one_nonzero_companion,
        length_two_relations,
        all: regular_degrees && one_zero_companion && one_nonzero_companion && length_two_relations,
    }
}

/// For each cycle tag, the length of the nonzero oriented cycle formed by
/// arrows of that tag.
pub fn nonzero_cycle_lengths(
    q: &Quiver,
    ideal: &RelationIdeal,
) -> Result<BTreeMap<usize, usize>, QuiverError> {
    let report = check_surface_axioms(q, ideal);
    if !report.all {
        return Err(QuiverError::Axioms(report));
    }
    let arrows = q.arrow_map();
    let succ: HashMap<usize, usize> = q
        .arrows
        .iter()
        .map(|a| {
            let b = q
                .arrows
                .iter()
                .find(|b| b.tail == a.head && !ideal.contains(a.id, b.id))
                .expect("axiom 3 gives a nonzero successor");
            (a.id, b.id)
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut found: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut ids: Vec<usize> = q.arrows.iter().map(|a| a.id).collect();
    ids.sort_unstable();
    for start in ids {
        if seen.contains(&start) {
            continue;
        }
        let mut cycle = vec![start];
        seen.insert(start);
        let mut cur = succ[&start];
        while cur != start {
            seen.insert(cur);
            cycle.push(cur);
            cur = succ[&cur];
        }
        let tag = arrows[&start].cycle_tag;
        if cycle.iter().all(|id| arrows[id].cycle_tag == tag) {
            found.entry(tag).or_default().push(cycle.len());
        }
    }
    let tags: BTreeSet<usize> = q.arrows.iter().map(|a| a.cycle_tag).collect();
    tags.into_iter()
        .map(|t| match found.get(&t).map(Vec::as_slice) {
            Some([len]) => Ok((t, *len)),
            _ => Err(QuiverError::TagCycle(t)),
        })
        .collect()
}

/// A path given by its start vertex and its arrows in traversal order. No
/// arrows means the trivial path at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn length(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Finite linear combination of nonzero paths, truncated at a maximum
/// length. `truncated` records that some longer term was discarded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathVector {
    terms: BTreeMap<Path, Rational>,
    truncation: usize,
    truncated: bool,
    algebra: u64,
}

impl PathVector {
    pub fn terms(&self) -> &BTreeMap<Path, Rational> {
        &self.terms
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Path) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }
}

/// `kQ/I` with its relations stored as forbidden pairs, truncated at
/// `truncation` arrows.
#[derive(Clone, Debug)]
pub struct PathAlgebra {
    quiver: Quiver,
    ideal: RelationIdeal,
    truncation: usize,
    fingerprint: u64,
}

impl PathAlgebra {
    pub fn new(quiver: Quiver, ideal: RelationIdeal, truncation: usize) -> Self {
        let mut h = DefaultHasher::new();
        quiver.hash(&mut h);
        ideal.hash(&mut h);
        truncation.hash(&mut h);
        PathAlgebra { quiver, ideal, truncation, fingerprint: h.finish() }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn ideal(&self) -> &RelationIdeal {
        &self.ideal
    }

    fn empty(&self) -> PathVector {
        PathVector {
            terms: BTreeMap::new(),
            truncation: self.truncation,
            truncated: false,
            algebra: self.fingerprint,
        }
    }

    pub fn zero(&self) -> PathVector {
        self.empty()
    }

    pub fn trivial(&self, v: usize) -> Result<PathVector, QuiverError> {
        if !self.quiver.has_vertex(v) {
            return Err(QuiverError::UnknownVertex(v));
        }
        let mut out = self.empty();
        out.terms.insert(Path { start: v, arrows: vec![] }, Rational::from_integer(1.into()));
        Ok(out)
    }

    /// The path traversing `arrows` in order; zero if it passes through a
    /// relation.
    pub fn path(&self, arrows: &[usize]) -> Result<PathVector, QuiverError> {
        let map = self.quiver.arrow_map();
        let first = *arrows.first().ok_or(QuiverError::UnknownArrow(0))?;
        let start = map.get(&first).ok_or(QuiverError::UnknownArrow(first))?.tail;
        for w in arrows.windows(2) {
            let a = map.get(&w[0]).ok_or(QuiverError::UnknownArrow(w[0]))?;
            let b = map.get(&w[1]).ok_or(QuiverError::UnknownArrow(w[1]))?;
            if a.head != b.tail {
                return Err(QuiverError::NotComposable(a.id, b.id));
            }
        }
        if let Some(&last) = arrows.last() {
            map.get(&last).ok_or(QuiverError::UnknownArrow(last))?;
        }
        let mut out = self.empty();
        if arrows.windows(2).any(|w| self.ideal.contains(w[0], w[1])) {
            return Ok(out);
        }
        if arrows.len() > self.truncation {
            out.truncated = true;
            return Ok(out);
        }
        out.terms.insert(Path { start, arrows: arrows.to_vec() }, Rational::from_integer(1.into()));
        Ok(out)
    }

    fn end_of(&self, p: &Path) -> usize {
        p.arrows.last().and_then(|id| self.quiver.arrow(*id)).map_or(p.start, |a| a.head)
    }

    fn check(&self, v: &PathVector) -> Result<(), QuiverError> {
        if v.algebra == self.fingerprint {
            Ok(())
        } else {
            Err(QuiverError::Mismatch)
        }
    }

    pub fn add(&self, p: &PathVector, q: &PathVector) -> Result<PathVector, QuiverError> {
        self.check(p)?;
        self.check(q)?;
        let mut out = p.clone();
        out.truncated |= q.truncated;
        for (path, c) in &q.terms {
            let e = out.terms.entry(path.clone()).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                out.terms.remove(path);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, p: &PathVector, k: &Rational) -> PathVector {
        let mut out = p.clone();
        if k.is_zero() {
            out.terms.clear();
        } else {
            out.terms.values_mut().for_each(|c| *c *= k);
        }
        out
    }

    /// The algebra element `q p`: each path of `p` followed by each path of
    /// `q`. Non-composable pairs and pairs meeting a relation at the joint
    /// contribute nothing; products longer than the truncation are dropped
    /// and flagged.
    pub fn multiply(&self, p: &PathVector, q: &PathVector) -> Result<PathVector, QuiverError> {
        self.check(p)?;
        self.check(q)?;
        let mut out = self.empty();
        out.truncated = p.truncated || q.truncated;
        for (pp, pc) in &p.terms {
            let end = self.end_of(pp);
            for (qp, qc) in &q.terms {
                if qp.start != end {
                    continue;
                }
                if let (Some(&a), Some(&b)) = (pp.arrows.last(), qp.arrows.first()) {
                    if self.ideal.contains(a, b) {
                        continue;
                    }
                }
                if pp.length() + qp.length() > self.truncation {
                    out.truncated = true;
                    continue;
                }
                let mut arrows = pp.arrows.clone();
                arrows.extend_from_slice(&qp.arrows);
                let key = Path { start: pp.start, arrows };
                let e = out.terms.entry(key.clone()).or_insert_with(Rational::zero);
                *e += pc * qc;
                if e.is_zero() {
                    out.terms.remove(&key);
                }
            }
        }
        Ok(out)
    }
}
