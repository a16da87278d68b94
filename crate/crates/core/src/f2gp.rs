//! Reduced words of the free group on `x, y` that survive modulo `xy` and
//! `yx`, their binary encoding and order, string modules given by
//! zig-zags, and the `sl_2` action on `Sym^n(Q^2)`.
//!
//! Words are written as in the path algebra and read right to left: the
//! rightmost letter is the first step away from the base point, and `x w`
//! extends `w` by one more step.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{rat, QMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("word is not reduced at position {0}")]
    NotReduced(usize),
    #[error("word mixes rightward and leftward letters and is zero modulo xy, yx")]
    ZeroInQuotient,
    #[error("cannot parse word {0:?}")]
    Parse(String),
    #[error("malformed zig-zag {0:?}")]
    BadZigzag(String),
    #[error("invalid encoding: {0}")]
    Encoding(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    X,
    Y,
    XInv,
    YInv,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::X => Letter::XInv,
            Letter::XInv => Letter::X,
            Letter::Y => Letter::YInv,
            Letter::YInv => Letter::Y,
        }
    }

    fn base(self) -> char {
        match self {
            Letter::X | Letter::XInv => 'x',
            Letter::Y | Letter::YInv => 'y',
        }
    }

    fn sign(self) -> i64 {
        match self {
            Letter::X | Letter::Y => 1,
            Letter::XInv | Letter::YInv => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Letters from `{x, y^-1}`.
    Right,
    /// Letters from `{x^-1, y}`.
    Left,
    Empty,
}

/// Parses caret notation such as `x^2*y^-3*x^3*y^-2`; `e`, `1` and the empty
/// string give the empty word. No reduction is performed.
pub fn parse_letters(s: &str) -> Result<Vec<Letter>, WordError> {
    let t = s.trim();
    if t.is_empty() || t == "e" || t == "1" {
        return Ok(Vec::new());
    }
    let bad = || WordError::Parse(s.to_string());
    let mut out = Vec::new();
    for factor in t.split('*') {
        let f = factor.trim();
        let mut chars = f.chars();
        let base = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str().trim();
        let exp: i64 = if rest.is_empty() {
            1
        } else {
            let e = rest.strip_prefix('^').ok_or_else(bad)?.trim();
            let e = e.strip_prefix('(').and_then(|v| v.strip_suffix(')')).unwrap_or(e);
            e.trim().parse().map_err(|_| bad())?
        };
        let letter = match (base, exp > 0) {
            ('x', true) => Letter::X,
            ('x', false) => Letter::XInv,
            ('y', true) => Letter::Y,
            ('y', false) => Letter::YInv,
            _ => return Err(bad()),
        };
        out.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
    }
    Ok(out)
}

/// A reduced word that is nonzero modulo `xy`, `yx`, stored as runs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    runs: Vec<(Letter, usize)>,
    direction: Direction,
}

impl ReducedWord {
    pub fn empty() -> Self {
        ReducedWord { runs: Vec::new(), direction: Direction::Empty }
    }

    /// Rejects `a a^-1` first, then words mixing the two alphabets.
    pub fn new(letters: &[Letter]) -> Result<Self, WordError> {
        if let Some(i) = letters.windows(2).position(|w| w[1] == w[0].inverse()) {
            return Err(WordError::NotReduced(i + 1));
        }
        let right = letters.iter().all(|l| matches!(l, Letter::X | Letter::YInv));
        let left = letters.iter().all(|l| matches!(l, Letter::XInv | Letter::Y));
        let direction = match (letters.is_empty(), right, left) {
            (true, _, _) => Direction::Empty,
            (false, true, _) => Direction::Right,
            (false, _, true) => Direction::Left,
            _ => return Err(WordError::ZeroInQuotient),
        };
        let mut runs: Vec<(Letter, usize)> = Vec::new();
        for &l in letters {
            match runs.last_mut() {
                Some((last, count)) if *last == l => *count += 1,
                _ => runs.push((l, 1)),
            }
        }
        Ok(ReducedWord { runs, direction })
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn runs(&self) -> &[(Letter, usize)] {
        &self.runs
    }

    pub fn len(&self) -> usize {
        self.runs.iter().map(|r| r.1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Letters as written, left to right.
    pub fn letters(&self) -> Vec<Letter> {
        self.runs.iter().flat_map(|&(l, k)| std::iter::repeat_n(l, k)).collect()
    }

    /// `letter` followed by `self` in writing order, i.e. one step further
    /// from the base point.
    pub fn extend(&self, letter: Letter) -> Result<ReducedWord, WordError> {
        let mut ls = vec![letter];
        ls.extend(self.letters());
        ReducedWord::new(&ls)
    }

    /// Position of the word in the order: one rank per step, starting from
    /// the base point, padded by zeros.
    fn ranks(&self) -> Vec<i8> {
        let letters = self.letters();
        letters
            .iter()
            .rev()
            .enumerate()
            .map(|(k, l)| match (k, l) {
                (0, Letter::Y) => -2,
                (0, Letter::X) => -1,
                (0, Letter::XInv) => 1,
                (0, Letter::YInv) => 2,
                (_, Letter::X | Letter::Y) => -1,
                (_, Letter::XInv | Letter::YInv) => 1,
            })
            .collect()
    }
}

impl FromStr for ReducedWord {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ReducedWord::new(&parse_letters(s)?)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self
            .runs
            .iter()
            .map(|&(l, k)| {
                let e = l.sign() * k as i64;
                if e == 1 {
                    l.base().to_string()
                } else {
                    format!("{}^{}", l.base(), e)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl Serialize for ReducedWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ReducedWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Binary string in one of two copies of Cantor space; `copy` is `None` for
/// the empty word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Encoding {
    pub bits: String,
    pub copy: Option<u8>,
}

impl fmt::Display for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.copy {
            Some(c) => write!(f, "{} (copy {})", self.bits, c),
            None => write!(f, "(empty)"),
        }
    }
}

/// Rightward: `x -> 1`, `y^-1 -> 0`, copy 2. Leftward: `x^-1 -> 1`,
/// `y -> 0`, copy 1.
pub fn encode(w: &ReducedWord) -> Encoding {
    let bits = w
        .letters()
        .iter()
        .map(|l| match l {
            Letter::X | Letter::XInv => '1',
            Letter::Y | Letter::YInv => '0',
        })
        .collect();
    let copy = match w.direction {
        Direction::Right => Some(2),
        Direction::Left => Some(1),
        Direction::Empty => None,
    };
    Encoding { bits, copy }
}

pub fn decode(e: &Encoding) -> Result<ReducedWord, WordError> {
    let (one, zero) = match (e.copy, e.bits.is_empty()) {
        (None, true) => return Ok(ReducedWord::empty()),
        (Some(2), false) => (Letter::X, Letter::YInv),
        (Some(1), false) => (Letter::XInv, Letter::Y),
        _ => return Err(WordError::Encoding(format!("{e:?}"))),
    };
    let letters = e
        .bits
        .chars()
        .map(|c| match c {
            '1' => Ok(one),
            '0' => Ok(zero),
            _ => Err(WordError::Encoding(e.bits.clone())),
        })
        .collect::<Result<Vec<_>, _>>()?;
    ReducedWord::new(&letters)
}

/// `y < x < e < x^-1 < y^-1` on first steps; below a rightward word
/// `x w < w < y^-1 w`, below a leftward word `y w < w < x^-1 w`.
pub fn compare(w1: &ReducedWord, w2: &ReducedWord) -> Ordering {
    let (a, b) = (w1.ranks(), w2.ranks());
    for k in 0..a.len().max(b.len()) {
        let ra = a.get(k).copied().unwrap_or(0);
        let rb = b.get(k).copied().unwrap_or(0);
        match ra.cmp(&rb) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

impl PartialOrd for ReducedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ReducedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(self, other)
    }
}

/// Every nonzero reduced word with at most `max_len` letters.
pub fn enumerate_words(max_len: usize) -> Vec<ReducedWord> {
    let mut out = vec![ReducedWord::empty()];
    for (one, zero) in [(Letter::X, Letter::YInv), (Letter::XInv, Letter::Y)] {
        for len in 1..=max_len {
            for mask in 0u64..(1 << len) {
                let letters: Vec<Letter> =
                    (0..len).map(|i| if mask >> i & 1 == 1 { one } else { zero }).collect();
                out.push(ReducedWord::new(&letters).expect("single-alphabet words are reduced"));
            }
        }
    }
    out
}

/// Step of a zig-zag: an `x` step goes forward along `X`, a `y` step goes
/// backward along `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Step {
    X,
    Y,
}

/// The string module of a zig-zag: basis `v_0..v_m`, step `t` joins
/// `v_{t-1}` and `v_t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringModule {
    pub steps: Vec<Step>,
    pub dim: usize,
    pub x: QMatrix,
    pub y: QMatrix,
}

/// Parses a zig-zag such as `xy`, `x^2*y^3*x` or the empty string.
pub fn parse_zigzag(s: &str) -> Result<Vec<Step>, WordError> {
    let t = s.trim();
    if !t.contains(['*', '^']) {
        return t
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'x' => Ok(Step::X),
                'y' => Ok(Step::Y),
                _ => Err(WordError::BadZigzag(s.to_string())),
            })
            .collect();
    }
    let letters = parse_letters(t).map_err(|_| WordError::BadZigzag(s.to_string()))?;
    letters
        .into_iter()
        .map(|l| match l {
            Letter::X => Ok(Step::X),
            Letter::Y => Ok(Step::Y),
            _ => Err(WordError::BadZigzag(s.to_string())),
        })
        .collect()
}

impl StringModule {
    pub fn from_steps(steps: &[Step]) -> StringModule {
        let dim = steps.len() + 1;
        let mut x = QMatrix::zeros(dim, dim);
        let mut y = QMatrix::zeros(dim, dim);
        for (k, s) in steps.iter().enumerate() {
            let t = k + 1;
            match s {
                Step::X => x.set(t, t - 1, rat(1)),
                Step::Y => y.set(t - 1, t, rat(1)),
            }
        }
        StringModule { steps: steps.to_vec(), dim, x, y }
    }

    /// Walks a reduced word from the base point: `x`, `y^-1` steps are read
    /// as in a zig-zag, and leftward letters run the same arrows backwards.
    pub fn from_word(w: &ReducedWord) -> StringModule {
        let letters: Vec<Letter> = w.letters().into_iter().rev().collect();
        let dim = letters.len() + 1;
        let mut x = QMatrix::zeros(dim, dim);
        let mut y = QMatrix::zeros(dim, dim);
        let mut steps = Vec::with_capacity(letters.len());
        for (k, l) in letters.iter().enumerate() {
            let t = k + 1;
            match l {
                Letter::X => x.set(t, t - 1, rat(1)),
                Letter::XInv => x.set(t - 1, t, rat(1)),
                Letter::YInv => y.set(t - 1, t, rat(1)),
                Letter::Y => y.set(t, t - 1, rat(1)),
            }
            steps.push(if l.base() == 'x' { Step::X } else { Step::Y });
        }
        StringModule { steps, dim, x, y }
    }

    /// Basis vectors killed by both `X` and `Y`.
    pub fn sinks(&self) -> usize {
        (0..self.dim)
            .filter(|&c| (0..self.dim).all(|r| num::Zero::is_zero(self.x.get(r, c)) && num::Zero::is_zero(self.y.get(r, c))))
            .count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sl2Rep {
    pub n: usize,
    pub x: QMatrix,
    pub y: QMatrix,
    pub h: QMatrix,
}

/// Derivations `x d/dy`, `y d/dx` and `x d/dx - y d/dy` on the monomials
/// `x^n, x^(n-1) y, .., y^n`.
pub fn sym_rep(n: usize) -> Sl2Rep {
    let d = n + 1;
    let mut x = QMatrix::zeros(d, d);
    let mut y = QMatrix::zeros(d, d);
    let mut h = QMatrix::zeros(d, d);
    for i in 0..d {
        let (a, b) = ((n - i) as i64, i as i64);
        h.set(i, i, rat(a - b));
        if b > 0 {
            x.set(i - 1, i, rat(b));
        }
        if a > 0 {
            y.set(i + 1, i, rat(a));
        }
    }
    Sl2Rep { n, x, y, h }
}

impl Sl2Rep {
    /// `[X, Y] = H`, `[H, X] = 2X`, `[H, Y] = -2Y`.
    pub fn commutators_hold(&self) -> bool {
        let two = rat(2);
        let xy = self.x.commutator(&self.y).expect("square");
        let hx = self.h.commutator(&self.x).expect("square");
        let hy = self.h.commutator(&self.y).expect("square");
        xy == self.h && hx == self.x.scale(&two) && hy == self.y.scale(&-two)
    }

    pub fn weights(&self) -> Vec<i64> {
        (0..=self.n).map(|i| self.n as i64 - 2 * i as i64).collect()
    }
}
