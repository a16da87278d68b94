use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::LaurentError;
use crate::rational::{parse_rational, Rational};

pub const DEFAULT_PRECISION: i64 = 16;

/// A Laurent series `sum c_k x^k` known modulo `x^precision`.
///
/// Stored normalized: `coeffs[0]` is nonzero, the last stored coefficient is
/// nonzero, and `lead + coeffs.len() <= precision`. The series that is zero
/// to the known precision has no coefficients and `lead == precision`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    lead: i64,
    coeffs: Vec<Rational>,
    precision: i64,
}

impl Series {
    pub fn new(lead: i64, coeffs: Vec<Rational>, precision: i64) -> Self {
        let mut s = Series { lead, coeffs, precision };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let keep = (self.precision - self.lead).clamp(0, self.coeffs.len() as i64) as usize;
        self.coeffs.truncate(keep);
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let skip = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if skip > 0 {
            self.coeffs.drain(..skip);
            self.lead += skip as i64;
        }
        if self.coeffs.is_empty() {
            self.lead = self.precision;
        }
    }

    pub fn zero(precision: i64) -> Self {
        Series { lead: precision, coeffs: Vec::new(), precision }
    }

    pub fn one(precision: i64) -> Self {
        Self::constant(Rational::one(), precision)
    }

    pub fn constant(c: Rational, precision: i64) -> Self {
        Self::monomial(c, 0, precision)
    }

    /// `c * x^exp`.
    pub fn monomial(c: Rational, exp: i64, precision: i64) -> Self {
        Self::new(exp, vec![c], precision)
    }

    /// `x^exp`.
    pub fn x_pow(exp: i64, precision: i64) -> Self {
        Self::monomial(Rational::one(), exp, precision)
    }

    /// Builds a series from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms(terms: &[(i64, Rational)], precision: i64) -> Self {
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero(precision);
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap_or(lo);
        let mut coeffs = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::new(lo, coeffs, precision)
    }

    pub fn lead(&self) -> i64 {
        self.lead
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    /// Valuation, or `None` when every known coefficient vanishes.
    pub fn ord(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.lead)
    }

    /// Zero modulo `x^precision`.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^exp`; exponents at or beyond the precision read as
    /// zero, so check [`Series::precision`] when that matters.
    pub fn coeff(&self, exp: i64) -> Rational {
        let i = exp - self.lead;
        if i < 0 || i >= self.coeffs.len() as i64 {
            Rational::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Constant term, or `None` when the precision does not reach `x^0`.
    pub fn constant_term(&self) -> Option<Rational> {
        (self.precision > 0).then(|| self.coeff(0))
    }

    /// Terms of nonzero coefficient as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lead + i as i64, c))
    }

    /// True when the series has a single nonzero term.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lowers the precision to `min(self.precision, p)`.
    pub fn truncate(&self, p: i64) -> Self {
        if p >= self.precision {
            return self.clone();
        }
        Self::new(self.lead, self.coeffs.clone(), p)
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Series { lead: self.lead + k, coeffs: self.coeffs.clone(), precision: self.precision + k }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.precision);
        }
        Series {
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
            precision: self.precision,
        }
    }

    /// The valuation used for precision bookkeeping: the true order, or the
    /// precision when nothing is known to be nonzero.
    fn effective_ord(&self) -> i64 {
        self.ord().unwrap_or(self.precision)
    }

    /// Agreement of all coefficients below the smaller of the two precisions.
    pub fn congruent(&self, other: &Series) -> bool {
        let p = self.precision.min(other.precision);
        self.truncate(p) == other.truncate(p)
    }

    pub fn inverse(&self) -> Result<Series, LaurentError> {
        let v = self.ord().ok_or(LaurentError::ZeroInverse(self.precision))?;
        // Unit part u = x^-v f is known modulo x^(T - v); invert it by the
        // usual recurrence, then shift back.
        let unit_prec = self.precision - v;
        let n = unit_prec as usize;
        let c0_inv = self.coeffs[0].recip();
        let mut inv: Vec<Rational> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                inv.push(c0_inv.clone());
                continue;
            }
            let mut acc = Rational::zero();
            for i in 1..=k.min(self.coeffs.len() - 1) {
                acc += &self.coeffs[i] * &inv[k - i];
            }
            inv.push(-acc * &c0_inv);
        }
        Ok(Series::new(-v, inv, self.precision - 2 * v))
    }

    pub fn try_div(&self, other: &Series) -> Result<Series, LaurentError> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, k: u32) -> Series {
        if k == 0 {
            return Series::one(self.precision);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let precision = self.precision.min(rhs.precision);
        if self.is_zero() {
            return rhs.truncate(precision);
        }
        if rhs.is_zero() {
            return self.truncate(precision);
        }
        let lo = self.lead.min(rhs.lead);
        let hi = (self.lead + self.coeffs.len() as i64)
            .max(rhs.lead + rhs.coeffs.len() as i64)
            .min(precision);
        if hi <= lo {
            return Series::zero(precision);
        }
        let coeffs = (lo..hi).map(|e| self.coeff(e) + rhs.coeff(e)).collect();
        Series::new(lo, coeffs, precision)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            precision: self.precision,
        }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self + &(-rhs)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let precision = (self.effective_ord() + rhs.precision)
            .min(rhs.effective_ord() + self.precision);
        if self.is_zero() || rhs.is_zero() {
            return Series::zero(precision);
        }
        let lead = self.lead + rhs.lead;
        let len = (self.coeffs.len() + rhs.coeffs.len() - 1)
            .min((precision - lead).max(0) as usize);
        let mut coeffs = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] += a * b;
            }
        }
        Series::new(lead, coeffs, precision)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

fn fmt_term(f: &mut fmt::Formatter<'_>, c: &Rational, e: i64) -> fmt::Result {
    let mag = c.abs();
    let var = match e {
        0 => String::new(),
        1 => "x".to_string(),
        _ => format!("x^{e}"),
    };
    if var.is_empty() {
        write!(f, "{mag}")
    } else if mag.is_one() {
        write!(f, "{var}")
    } else {
        write!(f, "{mag}*{var}")
    }
}

/// `x^-2 + 3/2*x + O(x^16)`. The alternate form `{:#}` omits the `O` term.
impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            fmt_term(f, c, e)?;
            first = false;
        }
        if f.alternate() {
            if first {
                write!(f, "0")?;
            }
            return Ok(());
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(x^{})", self.precision)
    }
}

fn parse_exponent(s: &str) -> Option<i64> {
    let s = s.trim();
    let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
    s.trim().parse().ok()
}

fn parse_term(body: &str, negative: bool) -> Result<(i64, Rational), String> {
    let body = body.trim();
    let (coef_txt, exp) = match body.find('x') {
        None => (body, 0),
        Some(pos) => {
            let rest = body[pos + 1..].trim();
            let exp = if rest.is_empty() {
                1
            } else {
                let e = rest.strip_prefix('^').ok_or_else(|| format!("bad term {body:?}"))?;
                parse_exponent(e).ok_or_else(|| format!("bad exponent in {body:?}"))?
            };
            (body[..pos].trim().trim_end_matches('*').trim(), exp)
        }
    };
    let coef = if coef_txt.is_empty() {
        Rational::one()
    } else {
        parse_rational(coef_txt).map_err(|_| format!("bad coefficient in {body:?}"))?
    };
    Ok((exp, if negative { -coef } else { coef }))
}

impl FromStr for Series {
    type Err = LaurentError;

    /// Accepts `x^-2 + 3/2*x + O(x^16)`; without an `O` term the precision
    /// defaults to [`DEFAULT_PRECISION`].
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |m: String| LaurentError::Parse(m);
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev = None;
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && prev != Some('^') && prev != Some('(') {
                if !cur.trim().is_empty() {
                    pieces.push((neg, std::mem::take(&mut cur)));
                } else if !cur.is_empty() {
                    cur.clear();
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            if !ch.is_whitespace() {
                prev = Some(ch);
            }
        }
        if !cur.trim().is_empty() {
            pieces.push((neg, cur));
        }
        if pieces.is_empty() {
            return Err(err(format!("empty series {s:?}")));
        }
        let mut precision = None;
        let mut terms = Vec::new();
        for (negative, body) in pieces {
            let body = body.trim();
            if let Some(inner) = body.strip_prefix("O(").and_then(|b| b.strip_suffix(')')) {
                let e = inner
                    .trim()
                    .strip_prefix('x')
                    .map(str::trim)
                    .and_then(|r| r.strip_prefix('^'))
                    .and_then(parse_exponent)
                    .ok_or_else(|| err(format!("bad O-term {body:?}")))?;
                if precision.replace(e).is_some() {
                    return Err(err("more than one O-term".into()));
                }
                continue;
            }
            terms.push(parse_term(body, negative).map_err(err)?);
        }
        let precision = precision.unwrap_or(DEFAULT_PRECISION);
        if let Some(&(e, _)) = terms.iter().find(|(e, c)| *e >= precision && !c.is_zero()) {
            return Err(err(format!("term x^{e} lies beyond O(x^{precision})")));
        }
        Ok(Series::from_terms(&terms, precision))
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    lead: i64,
    coeffs: Vec<String>,
    precision: i64,
}

impl Serialize for Series {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeriesJson {
            lead: self.lead,
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
            precision: self.precision,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = SeriesJson::deserialize(d)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        if let Some(i) = coeffs.iter().rposition(|c| !c.is_zero()) {
            let last = raw.lead + i as i64;
            if last >= raw.precision {
                return Err(serde::de::Error::custom(format!(
                    "coefficient of x^{last} lies beyond precision {}",
                    raw.precision
                )));
            }
        }
        Ok(Series::new(raw.lead, coeffs, raw.precision))
    }
}
