//! Exact scalars in a real quadratic field Q(√s), plus exponent intervals
//! over (1, ∞).
//!
//! Every exponent, weight, and interval endpoint in the calculator is a
//! [`QuadScalar`]: either an exact `a + b·√s` with rational `a`, `b`, `s ≥ 0`,
//! or a float fallback used when inputs arrive as decimals. Signs of exact
//! scalars are decided by rational arithmetic only (case analysis on the signs
//! of `a`, `b` and comparison of `a²` with `b²s`), so ordering and interval
//! operations are exact.
//!
//! One radicand per computation context: combining two scalars with distinct
//! irrational radicands is an error rather than a field extension, and exact
//! and float scalars never mix silently — callers demote explicitly via
//! [`QuadScalar::approx`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

/// Tolerance used for sign and comparison decisions in float mode.
pub const FLOAT_TOL: f64 = 1e-12;

/// Errors from exact-scalar and interval arithmetic.
#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum NumericError {
    #[error("mixed radicands: sqrt({0}) and sqrt({1}) in one expression")]
    MixedRadicands(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("radicand must be nonnegative, got {0}")]
    NegativeRadicand(String),
    #[error("exact and float scalars mixed in one expression")]
    MixedModes,
    #[error("cannot parse scalar literal {0:?}")]
    Parse(String),
}

/// An exact element `a + b·√s` of a real quadratic field, or a float fallback.
///
/// Canonical form: if `s` is a perfect square of a rational (including 0),
/// `b·√s` is folded into `a` and `b = s = 0`. Structural equality on
/// canonical forms is therefore value equality within one radicand context.
#[derive(Clone, Debug, PartialEq)]
pub enum QuadScalar {
    Exact {
        a: BigRational,
        b: BigRational,
        s: BigRational,
    },
    Float(f64),
}

/// Exact rational square root, if the argument is a perfect square.
fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num_root = r.numer().sqrt();
    let den_root = r.denom().sqrt();
    if &(&num_root * &num_root) == r.numer() && &(&den_root * &den_root) == r.denom() {
        Some(BigRational::new(num_root, den_root))
    } else {
        None
    }
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QuadScalar {
    /// Exact zero.
    pub fn zero() -> Self {
        QuadScalar::rational(BigRational::zero())
    }

    /// Exact one.
    pub fn one() -> Self {
        QuadScalar::rational(BigRational::one())
    }

    /// Exact integer.
    pub fn from_int(n: i64) -> Self {
        QuadScalar::rational(big(n))
    }

    /// Exact ratio of integers.
    pub fn from_ratio(num: i64, den: i64) -> Result<Self, NumericError> {
        if den == 0 {
            return Err(NumericError::DivisionByZero);
        }
        Ok(QuadScalar::rational(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    /// Exact rational scalar.
    pub fn rational(a: BigRational) -> Self {
        QuadScalar::Exact {
            a,
            b: BigRational::zero(),
            s: BigRational::zero(),
        }
    }

    /// Exact `a + b·√s`, canonicalized. Rejects negative radicands.
    pub fn surd(a: BigRational, b: BigRational, s: BigRational) -> Result<Self, NumericError> {
        if s.is_negative() {
            return Err(NumericError::NegativeRadicand(s.to_string()));
        }
        if b.is_zero() || s.is_zero() {
            return Ok(QuadScalar::rational(a));
        }
        if let Some(root) = rational_sqrt(&s) {
            return Ok(QuadScalar::rational(a + b * root));
        }
        Ok(QuadScalar::Exact { a, b, s })
    }

    /// Exact `√r` for rational `r ≥ 0`.
    pub fn sqrt_rational(r: BigRational) -> Result<Self, NumericError> {
        QuadScalar::surd(BigRational::zero(), BigRational::one(), r)
    }

    /// Float-mode scalar.
    pub fn float(v: f64) -> Self {
        QuadScalar::Float(v)
    }

    /// True in exact mode.
    pub fn is_exact(&self) -> bool {
        matches!(self, QuadScalar::Exact { .. })
    }

    /// The rational part, if this scalar is exact and purely rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            QuadScalar::Exact { a, b, .. } if b.is_zero() => Some(a),
            _ => None,
        }
    }

    /// Binary-float value (exact scalars are evaluated, not rounded exactly).
    pub fn to_f64(&self) -> f64 {
        match self {
            QuadScalar::Exact { a, b, s } => {
                let fa = a.to_f64().unwrap_or(f64::NAN);
                if b.is_zero() {
                    fa
                } else {
                    fa + b.to_f64().unwrap_or(f64::NAN) * s.to_f64().unwrap_or(f64::NAN).sqrt()
                }
            }
            QuadScalar::Float(v) => *v,
        }
    }

    /// Explicit demotion to float mode.
    pub fn approx(&self) -> QuadScalar {
        QuadScalar::Float(self.to_f64())
    }

    /// Shared radicand of two scalars, or an error if they live in
    /// genuinely different quadratic fields.
    fn join_radicand(&self, other: &QuadScalar) -> Result<BigRational, NumericError> {
        match (self, other) {
            (QuadScalar::Exact { b: b1, s: s1, .. }, QuadScalar::Exact { b: b2, s: s2, .. }) => {
                if b1.is_zero() {
                    Ok(s2.clone())
                } else if b2.is_zero() || s1 == s2 {
                    Ok(s1.clone())
                } else {
                    Err(NumericError::MixedRadicands(s1.to_string(), s2.to_string()))
                }
            }
            _ => Err(NumericError::MixedModes),
        }
    }

    /// Exact (or float) sum.
    pub fn try_add(&self, other: &QuadScalar) -> Result<QuadScalar, NumericError> {
        match (self, other) {
            (QuadScalar::Float(x), QuadScalar::Float(y)) => Ok(QuadScalar::Float(x + y)),
            (QuadScalar::Exact { a: a1, b: b1, .. }, QuadScalar::Exact { a: a2, b: b2, .. }) => {
                let s = self.join_radicand(other)?;
                QuadScalar::surd(a1 + a2, b1 + b2, s)
            }
            _ => Err(NumericError::MixedModes),
        }
    }

    /// Exact (or float) difference.
    pub fn try_sub(&self, other: &QuadScalar) -> Result<QuadScalar, NumericError> {
        self.try_add(&other.neg())
    }

    /// Exact (or float) product.
    pub fn try_mul(&self, other: &QuadScalar) -> Result<QuadScalar, NumericError> {
        match (self, other) {
            (QuadScalar::Float(x), QuadScalar::Float(y)) => Ok(QuadScalar::Float(x * y)),
            (
                QuadScalar::Exact { a: a1, b: b1, .. },
                QuadScalar::Exact { a: a2, b: b2, .. },
            ) => {
                let s = self.join_radicand(other)?;
                QuadScalar::surd(a1 * a2 + b1 * b2 * &s, a1 * b2 + a2 * b1, s)
            }
            _ => Err(NumericError::MixedModes),
        }
    }

    /// Exact quotient, rationalized by the conjugate of the denominator.
    pub fn try_div(&self, other: &QuadScalar) -> Result<QuadScalar, NumericError> {
        match (self, other) {
            (QuadScalar::Float(x), QuadScalar::Float(y)) => {
                if y.abs() <= FLOAT_TOL {
                    Err(NumericError::DivisionByZero)
                } else {
                    Ok(QuadScalar::Float(x / y))
                }
            }
            (QuadScalar::Exact { .. }, QuadScalar::Exact { a: a2, b: b2, .. }) => {
                if other.sign() == 0 {
                    return Err(NumericError::DivisionByZero);
                }
                let s = self.join_radicand(other)?;
                // (a2 + b2√s)(a2 − b2√s) = a2² − b2²s, nonzero because the
                // canonical form excludes perfect-square radicands.
                let norm = a2 * a2 - b2 * b2 * &s;
                let conj = QuadScalar::surd(a2.clone(), -b2.clone(), s)?;
                let num = self.try_mul(&conj)?;
                match num {
                    QuadScalar::Exact { a, b, s } => QuadScalar::surd(a / &norm, b / &norm, s),
                    QuadScalar::Float(_) => unreachable!("exact product of exact scalars"),
                }
            }
            _ => Err(NumericError::MixedModes),
        }
    }

    /// Negation (always well defined).
    pub fn neg(&self) -> QuadScalar {
        match self {
            QuadScalar::Float(v) => QuadScalar::Float(-v),
            QuadScalar::Exact { a, b, s } => QuadScalar::Exact {
                a: -a.clone(),
                b: -b.clone(),
                s: s.clone(),
            },
        }
    }

    /// Sign in {−1, 0, +1}. Exact mode decides by rational arithmetic only;
    /// float mode treats |v| ≤ 1e−12 as zero.
    pub fn sign(&self) -> i8 {
        match self {
            QuadScalar::Float(v) => {
                if v.abs() <= FLOAT_TOL {
                    0
                } else if *v > 0.0 {
                    1
                } else {
                    -1
                }
            }
            QuadScalar::Exact { a, b, s } => {
                if b.is_zero() {
                    return sign_of(a);
                }
                // b ≠ 0 and s is not a perfect square, so a + b√s ≠ 0.
                match (sign_of(a), sign_of(b)) {
                    (sa, 1) if sa >= 0 => 1,
                    (sa, -1) if sa <= 0 => -1,
                    // Opposite signs: compare a² with b²s.
                    (1, _) => sign_of(&(a * a - b * b * s)),
                    (_, _) => -sign_of(&(a * a - b * b * s)),
                }
            }
        }
    }

    /// True iff the scalar is exactly zero (tolerance 1e−12 in float mode).
    pub fn is_zero_val(&self) -> bool {
        self.sign() == 0
    }

    /// Exact (or float-tolerant) ordering.
    pub fn try_cmp(&self, other: &QuadScalar) -> Result<Ordering, NumericError> {
        let diff = self.try_sub(other)?;
        Ok(match diff.sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        })
    }

    /// Exact equality test through the ordering (tolerant in float mode).
    pub fn eq_val(&self, other: &QuadScalar) -> Result<bool, NumericError> {
        Ok(self.try_cmp(other)? == Ordering::Equal)
    }
}

fn sign_of(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Exact sign of a scalar; the calculator's ordering primitive.
pub fn qs_sign(x: &QuadScalar) -> i8 {
    x.sign()
}

/// Exact quotient in the shared field (rationalize by conjugate).
pub fn qs_conjugate_ratio(num: &QuadScalar, den: &QuadScalar) -> Result<QuadScalar, NumericError> {
    num.try_div(den)
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadScalar::Float(v) => write!(f, "{v}"),
            QuadScalar::Exact { a, b, s } => {
                if b.is_zero() {
                    return write!(f, "{a}");
                }
                let root = format!("sqrt({s})");
                let b_abs = b.abs();
                let term = if b_abs.is_one() {
                    root
                } else {
                    format!("{b_abs}*{root}")
                };
                if a.is_zero() {
                    if b.is_negative() {
                        write!(f, "-{term}")
                    } else {
                        write!(f, "{term}")
                    }
                } else if b.is_negative() {
                    write!(f, "{a}-{term}")
                } else {
                    write!(f, "{a}+{term}")
                }
            }
        }
    }
}

impl FromStr for QuadScalar {
    type Err = NumericError;

    /// Parses `p`, `p/q`, decimals (float mode), and `a±b*sqrt(s)` literals
    /// (`sqrt(2)`, `-sqrt(3)`, `1/2*sqrt(2)`, `1+2*sqrt(1/4)`, ...).
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let t = text.trim();
        let bad = || NumericError::Parse(text.to_string());
        if t.is_empty() {
            return Err(bad());
        }
        if let Some(idx) = t.find("sqrt(") {
            if !t.ends_with(')') {
                return Err(bad());
            }
            let s = parse_rational(&t[idx + 5..t.len() - 1]).ok_or_else(bad)?;
            let mut pre = &t[..idx];
            if let Some(stripped) = pre.strip_suffix('*') {
                pre = stripped;
            }
            let (a, b) = if pre.is_empty() {
                (BigRational::zero(), BigRational::one())
            } else if pre == "-" {
                (BigRational::zero(), -BigRational::one())
            } else if let Some(split) = pre[1..].rfind(['+', '-']).map(|i| i + 1) {
                let a = parse_rational(&pre[..split]).ok_or_else(bad)?;
                let sign_char = pre.as_bytes()[split] as char;
                let rest = &pre[split + 1..];
                let b_abs = if rest.is_empty() {
                    BigRational::one()
                } else {
                    parse_rational(rest).ok_or_else(bad)?
                };
                (a, if sign_char == '-' { -b_abs } else { b_abs })
            } else {
                (BigRational::zero(), parse_rational(pre).ok_or_else(bad)?)
            };
            return QuadScalar::surd(a, b, s);
        }
        if let Some(r) = parse_rational(t) {
            return Ok(QuadScalar::rational(r));
        }
        if t.contains('.') {
            if let Ok(v) = t.parse::<f64>() {
                if v.is_finite() {
                    return Ok(QuadScalar::Float(v));
                }
            }
        }
        Err(bad())
    }
}

fn parse_rational(t: &str) -> Option<BigRational> {
    let t = t.trim();
    match t.split_once('/') {
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().ok()?;
            let d: BigInt = den.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => {
            let n: BigInt = t.parse().ok()?;
            Some(BigRational::from_integer(n))
        }
    }
}

impl Serialize for QuadScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            QuadScalar::Exact { .. } => serializer.serialize_str(&self.to_string()),
            QuadScalar::Float(v) => serializer.serialize_f64(*v),
        }
    }
}

/// A subset of the exponent domain (1, ∞): either empty, or an interval with
/// open/closed endpoints, clipped to the domain (so a lower endpoint of 1 is
/// always open and never reported as closed).
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentInterval(Option<Span>);

#[derive(Clone, Debug, PartialEq)]
struct Span {
    lower: QuadScalar,
    lower_closed: bool,
    /// `None` means unbounded above.
    upper: Option<(QuadScalar, bool)>,
}

impl ExponentInterval {
    /// The canonical empty interval.
    pub fn empty() -> Self {
        ExponentInterval(None)
    }

    /// The whole exponent domain (1, ∞).
    pub fn full() -> Result<Self, NumericError> {
        Self::new(QuadScalar::one(), false, None)
    }

    /// Open interval (lo, hi).
    pub fn open(lo: QuadScalar, hi: QuadScalar) -> Result<Self, NumericError> {
        Self::new(lo, false, Some((hi, false)))
    }

    /// Half-open interval (lo, hi].
    pub fn open_closed(lo: QuadScalar, hi: QuadScalar) -> Result<Self, NumericError> {
        Self::new(lo, false, Some((hi, true)))
    }

    /// Open ray (lo, ∞).
    pub fn ray(lo: QuadScalar) -> Result<Self, NumericError> {
        Self::new(lo, false, None)
    }

    /// Degenerate closed interval [p, p].
    pub fn point(p: QuadScalar) -> Result<Self, NumericError> {
        Self::new(p.clone(), true, Some((p, true)))
    }

    /// General constructor; clips to (1, ∞) and canonicalizes emptiness.
    pub fn new(
        lower: QuadScalar,
        lower_closed: bool,
        upper: Option<(QuadScalar, bool)>,
    ) -> Result<Self, NumericError> {
        let one = if lower.is_exact() {
            QuadScalar::one()
        } else {
            QuadScalar::Float(1.0)
        };
        let (lower, lower_closed) = match lower.try_cmp(&one)? {
            Ordering::Less | Ordering::Equal => (one, false),
            Ordering::Greater => (lower, lower_closed),
        };
        if let Some((hi, hi_closed)) = &upper {
            match hi.try_cmp(&lower)? {
                Ordering::Less => return Ok(ExponentInterval(None)),
                Ordering::Equal => {
                    if !(lower_closed && *hi_closed) {
                        return Ok(ExponentInterval(None));
                    }
                }
                Ordering::Greater => {}
            }
        }
        Ok(ExponentInterval(Some(Span {
            lower,
            lower_closed,
            upper,
        })))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    /// Lower endpoint and its closedness (None for the empty interval).
    pub fn lower(&self) -> Option<(&QuadScalar, bool)> {
        self.0.as_ref().map(|s| (&s.lower, s.lower_closed))
    }

    /// Upper endpoint and its closedness (None if empty or unbounded above).
    pub fn upper(&self) -> Option<(&QuadScalar, bool)> {
        self.0
            .as_ref()
            .and_then(|s| s.upper.as_ref().map(|(u, c)| (u, *c)))
    }

    /// True iff the interval is nonempty and unbounded above.
    pub fn is_ray(&self) -> bool {
        matches!(&self.0, Some(span) if span.upper.is_none())
    }

    /// Exact membership test.
    pub fn contains(&self, p: &QuadScalar) -> Result<bool, NumericError> {
        let Some(span) = &self.0 else {
            return Ok(false);
        };
        let above = match p.try_cmp(&span.lower)? {
            Ordering::Greater => true,
            Ordering::Equal => span.lower_closed,
            Ordering::Less => false,
        };
        if !above {
            return Ok(false);
        }
        match &span.upper {
            None => Ok(true),
            Some((hi, closed)) => Ok(match p.try_cmp(hi)? {
                Ordering::Less => true,
                Ordering::Equal => *closed,
                Ordering::Greater => false,
            }),
        }
    }

    /// Exact intersection with standard endpoint-closedness rules.
    pub fn intersect(&self, other: &ExponentInterval) -> Result<ExponentInterval, NumericError> {
        let (Some(x), Some(y)) = (&self.0, &other.0) else {
            return Ok(ExponentInterval::empty());
        };
        let (lower, lower_closed) = match x.lower.try_cmp(&y.lower)? {
            Ordering::Greater => (x.lower.clone(), x.lower_closed),
            Ordering::Less => (y.lower.clone(), y.lower_closed),
            Ordering::Equal => (x.lower.clone(), x.lower_closed && y.lower_closed),
        };
        let upper = match (&x.upper, &y.upper) {
            (None, None) => None,
            (Some(u), None) | (None, Some(u)) => Some(u.clone()),
            (Some((ux, cx)), Some((uy, cy))) => Some(match ux.try_cmp(uy)? {
                Ordering::Less => (ux.clone(), *cx),
                Ordering::Greater => (uy.clone(), *cy),
                Ordering::Equal => (ux.clone(), *cx && *cy),
            }),
        };
        ExponentInterval::new(lower, lower_closed, upper)
    }

    /// Demote all endpoints to float mode.
    pub fn approx(&self) -> ExponentInterval {
        ExponentInterval(self.0.as_ref().map(|span| Span {
            lower: span.lower.approx(),
            lower_closed: span.lower_closed,
            upper: span
                .upper
                .as_ref()
                .map(|(u, c)| (u.approx(), *c)),
        }))
    }
}

/// Exact complement of a union of intervals within the domain (1, ∞).
///
/// The pieces need not be sorted or disjoint. Degenerate (point) pieces
/// puncture the complement as expected.
pub fn complement(pieces: &[ExponentInterval]) -> Result<Vec<ExponentInterval>, NumericError> {
    let mut spans: Vec<&Span> = pieces.iter().filter_map(|i| i.0.as_ref()).collect();
    // Selection sort by lower endpoint: comparisons are fallible, counts tiny.
    for i in 0..spans.len() {
        for j in i + 1..spans.len() {
            let swap = match spans[j].lower.try_cmp(&spans[i].lower)? {
                Ordering::Less => true,
                Ordering::Equal => spans[j].lower_closed && !spans[i].lower_closed,
                Ordering::Greater => false,
            };
            if swap {
                spans.swap(i, j);
            }
        }
    }
    let mut out = Vec::new();
    // Cursor: lower edge of the uncovered region, None when fully consumed.
    let mut cursor: Option<(QuadScalar, bool)> = Some((QuadScalar::one(), false));
    for span in spans {
        let Some((lo, lo_closed)) = cursor.clone() else {
            break;
        };
        // Gap between the cursor and this piece, if any.
        let gap = ExponentInterval::new(
            lo.clone(),
            lo_closed,
            Some((span.lower.clone(), !span.lower_closed)),
        )?;
        if !gap.is_empty() {
            out.push(gap);
        }
        cursor = match &span.upper {
            None => None,
            Some((u, c)) => match u.try_cmp(&lo)? {
                // Piece ends before the cursor: it is fully covered already.
                Ordering::Less => Some((lo, lo_closed)),
                Ordering::Equal => Some((lo, lo_closed && !*c)),
                Ordering::Greater => Some((u.clone(), !*c)),
            },
        };
    }
    if let Some((lo, lo_closed)) = cursor {
        let tail = ExponentInterval::new(lo, lo_closed, None)?;
        if !tail.is_empty() {
            out.push(tail);
        }
    }
    Ok(out)
}

impl fmt::Display for ExponentInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            None => write!(f, "empty"),
            Some(span) => {
                let lb = if span.lower_closed { '[' } else { '(' };
                match &span.upper {
                    None => write!(f, "{lb}{}, inf)", span.lower),
                    Some((u, closed)) => {
                        let ub = if *closed { ']' } else { ')' };
                        write!(f, "{lb}{}, {u}{ub}", span.lower)
                    }
                }
            }
        }
    }
}

impl Serialize for ExponentInterval {
    /// Stable array form `[lower, upper, "open-open" | "open-closed" | ...]`;
    /// `upper` is the string `"inf"` for rays; the empty interval is `[]`.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match &self.0 {
            None => serializer.serialize_seq(Some(0))?.end(),
            Some(span) => {
                let mut seq = serializer.serialize_seq(Some(3))?;
                seq.serialize_element(&span.lower)?;
                let lo = if span.lower_closed { "closed" } else { "open" };
                match &span.upper {
                    None => {
                        seq.serialize_element("inf")?;
                        seq.serialize_element(&format!("{lo}-open"))?;
                    }
                    Some((u, closed)) => {
                        seq.serialize_element(u)?;
                        let hi = if *closed { "closed" } else { "open" };
                        seq.serialize_element(&format!("{lo}-{hi}"))?;
                    }
                }
                seq.end()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qs(text: &str) -> QuadScalar {
        text.parse().unwrap()
    }

    #[test]
    fn sign_case_analysis() {
        // √2 > 1.
        assert_eq!(qs("-1+sqrt(2)").sign(), 1);
        // 9 > 8.
        assert_eq!(qs("3-2*sqrt(2)").sign(), 1);
        // Perfect-square radicand canonicalizes away: 1 − √1 = 0.
        assert_eq!(qs("1-sqrt(1)").sign(), 0);
        assert_eq!(qs("1-2*sqrt(2)").sign(), -1);
        assert_eq!(qs("0").sign(), 0);
    }

    #[test]
    fn conjugate_ratio_examples() {
        let four = QuadScalar::from_int(4);
        let two = QuadScalar::from_int(2);
        assert_eq!(qs_conjugate_ratio(&four, &two).unwrap(), two);

        // (1 + √(1/4)) / (1/2) = (3/2) / (1/2) = 3.
        let num = qs("1+sqrt(1/4)");
        let den = qs("1/2");
        assert_eq!(qs_conjugate_ratio(&num, &den).unwrap(), QuadScalar::from_int(3));

        // (2 + 2√2) / (1 + √2) = 2.
        let num = qs("2+2*sqrt(2)");
        let den = qs("1+sqrt(2)");
        let ratio = qs_conjugate_ratio(&num, &den).unwrap();
        assert_eq!(ratio, QuadScalar::from_int(2));
        assert!((ratio.to_f64() - (2.0 + 2.0 * 2f64.sqrt()) / (1.0 + 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn division_by_zero_rejected() {
        let err = qs("1").try_div(&qs("0")).unwrap_err();
        assert_eq!(err, NumericError::DivisionByZero);
    }

    #[test]
    fn mixed_radicands_rejected() {
        let err = qs("sqrt(2)").try_add(&qs("sqrt(3)")).unwrap_err();
        assert!(matches!(err, NumericError::MixedRadicands(_, _)));
        // A rational operand joins any field.
        assert!(qs("sqrt(2)").try_add(&qs("3/2")).is_ok());
    }

    #[test]
    fn mixed_modes_rejected() {
        let err = qs("sqrt(2)").try_add(&QuadScalar::float(0.3)).unwrap_err();
        assert_eq!(err, NumericError::MixedModes);
    }

    #[test]
    fn parse_and_render_round_trip() {
        for text in ["2", "-1/4", "sqrt(2)", "-sqrt(3)", "1+2*sqrt(2)", "5/2-1/3*sqrt(5)"] {
            let v = qs(text);
            assert_eq!(qs(&v.to_string()), v, "round trip of {text}");
        }
        // Normalization folds perfect squares to plain rationals.
        assert_eq!(qs("1+2*sqrt(1/4)").to_string(), "2");
        assert!(matches!(qs("0.3"), QuadScalar::Float(_)));
        assert!("sqrt(-1)".parse::<QuadScalar>().is_err());
        assert!("nonsense".parse::<QuadScalar>().is_err());
    }

    #[test]
    fn interval_intersection_examples() {
        let i = |lo: i64, hi: i64| {
            ExponentInterval::open(QuadScalar::from_int(lo), QuadScalar::from_int(hi)).unwrap()
        };
        // (2,4) ∩ (3,∞) = (3,4).
        let ray3 = ExponentInterval::ray(QuadScalar::from_int(3)).unwrap();
        assert_eq!(i(2, 4).intersect(&ray3).unwrap(), i(3, 4));
        // (2,4) ∩ (1,2] = empty (open endpoint 2 excluded).
        let up_to_2 =
            ExponentInterval::open_closed(QuadScalar::one(), QuadScalar::from_int(2)).unwrap();
        assert!(i(2, 4).intersect(&up_to_2).unwrap().is_empty());
        // (1, 2) ∩ (1, 3) = (1, 2) — the q(4,−1/4,1)=2 headline threshold.
        assert_eq!(i(1, 2).intersect(&i(1, 3)).unwrap(), i(1, 2));
    }

    #[test]
    fn interval_clipping_and_points() {
        // Anything at or below 1 is clipped out of the domain.
        let clipped =
            ExponentInterval::new(QuadScalar::from_int(0), true, Some((QuadScalar::from_int(3), false)))
                .unwrap();
        assert_eq!(clipped.lower().unwrap().0, &QuadScalar::one());
        assert!(!clipped.lower().unwrap().1);
        assert!(ExponentInterval::open(QuadScalar::one(), QuadScalar::one()).unwrap().is_empty());
        let pt = ExponentInterval::point(QuadScalar::from_int(3)).unwrap();
        assert!(pt.contains(&QuadScalar::from_int(3)).unwrap());
        assert!(!pt.contains(&QuadScalar::from_int(2)).unwrap());
        // A point at 1 is outside the open domain.
        assert!(ExponentInterval::point(QuadScalar::one()).unwrap().is_empty());
    }

    #[test]
    fn complement_punctures_and_rays() {
        let pt = ExponentInterval::point(QuadScalar::from_int(3)).unwrap();
        let rest = complement(&[pt]).unwrap();
        assert_eq!(rest.len(), 2);
        assert_eq!(rest[0].to_string(), "(1, 3)");
        assert_eq!(rest[1].to_string(), "(3, inf)");

        let covered = complement(&[ExponentInterval::full().unwrap()]).unwrap();
        assert!(covered.is_empty());

        let lo = ExponentInterval::open(QuadScalar::one(), QuadScalar::from_int(2)).unwrap();
        let hi = ExponentInterval::open(QuadScalar::from_int(2), QuadScalar::from_int(4)).unwrap();
        let rest = complement(&[hi.clone(), lo]).unwrap();
        assert_eq!(rest.len(), 2);
        assert_eq!(rest[0].to_string(), "[2, 2]");
        assert_eq!(rest[1].to_string(), "[4, inf)");
    }

    #[test]
    fn interval_display_and_serialization() {
        let i = ExponentInterval::open_closed(QuadScalar::from_int(1), qs("5/4")).unwrap();
        assert_eq!(i.to_string(), "(1, 5/4]");
        let json = serde_json::to_value(&i).unwrap();
        assert_eq!(json, serde_json::json!(["1", "5/4", "open-closed"]));
        assert_eq!(
            serde_json::to_value(ExponentInterval::empty()).unwrap(),
            serde_json::json!([])
        );
    }
}
