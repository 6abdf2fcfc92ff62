use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::base::Base;
use crate::error::{Error, Result};
use crate::rational::{inv_pow, pow, Rational, RationalInterval};

/// An eventually periodic digit sequence over `{0, ..., s+1}`.
///
/// An empty period means the sequence is finite (padded with zeros). Text
/// form separates digits with `.`, brackets digits of two or more decimal
/// characters, and wraps the period in parentheses: `3.0.(5)`, `2.(2.3)`,
/// `[11].(0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitString {
    base: Base,
    preperiod: Vec<u32>,
    period: Vec<u32>,
}

/// How much of a digit string to sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalDepth {
    /// The first `n` digits; the rest is bounded by the tail radius.
    Prefix(usize),
    /// The whole series, summed in closed form.
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub value: Rational,
    /// Bound on the omitted remainder; zero for [`EvalDepth::Full`].
    pub tail_radius: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteDirection {
    /// `(a, s+j) -> (a+1, j)`.
    Down,
    /// `(a+1, j) -> (a, s+j)`.
    Up,
}

impl DigitString {
    pub fn new(base: Base, preperiod: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        for &d in preperiod.iter().chain(&period) {
            base.check_digit(d)?;
        }
        let period = if preperiod.is_empty() && period.is_empty() {
            vec![0]
        } else {
            period
        };
        Ok(DigitString {
            base,
            preperiod,
            period,
        })
    }

    pub fn finite(base: Base, digits: Vec<u32>) -> Result<Self> {
        DigitString::new(base, digits, Vec::new())
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn preperiod(&self) -> &[u32] {
        &self.preperiod
    }

    /// Empty when the string is finite.
    pub fn period(&self) -> &[u32] {
        &self.period
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty() || self.period.iter().all(|&d| d == 0)
    }

    /// Digit at 1-based position `n`.
    pub fn digit(&self, n: usize) -> u32 {
        assert!(n >= 1, "digit positions start at 1");
        let p = self.preperiod.len();
        if n <= p {
            self.preperiod[n - 1]
        } else if self.period.is_empty() {
            0
        } else {
            self.period[(n - p - 1) % self.period.len()]
        }
    }

    pub fn prefix(&self, len: usize) -> Vec<u32> {
        (1..=len).map(|n| self.digit(n)).collect()
    }

    /// True when no digit equals `1` or `s`.
    pub fn is_restricted(&self) -> bool {
        self.preperiod
            .iter()
            .chain(&self.period)
            .all(|&d| self.base.is_restricted_digit(d))
    }

    /// True when every digit is at most `s - 1`.
    pub fn is_classical(&self) -> bool {
        let s = self.base.s();
        self.preperiod.iter().chain(&self.period).all(|&d| d < s)
    }

    /// Same value, with the preperiod unrolled to at least `len` digits.
    pub fn unrolled(&self, len: usize) -> DigitString {
        let mut out = self.clone();
        while out.preperiod.len() < len {
            if out.period.is_empty() {
                out.preperiod.push(0);
            } else {
                let d = out.period[0];
                out.preperiod.push(d);
                out.period.rotate_left(1);
            }
        }
        out
    }

    /// Replaces every digit `d` with `s + 1 - d`; the value maps to
    /// `(s+1)/(s-1) - x`.
    pub fn inverted(&self) -> DigitString {
        let top = self.base.max_digit();
        let period = if self.period.is_empty() {
            vec![0]
        } else {
            self.period.clone()
        };
        DigitString {
            base: self.base,
            preperiod: self.preperiod.iter().map(|d| top - d).collect(),
            period: period.iter().map(|d| top - d).collect(),
        }
    }

    /// Prepends `digits`, i.e. applies the IFS maps `w_{digits[0]} o ...`.
    pub fn prepended(&self, digits: &[u32]) -> Result<DigitString> {
        let mut pre = digits.to_vec();
        pre.extend_from_slice(&self.preperiod);
        DigitString::new(self.base, pre, self.period.clone())
    }

    /// Sum of the series, either truncated or in closed form.
    pub fn eval(&self, depth: EvalDepth) -> Evaluation {
        let s = self.base.s();
        match depth {
            EvalDepth::Prefix(n) => {
                let value = prefix_value(s, &self.prefix(n));
                let tail_radius =
                    Rational::new(BigInt::from(s + 1), pow(s, n) * BigInt::from(s - 1));
                Evaluation { value, tail_radius }
            }
            EvalDepth::Full => {
                let p = self.preperiod.len();
                let mut value = prefix_value(s, &self.preperiod);
                if !self.period.is_empty() {
                    let q = self.period.len();
                    let block = self
                        .period
                        .iter()
                        .fold(BigInt::zero(), |acc, &d| acc * s + d);
                    let cycle = Rational::new(block, pow(s, q) - BigInt::one());
                    value += cycle * inv_pow(s, p);
                }
                Evaluation {
                    value,
                    tail_radius: Rational::zero(),
                }
            }
        }
    }

    pub fn value(&self) -> Rational {
        self.eval(EvalDepth::Full).value
    }
}

/// `sum_k digits[k] s^-(k+1)`.
pub(crate) fn prefix_value(s: u32, digits: &[u32]) -> Rational {
    let numer = digits.iter().fold(BigInt::zero(), |acc, &d| acc * s + d);
    Rational::new(numer, pow(s, digits.len()))
}

/// Evaluate a digit string, returning the truncated or full value together
/// with the radius bounding the discarded tail.
pub fn eval_delta(d: &DigitString, depth: EvalDepth) -> Evaluation {
    d.eval(depth)
}

/// The closed set of values whose expansions start with `prefix`:
/// `[a, a + (s+1) / (s^m (s-1))]` with `a` the prefix value and `m` its
/// length.
pub fn cylinder_interval(base: Base, prefix: &[u32]) -> Result<RationalInterval> {
    for &d in prefix {
        base.check_digit(d)?;
    }
    let s = base.s();
    let lo = prefix_value(s, prefix);
    let width = Rational::new(
        BigInt::from(s + 1),
        pow(s, prefix.len()) * BigInt::from(s - 1),
    );
    let hi = &lo + width;
    Ok(RationalInterval::new_unchecked(lo, hi))
}

/// Swap the digit pair at 1-based positions `pos`, `pos + 1` for its
/// value-preserving alternative.
pub fn pair_rewrite(
    d: &DigitString,
    pos: usize,
    direction: RewriteDirection,
) -> Result<DigitString> {
    if pos == 0 {
        return Err(Error::NotRewritable {
            pos,
            reason: "positions start at 1".into(),
        });
    }
    let s = d.base.s();
    let mut out = d.unrolled(pos + 1);
    let (a, b) = (out.preperiod[pos - 1], out.preperiod[pos]);
    let (first, second) = match direction {
        RewriteDirection::Down => {
            if a > s || b < s {
                return Err(Error::NotRewritable {
                    pos,
                    reason: format!("pair ({a}, {b}) is not of the form (a <= s, s + j)"),
                });
            }
            (a + 1, b - s)
        }
        RewriteDirection::Up => {
            if a == 0 || b > 1 {
                return Err(Error::NotRewritable {
                    pos,
                    reason: format!("pair ({a}, {b}) is not of the form (a + 1, j <= 1)"),
                });
            }
            (a - 1, b + s)
        }
    };
    out.preperiod[pos - 1] = first;
    out.preperiod[pos] = second;
    Ok(out)
}

fn write_digit(f: &mut fmt::Formatter<'_>, d: u32) -> fmt::Result {
    if d < 10 {
        write!(f, "{d}")
    } else {
        write!(f, "[{d}]")
    }
}

fn write_digits(f: &mut fmt::Formatter<'_>, digits: &[u32]) -> fmt::Result {
    for (i, &d) in digits.iter().enumerate() {
        if i > 0 {
            f.write_str(".")?;
        }
        write_digit(f, d)?;
    }
    Ok(())
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_digits(f, &self.preperiod)?;
        if !self.period.is_empty() {
            if !self.preperiod.is_empty() {
                f.write_str(".")?;
            }
            f.write_str("(")?;
            write_digits(f, &self.period)?;
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn parse_digit(token: &str) -> Result<u32> {
    let bad = || Error::Parse(format!("bad digit token {token:?}"));
    if let Some(inner) = token.strip_prefix('[') {
        let inner = inner.strip_suffix(']').ok_or_else(bad)?;
        if inner.is_empty() || !inner.bytes().all(|c| c.is_ascii_digit()) || inner.starts_with('0')
        {
            return Err(bad());
        }
        let d: u32 = inner.parse().map_err(|_| bad())?;
        // Single-character digits are never bracketed, which keeps the
        // printed form unique.
        if d < 10 {
            return Err(bad());
        }
        Ok(d)
    } else {
        match token.as_bytes() {
            [c] if c.is_ascii_digit() => Ok((c - b'0') as u32),
            _ => Err(bad()),
        }
    }
}

fn parse_digit_list(text: &str) -> Result<Vec<u32>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split('.').map(parse_digit).collect()
}

/// Digits of the text syntax without a base attached: `(preperiod, period)`.
pub fn parse_digit_text(text: &str) -> Result<(Vec<u32>, Vec<u32>)> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty digit string".into()));
    }
    match t.find('(') {
        None => Ok((parse_digit_list(t)?, Vec::new())),
        Some(open) => {
            let inner = t[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("period must close the string: {t:?}")))?;
            if inner.is_empty() {
                return Err(Error::Parse("empty period".into()));
            }
            let head = &t[..open];
            let pre = if head.is_empty() {
                Vec::new()
            } else {
                let head = head
                    .strip_suffix('.')
                    .ok_or_else(|| Error::Parse(format!("expected '.' before period in {t:?}")))?;
                if head.is_empty() {
                    return Err(Error::Parse(format!("dangling '.' in {t:?}")));
                }
                parse_digit_list(head)?
            };
            Ok((pre, parse_digit_list(inner)?))
        }
    }
}

impl DigitString {
    pub fn parse(base: Base, text: &str) -> Result<Self> {
        let (pre, period) = parse_digit_text(text)?;
        DigitString::new(base, pre, period)
    }
}

/// Wire form carrying the base alongside the text.
#[derive(Serialize, Deserialize)]
struct DigitStringWire {
    s: u32,
    digits: String,
}

impl Serialize for DigitString {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        DigitStringWire {
            s: self.base.s(),
            digits: self.to_string(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for DigitString {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let wire = DigitStringWire::deserialize(de)?;
        let base = Base::new(wire.s).map_err(serde::de::Error::custom)?;
        DigitString::parse(base, &wire.digits).map_err(serde::de::Error::custom)
    }
}
