//! Exact rational helpers and the closed interval type shared by the digit
//! and geometry modules.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn pow(base: u32, exp: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), exp)
}

/// `base^-exp` as an exact rational.
pub fn inv_pow(base: u32, exp: usize) -> Rational {
    Rational::new(BigInt::one(), pow(base, exp))
}

/// Lossless text form, always `p/q` (integers print as `p/1`).
pub fn format_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q`, an integer, or a plain decimal such as `0.3` or `-1.25`,
/// exactly.
pub fn parse_ratio(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit())
            || !whole_digits.chars().all(|c| c.is_ascii_digit())
            || (whole_digits.is_empty() && frac.is_empty())
        {
            return Err(bad());
        }
        let digits = format!("{whole_digits}{frac}");
        let numer: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| bad())?
        };
        let r = Rational::new(numer, num_traits::pow(BigInt::from(10), frac.len()));
        return Ok(if negative { -r } else { r });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact conversion of a finite float.
pub fn from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::InvalidArgument(format!("{x} is not finite")))
}

/// Serde adapter writing a rational as its `p/q` string.
pub mod text {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&format_ratio(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(de)?;
        parse_ratio(&s).map_err(serde::de::Error::custom)
    }
}

/// Closed interval `[lo, hi]` with exact endpoints. Also used to carry open
/// gaps, where the meaning is stated by the container.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalInterval {
    #[serde(with = "text")]
    lo: Rational,
    #[serde(with = "text")]
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!(
                "interval endpoints out of order: {} > {}",
                format_ratio(&lo),
                format_ratio(&hi)
            )));
        }
        Ok(RationalInterval { lo, hi })
    }

    pub(crate) fn new_unchecked(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        RationalInterval { lo, hi }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Strict containment in the open interval `(lo, hi)`.
    pub fn contains_open(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }

    pub fn is_subset_of(&self, other: &RationalInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersects(&self, other: &RationalInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Distance between two closed intervals (zero when they meet).
    pub fn distance(&self, other: &RationalInterval) -> Rational {
        if self.hi < other.lo {
            &other.lo - &self.hi
        } else if other.hi < self.lo {
            &self.lo - &other.hi
        } else {
            Rational::zero()
        }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_ratio("3/12").unwrap(), ratio(1, 4));
        assert_eq!(parse_ratio("-7").unwrap(), integer(-7));
        assert_eq!(parse_ratio("0.3").unwrap(), ratio(3, 10));
        assert_eq!(parse_ratio("-1.25").unwrap(), ratio(-5, 4));
        assert_eq!(parse_ratio(".5").unwrap(), ratio(1, 2));
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("abc").is_err());
        assert!(parse_ratio("1.2.3").is_err());
        assert!(parse_ratio("").is_err());
    }

    #[test]
    fn text_form_is_always_p_over_q() {
        assert_eq!(format_ratio(&integer(1)), "1/1");
        assert_eq!(format_ratio(&ratio(10, 4)), "5/2");
        assert_eq!(format_ratio(&integer(0)), "0/1");
    }

    #[test]
    fn interval_json_uses_rational_strings() {
        let iv = RationalInterval::new(ratio(2, 3), integer(1)).unwrap();
        let json = serde_json::to_string(&iv).unwrap();
        assert_eq!(json, r#"{"lo":"2/3","hi":"1/1"}"#);
        let back: RationalInterval = serde_json::from_str(&json).unwrap();
        assert_eq!(back, iv);
    }

    #[test]
    fn rejects_reversed_endpoints() {
        assert!(RationalInterval::new(integer(1), integer(0)).is_err());
    }
}
