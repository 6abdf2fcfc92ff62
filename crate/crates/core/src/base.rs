use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{integer, ratio, Rational, RationalInterval};

/// Radix `s >= 4` of an expansion over the redundant alphabet `{0, ..., s+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Base(u32);

impl Base {
    pub fn new(s: u32) -> Result<Self> {
        if s < 4 {
            return Err(Error::InvalidBase(s));
        }
        Ok(Base(s))
    }

    /// A base of the form `s = 2m + 2`.
    pub fn even(s: u32) -> Result<Self> {
        let b = Base::new(s)?;
        b.require_even()?;
        Ok(b)
    }

    /// The even base `2m + 2` for `m >= 1`.
    pub fn from_m(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("m must be at least 1".into()));
        }
        let s = m
            .checked_mul(2)
            .and_then(|v| v.checked_add(2))
            .ok_or_else(|| Error::InvalidArgument(format!("m = {m} is too large")))?;
        Base::even(s)
    }

    pub fn s(self) -> u32 {
        self.0
    }

    pub fn is_even(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn require_even(self) -> Result<()> {
        if self.is_even() {
            Ok(())
        } else {
            Err(Error::OddBase(self.0))
        }
    }

    /// `(s - 2) / 2` for even bases.
    pub fn m(self) -> Option<u32> {
        self.is_even().then(|| (self.0 - 2) / 2)
    }

    pub fn max_digit(self) -> u32 {
        self.0 + 1
    }

    pub fn check_digit(self, d: u32) -> Result<()> {
        if d > self.max_digit() {
            Err(Error::MalformedDigit {
                digit: d,
                max: self.max_digit(),
            })
        } else {
            Ok(())
        }
    }

    /// Digits `1` and `s` are the ones excluded from the restricted alphabet.
    pub fn is_restricted_digit(self, d: u32) -> bool {
        d <= self.max_digit() && d != 1 && d != self.0
    }

    pub fn alphabet(self) -> Vec<u32> {
        (0..=self.max_digit()).collect()
    }

    /// `{0, 2, 3, ..., s-1, s+1}`.
    pub fn restricted_alphabet(self) -> Vec<u32> {
        (0..=self.max_digit())
            .filter(|&d| self.is_restricted_digit(d))
            .collect()
    }

    /// `(s+1)/(s-1)`, the largest representable value.
    pub fn hull_max(self) -> Rational {
        ratio(self.0 as i64 + 1, self.0 as i64 - 1)
    }

    /// `[0, (s+1)/(s-1)]`.
    pub fn hull(self) -> RationalInterval {
        RationalInterval::new_unchecked(integer(0), self.hull_max())
    }
}

impl TryFrom<u32> for Base {
    type Error = Error;

    fn try_from(s: u32) -> Result<Self> {
        Base::new(s)
    }
}

impl From<Base> for u32 {
    fn from(b: Base) -> u32 {
        b.0
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
