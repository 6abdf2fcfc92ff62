//! Rewriting classical base-`s` expansions into the restricted alphabet
//! `{0, 2, ..., s-1, s+1}`.
//!
//! The rewrite is a transducer carrying a borrow `c_n in {0, 1}` from
//! position `n` into position `n + 1`: the output digit is
//! `b_n = a_n - c_n + s * c_(n-1)`, and the series telescopes so the value is
//! unchanged for any bounded borrow sequence. Keeping `b_n` in the
//! restricted alphabet forces:
//!
//! * with no incoming borrow, a `1` must borrow (`b = 0`), a `0` or `2` must not;
//! * with an incoming borrow, `0 -> s-1` and `2 -> s+1` keep borrowing and
//!   `1 -> s+1` stops; a digit `>= 3` cannot absorb a borrow at all.
//!
//! Digits `>= 3` are the only free choices. Each one borrows exactly when
//! the run of `{0, 1, 2}` digits that follows it holds an odd number of
//! ones, so that the borrow has cleared by the next free digit. On single
//! runs of ones this reproduces the familiar block substitutions
//! `11 -> 0[s+1]`, `31 -> 2[s+1]`, `301 -> 2[s-1][s+1]` and the period rule
//! `(1) -> (0[s+1])`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::base::Base;
use crate::digits::string::DigitString;
use crate::error::{Error, Result};
use crate::rational::{format_ratio, ratio, Rational};

/// Classical base-`s` expansion (digits `0..s`) of `x` in `[0, 1]`.
///
/// Terminating expansions come back finite; `1` comes back as `(s-1)`.
pub fn classical_expansion(base: Base, x: &Rational) -> Result<DigitString> {
    let s = base.s();
    if x.is_negative() || x > &Rational::one() {
        return Err(Error::Domain(format!(
            "{} is outside [0, 1]",
            format_ratio(x)
        )));
    }
    if x.is_one() {
        return DigitString::new(base, Vec::new(), vec![s - 1]);
    }
    let q = x.denom().clone();
    let mut r = x.numer().clone();
    let mut digits = Vec::new();
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    loop {
        if r.is_zero() {
            return DigitString::finite(base, digits);
        }
        if let Some(&start) = seen.get(&r) {
            let period = digits.split_off(start);
            return DigitString::new(base, digits, period);
        }
        seen.insert(r.clone(), digits.len());
        let (d, rem) = (r * s).div_rem(&q);
        digits.push(d.to_u32().expect("digit below base"));
        r = rem;
    }
}

/// Where the digits after a position stop being in `{0, 1, 2}`.
enum Lookahead {
    /// Parity of the ones before the next digit `>= 3`, or before the
    /// all-zero/two tail when no such digit follows.
    Parity(u32),
    /// Infinitely many ones and no further digit `>= 3`.
    Endless,
}

fn lookahead(x: &DigitString, n: usize, horizon: usize, period_has_one: bool) -> Lookahead {
    let mut ones = 0;
    for j in n + 1..=horizon {
        match x.digit(j) {
            1 => ones ^= 1,
            d if d >= 3 => return Lookahead::Parity(ones),
            _ => {}
        }
    }
    if period_has_one {
        Lookahead::Endless
    } else {
        Lookahead::Parity(ones)
    }
}

/// Rewrite a classical expansion of a value in `[3/s, 1]` without the
/// digits `1` and `s`.
///
/// The result is exact: it is eventually periodic with the same preperiod
/// length as the input and a period of the input's length or twice it.
/// Inputs without any digit `1` come back unchanged.
pub fn to_restricted_digits(x: &DigitString) -> Result<DigitString> {
    let base = x.base();
    let s = base.s();
    if let Some(&d) = x.preperiod().iter().chain(x.period()).find(|&&d| d >= s) {
        return Err(Error::MalformedDigit {
            digit: d,
            max: s - 1,
        });
    }
    let value = x.value();
    if value < ratio(3, s as i64) || value > Rational::one() {
        return Err(Error::Domain(format!(
            "{} is outside [3/{s}, 1]",
            format_ratio(&value)
        )));
    }

    let was_finite = x.period().is_empty();
    let period: Vec<u32> = if was_finite {
        vec![0]
    } else {
        x.period().to_vec()
    };
    let work = DigitString::new(base, x.preperiod().to_vec(), period.clone())?;
    let p = work.preperiod().len();
    let q = period.len();
    let period_has_one = period.contains(&1);

    let mut out = Vec::new();
    let mut seen: HashMap<(usize, u32), usize> = HashMap::new();
    let mut carry_in = 0u32;
    let mut n = 1usize;
    let (pre_len, cycle_start) = loop {
        if n > p {
            let key = ((n - p - 1) % q, carry_in);
            if let Some(&first) = seen.get(&key) {
                break (first - 1, first - 1);
            }
            seen.insert(key, n);
        }
        let a = work.digit(n);
        let carry_out = if a >= 3 {
            if carry_in != 0 {
                return Err(Error::Domain(format!(
                    "expansion {x} cannot be rewritten: digit {a} at position {n} meets a borrow"
                )));
            }
            // Past one full period without a digit >= 3 there will be none.
            match lookahead(&work, n, n.max(p) + q, period_has_one) {
                Lookahead::Parity(c) => c,
                Lookahead::Endless => 0,
            }
        } else {
            carry_in ^ u32::from(a == 1)
        };
        out.push(a + s * carry_in - carry_out);
        carry_in = carry_out;
        n += 1;
    };
    debug_assert_eq!(pre_len, cycle_start);
    let cycle = out.split_off(cycle_start);
    let result = if was_finite && cycle.iter().all(|&d| d == 0) {
        DigitString::finite(base, out)?
    } else {
        DigitString::new(base, out, cycle)?
    };
    debug_assert!(result.is_restricted());
    debug_assert_eq!(result.value(), value);
    Ok(result)
}

/// A restricted representation of any `y` in `[2/(s-1), 1]`, via the
/// reflection `y -> (s+1)/(s-1) - y` for values below `3/s`.
pub fn restricted_in_maximal_interval(base: Base, y: &Rational) -> Result<DigitString> {
    let s = base.s() as i64;
    let low = ratio(2, s - 1);
    if y < &low || y > &Rational::one() {
        return Err(Error::Domain(format!(
            "{} is outside [2/({s}-1), 1]",
            format_ratio(y)
        )));
    }
    if y >= &ratio(3, s) {
        to_restricted_digits(&classical_expansion(base, y)?)
    } else {
        let mirrored = base.hull_max() - y;
        Ok(to_restricted_digits(&classical_expansion(base, &mirrored)?)?.inverted())
    }
}
