use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::base::Base;
use crate::distribution::{DigitLaw, Weights};
use crate::error::Result;
use crate::limits::Limits;
use crate::rational::{pow, to_f64, Rational};
use crate::sampling::truncated::tail_radius;

/// Bounds `lo <= F(at) <= hi` on the CDF of the full series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CdfBracket {
    #[serde(with = "crate::rational::text")]
    pub at: Rational,
    pub lo: f64,
    pub hi: f64,
    /// The same bounds without rounding, for exact laws.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<ExactBracket>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactBracket {
    #[serde(with = "crate::rational::text")]
    pub lo: Rational,
    #[serde(with = "crate::rational::text")]
    pub hi: Rational,
}

/// `P(S_depth <= x)` for the partial sum `S_depth`.
///
/// Tracks the remainders `y_n = s^n (x - S_n)`: a path is settled below
/// once `y_n` reaches the largest possible scaled rest, and dead once it is
/// negative. The live remainders all share the fractional part of
/// `s^n x` and sit inside `[0, (s+1)/(s-1))`, so only a handful survive.
trait Mass: Clone {
    fn none() -> Self;
    fn all() -> Self;
    fn absorb(&mut self, other: Self);
}

impl Mass for f64 {
    fn none() -> Self {
        0.0
    }
    fn all() -> Self {
        1.0
    }
    fn absorb(&mut self, other: Self) {
        *self += other;
    }
}

impl Mass for Rational {
    fn none() -> Self {
        Zero::zero()
    }
    fn all() -> Self {
        One::one()
    }
    fn absorb(&mut self, other: Self) {
        *self += other;
    }
}

fn truncated_cdf<P, M>(
    base: Base,
    support: &[u32],
    depth: usize,
    x: &Rational,
    limits: &Limits,
    mul: M,
) -> Result<P>
where
    P: Mass,
    M: Fn(&P, u32) -> P,
{
    let zero = P::none();
    let one = P::all();
    let add = |a: &mut P, b: P| a.absorb(b);
    if x.is_negative() {
        return Ok(zero);
    }
    let s = base.s();
    let sr = Rational::from_integer(BigInt::from(s));
    let top = base.hull_max();
    let mut settled = zero.clone();
    let mut live: BTreeMap<Rational, P> = BTreeMap::new();
    live.insert(x.clone(), one);
    for n in 0..depth {
        let rest = &top * (Rational::one() - Rational::new(BigInt::one(), pow(s, depth - n)));
        let mut next: BTreeMap<Rational, P> = BTreeMap::new();
        for (y, w) in live {
            if y >= rest {
                add(&mut settled, w);
                continue;
            }
            let sy = &y * &sr;
            for &d in support {
                let child = &sy - Rational::from_integer(BigInt::from(d));
                if child.is_negative() {
                    continue;
                }
                let mass = mul(&w, d);
                match next.get_mut(&child) {
                    Some(slot) => add(slot, mass),
                    None => {
                        next.insert(child, mass);
                    }
                }
            }
        }
        limits.check("cdf remainders", next.len())?;
        live = next;
    }
    for (_, w) in live {
        add(&mut settled, w);
    }
    Ok(settled)
}

fn cdf_exact(
    law: &DigitLaw,
    p: &[Rational],
    depth: usize,
    x: &Rational,
    limits: &Limits,
) -> Result<Rational> {
    truncated_cdf(
        law.base(),
        &law.support(),
        depth,
        x,
        limits,
        |w: &Rational, d| w * &p[d as usize],
    )
}

fn cdf_float(law: &DigitLaw, depth: usize, x: &Rational, limits: &Limits) -> Result<f64> {
    let p = law.probs();
    let v = truncated_cdf(
        law.base(),
        &law.support(),
        depth,
        x,
        limits,
        |w: &f64, d| w * p[d as usize],
    )?;
    Ok(v.clamp(0.0, 1.0))
}

pub fn cdf_bracket(law: &DigitLaw, depth: usize, x: &Rational) -> Result<CdfBracket> {
    cdf_bracket_with_limits(law, depth, x, &Limits::default())
}

/// `[F_N(x - r), F_N(x)]` with `F_N` the CDF of the depth-`N` partial sum
/// and `r` the largest possible remainder.
pub fn cdf_bracket_with_limits(
    law: &DigitLaw,
    depth: usize,
    x: &Rational,
    limits: &Limits,
) -> Result<CdfBracket> {
    let shifted = x - tail_radius(law.base(), depth);
    match law.weights() {
        Weights::Exact(p) => {
            let lo = cdf_exact(law, p, depth, &shifted, limits)?;
            let hi = cdf_exact(law, p, depth, x, limits)?;
            Ok(CdfBracket {
                at: x.clone(),
                lo: to_f64(&lo),
                hi: to_f64(&hi),
                exact: Some(ExactBracket { lo, hi }),
            })
        }
        Weights::Float(_) => {
            let lo = cdf_float(law, depth, &shifted, limits)?;
            let hi = cdf_float(law, depth, x, limits)?;
            Ok(CdfBracket {
                at: x.clone(),
                lo: lo.min(hi),
                hi,
                exact: None,
            })
        }
    }
}
