//! Membership in the restricted-digit set `E_s` for exact rationals.
//!
//! A prefix `c_1..c_k` covers `x` iff the remainder `y = s^k (x - a_c)` lies
//! in the hull `H = [0, (s+1)/(s-1)]`. Prefixes with equal remainders have
//! identical futures, so the search runs over distinct remainders level by
//! level. For rational `x` the remainders have bounded denominators, hence
//! finitely many exist and a surviving path must eventually repeat one.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::base::Base;
use crate::digits::convert::restricted_in_maximal_interval;
use crate::digits::string::DigitString;
use crate::error::Result;
use crate::limits::Limits;
use crate::rational::{inv_pow, ratio, Rational, RationalInterval};

/// Why a point is known to lie outside `E_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separator {
    /// The point is outside the hull `H`.
    OutsideHull { hull: RationalInterval },
    /// An open interval around the point that misses every rank-`level`
    /// restricted cylinder.
    Gap {
        open: RationalInterval,
        level: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// Found a restricted expansion evaluating exactly to the point.
    Inside {
        witness: DigitString,
    },
    Excluded(Separator),
    /// Still covered at the requested depth. `margin` is a lower bound on
    /// the distance from the point to the complement of the rank-`depth`
    /// cover; `live` counts the distinct remainders still in play.
    Undecided {
        depth: usize,
        live: usize,
        margin: Rational,
    },
}

/// One remainder at some level, with a back pointer into the previous level.
struct Node {
    y: Rational,
    parent: usize,
    digit: u32,
}

fn children<'a>(
    base: Base,
    y: &'a Rational,
    alphabet: &'a [u32],
) -> impl Iterator<Item = (u32, Rational)> + 'a {
    let sy = y * Rational::from_integer(base.s().into());
    let top = base.hull_max();
    alphabet.iter().filter_map(move |&d| {
        let next = &sy - Rational::from_integer(d.into());
        (next >= Rational::zero() && next <= top).then_some((d, next))
    })
}

fn path_digits(levels: &[Vec<Node>], level: usize, mut idx: usize) -> Vec<u32> {
    let mut digits = Vec::with_capacity(level);
    for k in (1..=level).rev() {
        let node = &levels[k][idx];
        digits.push(node.digit);
        idx = node.parent;
    }
    digits.reverse();
    digits
}

/// Level at which the path ending in `levels[level][idx]` first visited
/// the same remainder, if it did.
fn repeated_ancestor(levels: &[Vec<Node>], level: usize, idx: usize) -> Option<usize> {
    let y = &levels[level][idx].y;
    let mut cur = idx;
    for k in (1..=level).rev() {
        cur = levels[k][cur].parent;
        if &levels[k - 1][cur].y == y {
            return Some(k - 1);
        }
    }
    None
}

pub fn membership_probe(base: Base, x: &Rational, depth: usize) -> Result<Membership> {
    membership_probe_with_limits(base, x, depth, &Limits::default())
}

/// Breadth-first semi-decision of `x in E_s` over restricted prefixes up to
/// rank `depth`.
pub fn membership_probe_with_limits(
    base: Base,
    x: &Rational,
    depth: usize,
    limits: &Limits,
) -> Result<Membership> {
    let hull = base.hull();
    if !hull.contains(x) {
        return Ok(Membership::Excluded(Separator::OutsideHull { hull }));
    }
    let s = base.s() as i64;
    let interval = RationalInterval::new_unchecked(ratio(2, s - 1), Rational::one());
    let alphabet = base.restricted_alphabet();

    let mut levels: Vec<Vec<Node>> = vec![vec![Node {
        y: x.clone(),
        parent: 0,
        digit: 0,
    }]];
    for k in 0..=depth {
        let current = &levels[k];
        if let Some(idx) = current.iter().position(|n| interval.contains(&n.y)) {
            let tail = restricted_in_maximal_interval(base, &current[idx].y)?;
            let witness = tail.prepended(&path_digits(&levels, k, idx))?;
            return Ok(Membership::Inside { witness });
        }
        for idx in 0..current.len() {
            if let Some(j) = repeated_ancestor(&levels, k, idx) {
                let mut pre = path_digits(&levels, k, idx);
                let period = pre.split_off(j);
                let witness = DigitString::new(base, pre, period)?;
                return Ok(Membership::Inside { witness });
            }
        }
        if k == depth {
            break;
        }
        let mut next: BTreeMap<Rational, (usize, u32)> = BTreeMap::new();
        for (idx, node) in current.iter().enumerate() {
            for (d, y) in children(base, &node.y, &alphabet) {
                next.entry(y).or_insert((idx, d));
            }
        }
        limits.check("membership frontier", next.len())?;
        if next.is_empty() {
            let open = separating_gap(base, x, k + 1, limits)?;
            return Ok(Membership::Excluded(Separator::Gap { open, level: k + 1 }));
        }
        levels.push(
            next.into_iter()
                .map(|(y, (parent, digit))| Node { y, parent, digit })
                .collect(),
        );
    }

    let last = &levels[depth];
    let top = base.hull_max();
    let best = last
        .iter()
        .map(|n| {
            let right = &top - &n.y;
            if n.y < right {
                n.y.clone()
            } else {
                right
            }
        })
        .max()
        .unwrap_or_else(Rational::zero);
    Ok(Membership::Undecided {
        depth,
        live: last.len(),
        margin: best * inv_pow(base.s(), depth),
    })
}

/// The component of the complement of the rank-`level` cover that holds
/// `x`, assuming `x` is covered at rank `level - 1` but not at `level`.
///
/// That component lies inside a rank-`(level-1)` cylinder containing `x`
/// (its extreme children touch its endpoints), so only cylinders meeting a
/// window of one parent width around `x` matter.
fn separating_gap(
    base: Base,
    x: &Rational,
    level: usize,
    limits: &Limits,
) -> Result<RationalInterval> {
    let s = base.s();
    let top = base.hull_max();
    let reach = &top * inv_pow(s, level - 1);
    let window = RationalInterval::new_unchecked(x - &reach, x + &reach);
    let alphabet = base.restricted_alphabet();

    let mut lefts = vec![Rational::zero()];
    for j in 1..=level {
        let step = inv_pow(s, j);
        let width = &top * &step;
        let mut next = BTreeMap::new();
        for a in &lefts {
            for &d in &alphabet {
                let lo = a + &step * Rational::from_integer(d.into());
                let hi = &lo + &width;
                if RationalInterval::new_unchecked(lo.clone(), hi).intersects(&window) {
                    next.insert(lo, ());
                }
            }
        }
        limits.check("gap window prefixes", next.len())?;
        lefts = next.into_keys().collect();
    }

    let width = &top * inv_pow(s, level);
    let mut left: Option<Rational> = None;
    let mut right: Option<Rational> = None;
    for lo in lefts {
        let hi = &lo + &width;
        if &hi < x {
            if left.as_ref().is_none_or(|l| &hi > l) {
                left = Some(hi);
            }
        } else if &lo > x && right.as_ref().is_none_or(|r| &lo < r) {
            right = Some(lo);
        }
    }
    let left = left.unwrap_or_else(|| window.lo().clone());
    let right = right.unwrap_or_else(|| window.hi().clone());
    Ok(RationalInterval::new_unchecked(left, right))
}

pub fn count_prefixes(base: Base, x: &Rational, depth: usize, restricted: bool) -> Result<BigUint> {
    count_prefixes_with_limits(base, x, depth, restricted, &Limits::default())
}

/// Number of rank-`depth` prefixes (over the full or the restricted
/// alphabet) whose cylinder contains `x`.
pub fn count_prefixes_with_limits(
    base: Base,
    x: &Rational,
    depth: usize,
    restricted: bool,
    limits: &Limits,
) -> Result<BigUint> {
    if !base.hull().contains(x) {
        return Ok(BigUint::zero());
    }
    let alphabet = if restricted {
        base.restricted_alphabet()
    } else {
        base.alphabet()
    };
    let mut frontier: BTreeMap<Rational, BigUint> = BTreeMap::new();
    frontier.insert(x.clone(), BigUint::one());
    for _ in 0..depth {
        let mut next: BTreeMap<Rational, BigUint> = BTreeMap::new();
        for (y, count) in &frontier {
            for (_, child) in children(base, y, &alphabet) {
                *next.entry(child).or_insert_with(BigUint::zero) += count;
            }
        }
        limits.check("prefix-count frontier", next.len())?;
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(frontier.into_values().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::integer;

    fn b(s: u32) -> Base {
        Base::new(s).unwrap()
    }

    #[test]
    fn unique_representation_point_is_inside() {
        match membership_probe(b(4), &ratio(11, 15), 4).unwrap() {
            Membership::Inside { witness } => {
                assert_eq!(witness.to_string(), "(2.3)");
                assert_eq!(witness.value(), ratio(11, 15));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn gap_point_is_excluded_with_depth_one_gap() {
        match membership_probe(b(4), &ratio(11, 24), 3).unwrap() {
            Membership::Excluded(Separator::Gap { open, level }) => {
                assert_eq!(level, 1);
                assert_eq!(open.lo(), &ratio(5, 12));
                assert_eq!(open.hi(), &ratio(1, 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn maximal_interval_point_is_inside() {
        let m = membership_probe(b(4), &ratio(5, 6), 1).unwrap();
        let Membership::Inside { witness } = m else {
            panic!("expected inside")
        };
        assert!(witness.is_restricted());
        assert_eq!(witness.value(), ratio(5, 6));
    }

    #[test]
    fn cylinder_endpoint_found_through_a_cycle() {
        let m = membership_probe(b(4), &ratio(5, 12), 5).unwrap();
        let Membership::Inside { witness } = m else {
            panic!("expected inside")
        };
        assert_eq!(witness.to_string(), "0.(5)");
    }

    #[test]
    fn outside_hull() {
        assert!(matches!(
            membership_probe(b(4), &integer(-1), 3).unwrap(),
            Membership::Excluded(Separator::OutsideHull { .. })
        ));
        assert!(matches!(
            membership_probe(b(4), &integer(2), 3).unwrap(),
            Membership::Excluded(Separator::OutsideHull { .. })
        ));
    }

    #[test]
    fn deep_gap_is_found() {
        // Inside the first gap of the copy w_0: w_0((5/12 + 1/2)/2).
        let x = ratio(11, 24) / integer(4);
        match membership_probe(b(4), &x, 6).unwrap() {
            Membership::Excluded(Separator::Gap { open, level }) => {
                assert_eq!(level, 2);
                assert_eq!(open.lo(), &ratio(5, 48));
                assert_eq!(open.hi(), &ratio(1, 8));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn prefix_counts() {
        assert_eq!(
            count_prefixes(b(4), &ratio(11, 15), 4, true).unwrap(),
            BigUint::one()
        );
        assert!(count_prefixes(b(4), &ratio(4, 15), 2, false).unwrap() >= BigUint::from(2u32));
        assert_eq!(
            count_prefixes(b(4), &integer(-1), 5, false).unwrap(),
            BigUint::zero()
        );
        assert_eq!(
            count_prefixes(b(4), &ratio(11, 24), 1, true).unwrap(),
            BigUint::zero()
        );
    }
}
