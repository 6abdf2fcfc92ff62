//! Rank-`k` covers on an integer grid.
//!
//! At level `k` every coordinate is an integer multiple of
//! `1 / (s^k (s-1))`, so a rank-`k` cylinder `[a_c, a_c + s^-k (s+1)/(s-1)]`
//! becomes an integer interval of length `s+1` and the level-`k` cover is
//! the union of shifts of the level-`(k-1)` cover by `i s^(k-1) (s-1)` for
//! `i` in the restricted alphabet.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::base::Base;
use crate::error::{Error, Result};
use crate::geometry::union::IntervalUnion;
use crate::limits::Limits;
use crate::rational::{Rational, RationalInterval};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct GridUnion {
    pub level: usize,
    /// `s^level (s-1)`, the common denominator.
    pub unit: i128,
    pub parts: Vec<(i128, i128)>,
}

impl GridUnion {
    fn rational(&self, v: i128) -> Rational {
        BigRational::new(BigInt::from(v), BigInt::from(self.unit))
    }

    pub fn to_union(&self) -> IntervalUnion {
        IntervalUnion::from_sorted_disjoint(
            self.parts
                .iter()
                .map(|&(a, b)| RationalInterval::new_unchecked(self.rational(a), self.rational(b)))
                .collect(),
        )
    }

    pub fn length(&self) -> Rational {
        self.rational(self.parts.iter().map(|&(a, b)| b - a).sum())
    }
}

fn merge(mut parts: Vec<(i128, i128)>) -> Vec<(i128, i128)> {
    parts.sort_unstable();
    let mut out: Vec<(i128, i128)> = Vec::with_capacity(parts.len());
    for (a, b) in parts {
        match out.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}

fn check_grid(base: Base, depth: usize) -> Result<()> {
    let s = base.s() as i128;
    let overflow = || Error::Resource {
        what: "cover grid coordinates",
        needed: u128::MAX,
        limit: i128::MAX as u128,
    };
    let exp = u32::try_from(depth).map_err(|_| overflow())?;
    s.checked_pow(exp)
        .and_then(|p| p.checked_mul(s + 1))
        .and_then(|p| p.checked_mul(s + 1))
        .ok_or_else(overflow)?;
    Ok(())
}

/// Walks the levels `0..=depth` of the cover (and, when `with_interior` is
/// set, of the certified interior), handing each level to `visit`.
///
/// The certified interior at level `k` is the maximal interval together
/// with the shifts of the level-`(k-1)` interior, i.e. the union of all
/// images of `[2/(s-1), 1]` under compositions of at most `k` maps.
pub(crate) fn walk_levels<F>(
    base: Base,
    depth: usize,
    with_interior: bool,
    limits: &Limits,
    mut visit: F,
) -> Result<()>
where
    F: FnMut(&GridUnion, Option<&GridUnion>) -> Result<()>,
{
    check_grid(base, depth)?;
    let s = base.s() as i128;
    let alphabet: Vec<i128> = base
        .restricted_alphabet()
        .into_iter()
        .map(i128::from)
        .collect();
    let mut cover = GridUnion {
        level: 0,
        unit: s - 1,
        parts: vec![(0, s + 1)],
    };
    let mut interior = with_interior.then(|| GridUnion {
        level: 0,
        unit: s - 1,
        parts: vec![(2, s - 1)],
    });
    visit(&cover, interior.as_ref())?;
    let mut scale = 1i128;
    for level in 1..=depth {
        let shift = scale * (s - 1);
        scale *= s;
        limits.check(
            "cover intervals",
            cover.parts.len().saturating_mul(alphabet.len()),
        )?;
        let spread = |src: &[(i128, i128)]| -> Vec<(i128, i128)> {
            alphabet
                .iter()
                .flat_map(|&i| {
                    src.iter()
                        .map(move |&(a, b)| (a + i * shift, b + i * shift))
                })
                .collect()
        };
        cover = GridUnion {
            level,
            unit: scale * (s - 1),
            parts: merge(spread(&cover.parts)),
        };
        if let Some(prev) = interior.take() {
            let mut parts = spread(&prev.parts);
            parts.push((2 * scale, (s - 1) * scale));
            interior = Some(GridUnion {
                level,
                unit: cover.unit,
                parts: merge(parts),
            });
        }
        visit(&cover, interior.as_ref())?;
    }
    Ok(())
}

fn cover_grid(base: Base, depth: usize, limits: &Limits) -> Result<GridUnion> {
    let mut last = None;
    walk_levels(base, depth, false, limits, |c, _| {
        if c.level == depth {
            last = Some(c.clone());
        }
        Ok(())
    })?;
    Ok(last.expect("the last level is always visited"))
}

pub fn cylinder_cover(base: Base, depth: usize) -> Result<IntervalUnion> {
    cylinder_cover_with_limits(base, depth, &Limits::default())
}

/// Union of all restricted rank-`depth` cylinders.
pub fn cylinder_cover_with_limits(
    base: Base,
    depth: usize,
    limits: &Limits,
) -> Result<IntervalUnion> {
    Ok(cover_grid(base, depth, limits)?.to_union())
}

pub fn gaps(base: Base, depth: usize) -> Result<IntervalUnion> {
    gaps_with_limits(base, depth, &Limits::default())
}

/// Open complement of the rank-`depth` cover inside the hull.
pub fn gaps_with_limits(base: Base, depth: usize, limits: &Limits) -> Result<IntervalUnion> {
    Ok(cylinder_cover_with_limits(base, depth, limits)?.complement_within(&base.hull()))
}

pub fn interior_measure_estimate(base: Base, depth: usize) -> Result<Rational> {
    interior_measure_estimate_with_limits(base, depth, &Limits::default())
}

/// Total length of the rank-`depth` cover, an upper bound for the measure
/// of `E_s`.
pub fn interior_measure_estimate_with_limits(
    base: Base,
    depth: usize,
    limits: &Limits,
) -> Result<Rational> {
    Ok(cover_grid(base, depth, limits)?.length())
}

/// One row of the per-depth cover table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverRow {
    pub depth: usize,
    pub count: usize,
    #[serde(with = "crate::rational::text")]
    pub measure: Rational,
}

/// Component count and total length of the cover for each depth up to
/// `max_depth`.
pub fn cover_table(base: Base, max_depth: usize, limits: &Limits) -> Result<Vec<CoverRow>> {
    let mut rows = Vec::with_capacity(max_depth + 1);
    walk_levels(base, max_depth, false, limits, |c, _| {
        rows.push(CoverRow {
            depth: c.level,
            count: c.parts.len(),
            measure: c.length(),
        });
        Ok(())
    })?;
    Ok(rows)
}

/// Number of grid boxes `[j s^-k, (j+1) s^-k)` meeting the level-`k` cover
/// minus the open interior parts.
pub(crate) fn boundary_box_count(cover: &GridUnion, interior: &GridUnion, box_side: i128) -> u64 {
    let mut count = 0u64;
    let mut last_box: Option<i128> = None;
    let mut mark = |a: i128, b: i128| {
        let first = a.div_euclid(box_side);
        let end = b.div_euclid(box_side);
        let start = match last_box {
            Some(l) if l >= first => l + 1,
            _ => first,
        };
        if end >= start {
            count += (end - start + 1) as u64;
            last_box = Some(end);
        }
    };
    let holes = &interior.parts;
    let mut j = 0usize;
    for &(a, b) in &cover.parts {
        let mut cur = a;
        while j < holes.len() && holes[j].1 <= cur {
            j += 1;
        }
        let mut jj = j;
        let mut open = true;
        while jj < holes.len() && holes[jj].0 < b {
            let (c, d) = holes[jj];
            if c >= cur {
                mark(cur, c);
            }
            cur = cur.max(d);
            jj += 1;
            if cur >= b {
                open = cur == b;
                break;
            }
        }
        if open && cur <= b {
            mark(cur, b);
        }
    }
    count
}
