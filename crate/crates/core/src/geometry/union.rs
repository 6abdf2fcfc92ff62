use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::rational::{Rational, RationalInterval};

/// Sorted union of pairwise disjoint intervals with `parts[i].hi <
/// parts[i+1].lo`. Covers are read as closed intervals, gap lists as open
/// ones.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntervalUnion {
    parts: Vec<RationalInterval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion::default()
    }

    /// Canonical union of closed intervals: sorts and merges any that
    /// overlap or touch.
    pub fn from_intervals<I: IntoIterator<Item = RationalInterval>>(items: I) -> Self {
        let mut items: Vec<RationalInterval> = items.into_iter().collect();
        items.sort_by(|a, b| a.lo().cmp(b.lo()));
        let mut parts: Vec<RationalInterval> = Vec::with_capacity(items.len());
        for iv in items {
            match parts.last_mut() {
                Some(last) if iv.lo() <= last.hi() => {
                    if iv.hi() > last.hi() {
                        *last = RationalInterval::new_unchecked(last.lo().clone(), iv.hi().clone());
                    }
                }
                _ => parts.push(iv),
            }
        }
        IntervalUnion { parts }
    }

    /// Wraps parts that are already canonical.
    pub(crate) fn from_sorted_disjoint(parts: Vec<RationalInterval>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0].hi() < w[1].lo()));
        IntervalUnion { parts }
    }

    pub fn parts(&self) -> &[RationalInterval] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total_length(&self) -> Rational {
        self.parts
            .iter()
            .fold(Rational::zero(), |acc, p| acc + p.width())
    }

    /// Membership in the closed union.
    pub fn contains(&self, x: &Rational) -> bool {
        let idx = self.parts.partition_point(|p| p.hi() < x);
        self.parts.get(idx).is_some_and(|p| p.contains(x))
    }

    /// Membership in the union of the open parts.
    pub fn contains_open(&self, x: &Rational) -> bool {
        let idx = self.parts.partition_point(|p| p.hi() <= x);
        self.parts.get(idx).is_some_and(|p| p.contains_open(x))
    }

    /// Whether a closed interval sits inside a single part.
    pub fn covers_interval(&self, iv: &RationalInterval) -> bool {
        let idx = self.parts.partition_point(|p| p.hi() < iv.lo());
        self.parts.get(idx).is_some_and(|p| iv.is_subset_of(p))
    }

    /// Set inclusion of closed unions.
    pub fn is_subset_of(&self, other: &IntervalUnion) -> bool {
        self.parts.iter().all(|p| other.covers_interval(p))
    }

    /// Open gaps of this closed union inside `hull`.
    pub fn complement_within(&self, hull: &RationalInterval) -> IntervalUnion {
        let mut gaps = Vec::new();
        let mut cursor = hull.lo().clone();
        for p in &self.parts {
            if p.lo() > &cursor && &cursor < hull.hi() {
                let end = p.lo().min(hull.hi()).clone();
                gaps.push(RationalInterval::new_unchecked(cursor.clone(), end));
            }
            if p.hi() > &cursor {
                cursor = p.hi().clone();
            }
        }
        if &cursor < hull.hi() {
            gaps.push(RationalInterval::new_unchecked(cursor, hull.hi().clone()));
        }
        IntervalUnion { parts: gaps }
    }

    /// Image under an order-reversing map `x -> c - x`.
    pub fn reflected(&self, center_sum: &Rational) -> IntervalUnion {
        let parts = self
            .parts
            .iter()
            .rev()
            .map(|p| RationalInterval::new_unchecked(center_sum - p.hi(), center_sum - p.lo()))
            .collect();
        IntervalUnion { parts }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn iv(a: (i64, i64), b: (i64, i64)) -> RationalInterval {
        RationalInterval::new(ratio(a.0, a.1), ratio(b.0, b.1)).unwrap()
    }

    #[test]
    fn merges_touching_and_overlapping() {
        let u = IntervalUnion::from_intervals(vec![
            iv((3, 4), (7, 6)),
            iv((0, 1), (5, 12)),
            iv((1, 2), (11, 12)),
            iv((5, 4), (5, 3)),
        ]);
        assert_eq!(
            u.parts(),
            &[iv((0, 1), (5, 12)), iv((1, 2), (7, 6)), iv((5, 4), (5, 3))]
        );
        assert_eq!(u.total_length(), ratio(3, 2));
    }

    #[test]
    fn complement_and_membership() {
        let u = IntervalUnion::from_intervals(vec![iv((0, 1), (1, 4)), iv((1, 2), (1, 1))]);
        let gaps = u.complement_within(&iv((0, 1), (1, 1)));
        assert_eq!(gaps.parts(), &[iv((1, 4), (1, 2))]);
        assert!(u.contains(&ratio(1, 4)));
        assert!(!u.contains(&ratio(1, 3)));
        assert!(gaps.contains_open(&ratio(1, 3)));
        assert!(!gaps.contains_open(&ratio(1, 4)));
    }

    #[test]
    fn subset_needs_single_part_containment() {
        let big = IntervalUnion::from_intervals(vec![iv((0, 1), (1, 2)), iv((3, 4), (1, 1))]);
        let small = IntervalUnion::from_intervals(vec![iv((1, 8), (1, 4))]);
        let straddle = IntervalUnion::from_intervals(vec![iv((1, 4), (7, 8))]);
        assert!(small.is_subset_of(&big));
        assert!(!straddle.is_subset_of(&big));
    }

    #[test]
    fn reflection_reverses_order() {
        let u = IntervalUnion::from_intervals(vec![iv((0, 1), (1, 4)), iv((1, 2), (1, 1))]);
        let r = u.reflected(&ratio(1, 1));
        assert_eq!(r.parts(), &[iv((0, 1), (1, 2)), iv((3, 4), (1, 1))]);
    }
}
