use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::base::Base;
use crate::digits::prefix_value;
use crate::error::{Error, Result};
use crate::rational::{integer, inv_pow, ratio, Rational, RationalInterval};

/// The similarity `x -> offset + scale * x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IfsMap {
    pub digit: u32,
    #[serde(with = "crate::rational::text")]
    pub scale: Rational,
    #[serde(with = "crate::rational::text")]
    pub offset: Rational,
}

impl IfsMap {
    pub fn apply(&self, x: &Rational) -> Rational {
        &self.offset + &self.scale * x
    }
}

/// The maps `w_i(x) = (i + x) / s` for `i` in the restricted alphabet.
pub fn ifs_maps(base: Base) -> Vec<IfsMap> {
    let s = base.s() as i64;
    base.restricted_alphabet()
        .into_iter()
        .map(|i| IfsMap {
            digit: i,
            scale: ratio(1, s),
            offset: ratio(i as i64, s),
        })
        .collect()
}

/// `[2/(s-1), 1]`.
pub fn maximal_interval(base: Base) -> RationalInterval {
    RationalInterval::new_unchecked(ratio(2, base.s() as i64 - 1), Rational::one())
}

/// `x -> (s+1)/(s-1) - x`, the reflection induced by digit inversion.
pub fn symmetry_map(base: Base, x: &Rational) -> Rational {
    base.hull_max() - x
}

/// A similar copy of `E_s`: `x -> offset + ratio * x`, or
/// `x -> offset + ratio * ((s+1)/(s-1) - x)` when reflected. `offset` is the
/// left end of the copy's bounding box either way.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineCopy {
    #[serde(with = "crate::rational::text")]
    pub ratio: Rational,
    #[serde(with = "crate::rational::text")]
    pub offset: Rational,
    pub reflected: bool,
    /// Digits of the cylinder that equals the bounding box.
    pub anchor: Vec<u32>,
    pub bounding_box: RationalInterval,
}

impl AffineCopy {
    pub fn apply(&self, base: Base, x: &Rational) -> Rational {
        let arg = if self.reflected {
            symmetry_map(base, x)
        } else {
            x.clone()
        };
        &self.offset + &self.ratio * arg
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopyPair {
    pub index: usize,
    pub left: AffineCopy,
    pub right: AffineCopy,
}

impl CopyPair {
    /// Pair `i`: the copy anchored at `2...2 0` (`i` twos) and its mirror
    /// anchored at `(s-1)...(s-1) (s+1)`.
    pub fn new(base: Base, index: usize) -> Self {
        let s = base.s();
        let top = base.hull_max();
        let r = inv_pow(s, index + 1);
        let width = &r * &top;

        let mut anchor = vec![2; index];
        anchor.push(0);
        let offset = prefix_value(s, &anchor);
        let left = AffineCopy {
            ratio: r.clone(),
            bounding_box: RationalInterval::new_unchecked(offset.clone(), &offset + &width),
            offset,
            reflected: false,
            anchor,
        };

        let mut anchor = vec![s - 1; index];
        anchor.push(s + 1);
        let hi = symmetry_map(base, &left.offset);
        let offset = &hi - &width;
        let right = AffineCopy {
            ratio: r,
            bounding_box: RationalInterval::new_unchecked(offset.clone(), hi),
            offset,
            reflected: true,
            anchor,
        };
        CopyPair { index, left, right }
    }
}

/// `E_s` as the open maximal interval plus pairs of similar copies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub base: Base,
    /// Read as the open interval.
    pub central: RationalInterval,
    pub copies: Vec<CopyPair>,
}

impl Decomposition {
    /// Every pair, lazily.
    pub fn pairs(base: Base) -> impl Iterator<Item = CopyPair> {
        (0..).map(move |i| CopyPair::new(base, i))
    }

    /// Sum of the ratios of the listed copies (both families).
    pub fn ratio_sum(&self) -> Rational {
        self.copies
            .iter()
            .map(|p| &p.left.ratio + &p.right.ratio)
            .sum()
    }

    /// Sum of the ratios of all copies not listed.
    pub fn tail_ratio_sum(&self) -> Rational {
        let s = self.base.s();
        integer(2) * inv_pow(s, self.copies.len()) / integer(s as i64 - 1)
    }

    /// Right side of the measure balance: `|central| + lambda * (ratio sum
    /// over all copies)`.
    pub fn balance(&self, lambda: &Rational) -> Rational {
        self.central.width() + (self.ratio_sum() + self.tail_ratio_sum()) * lambda
    }

    /// Distance from the bounding box of left copy `i` to that of copy `i+1`.
    pub fn spacing(base: Base, index: usize) -> Rational {
        let s = base.s() as i64;
        inv_pow(base.s(), index + 1) * ratio(s - 3, s - 1)
    }
}

/// The central interval and the first `count` pairs of copies.
pub fn decompose(base: Base, count: usize) -> Result<Decomposition> {
    if count == 0 {
        return Err(Error::InvalidArgument(
            "need at least one pair of copies".into(),
        ));
    }
    Ok(Decomposition {
        base,
        central: maximal_interval(base),
        copies: Decomposition::pairs(base).take(count).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digits::{cylinder_interval, eval_delta, DigitString, EvalDepth};

    fn b(s: u32) -> Base {
        Base::new(s).unwrap()
    }

    #[test]
    fn maps_per_base() {
        let offsets: Vec<Rational> = ifs_maps(b(4)).into_iter().map(|m| m.offset).collect();
        assert_eq!(
            offsets,
            vec![ratio(0, 1), ratio(1, 2), ratio(3, 4), ratio(5, 4)]
        );
        let maps = ifs_maps(b(6));
        assert_eq!(maps.len(), 6);
        assert_eq!(maps[5].offset, ratio(7, 6));
        for s in [4, 5, 6, 9] {
            let hull = b(s).hull();
            for m in ifs_maps(b(s)) {
                assert!(hull.contains(&m.apply(hull.lo())));
                assert!(hull.contains(&m.apply(hull.hi())));
            }
        }
    }

    #[test]
    fn maximal_interval_endpoints() {
        assert_eq!(
            maximal_interval(b(4)),
            RationalInterval::new(ratio(2, 3), integer(1)).unwrap()
        );
        assert_eq!(maximal_interval(b(6)).lo(), &ratio(2, 5));
        assert_eq!(maximal_interval(b(4)).width(), ratio(1, 3));
        for s in [4u32, 6, 8] {
            let lo = DigitString::new(b(s), vec![], vec![2]).unwrap();
            let hi = DigitString::new(b(s), vec![], vec![s - 1]).unwrap();
            let iv = maximal_interval(b(s));
            assert_eq!(&eval_delta(&lo, EvalDepth::Full).value, iv.lo());
            assert_eq!(&eval_delta(&hi, EvalDepth::Full).value, iv.hi());
        }
    }

    #[test]
    fn symmetry() {
        assert_eq!(symmetry_map(b(4), &integer(0)), ratio(5, 3));
        assert_eq!(symmetry_map(b(4), &ratio(5, 6)), ratio(5, 6));
        assert_eq!(symmetry_map(b(4), &ratio(2, 3)), integer(1));
    }

    #[test]
    fn copies_match_their_cylinders() {
        for s in [4u32, 6, 7] {
            let d = decompose(b(s), 5).unwrap();
            for pair in &d.copies {
                for copy in [&pair.left, &pair.right] {
                    let cyl = cylinder_interval(b(s), &copy.anchor).unwrap();
                    assert_eq!(cyl, copy.bounding_box);
                    let hull = b(s).hull();
                    let ends = [copy.apply(b(s), hull.lo()), copy.apply(b(s), hull.hi())];
                    assert!(ends.contains(cyl.lo()) && ends.contains(cyl.hi()));
                }
            }
        }
    }

    #[test]
    fn ratios_and_balance() {
        let d = decompose(b(4), 3).unwrap();
        let ratios: Vec<Rational> = d.copies.iter().map(|p| p.left.ratio.clone()).collect();
        assert_eq!(ratios, vec![ratio(1, 4), ratio(1, 16), ratio(1, 64)]);
        assert_eq!(d.ratio_sum() + d.tail_ratio_sum(), ratio(2, 3));
        assert_eq!(d.balance(&integer(1)), integer(1));
    }

    #[test]
    fn boxes_are_disjoint_and_spaced() {
        for s in [4u32, 6, 8] {
            let d = decompose(b(s), 6).unwrap();
            let c = &d.central;
            for w in d.copies.windows(2) {
                let (a, n) = (&w[0], &w[1]);
                assert_eq!(
                    n.left.bounding_box.lo() - a.left.bounding_box.hi(),
                    Decomposition::spacing(b(s), a.index)
                );
                assert_eq!(
                    a.right.bounding_box.lo() - n.right.bounding_box.hi(),
                    Decomposition::spacing(b(s), a.index)
                );
            }
            for p in &d.copies {
                assert!(p.left.bounding_box.hi() < c.lo());
                assert!(p.right.bounding_box.lo() > c.hi());
            }
        }
        assert_eq!(Decomposition::spacing(b(4), 0), ratio(1, 12));
    }

    #[test]
    fn zero_count_rejected() {
        assert!(decompose(b(4), 0).is_err());
    }
}
