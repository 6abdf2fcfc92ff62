use serde::{Deserialize, Serialize};

use crate::base::Base;
use crate::error::{Error, Result};
use crate::geometry::cover::{boundary_box_count, walk_levels};
use crate::limits::Limits;

/// Contraction ratios of a self-similar family.
#[derive(Debug, Clone, PartialEq)]
pub enum RatioFamily {
    Finite(Vec<f64>),
    /// `families` copies of each ratio `s^-i`, `i >= 1`.
    Geometric {
        s: u32,
        families: u32,
    },
}

impl RatioFamily {
    /// The family of copies in the decomposition of `E_s`.
    pub fn boundary(base: Base) -> Self {
        RatioFamily::Geometric {
            s: base.s(),
            families: 2,
        }
    }

    /// `sum r_i^x`.
    fn moran_sum(&self, x: f64) -> f64 {
        match self {
            RatioFamily::Finite(r) => r.iter().map(|r| r.powf(x)).sum(),
            RatioFamily::Geometric { s, families } => {
                let q = (*s as f64).powf(-x);
                *families as f64 * q / (1.0 - q)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            RatioFamily::Finite(r) => {
                if r.is_empty() || r.iter().any(|&v| !(v > 0.0 && v < 1.0)) {
                    return Err(Error::Domain("ratios must lie in (0, 1)".into()));
                }
            }
            RatioFamily::Geometric { s, families } => {
                if *s < 2 || *families == 0 {
                    return Err(Error::Domain(
                        "geometric family needs s >= 2 and a family".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

const BRACKET_LO: f64 = 1e-9;
const BRACKET_HI: f64 = 1.0;
const TOLERANCE: f64 = 1e-12;
const MAX_ITERATIONS: usize = 200;

/// Root of `sum r_i^x = 1` in `[1e-9, 1]` by bisection.
pub fn similarity_dimension(family: &RatioFamily) -> Result<f64> {
    family.validate()?;
    let g = |x: f64| family.moran_sum(x) - 1.0;
    let (mut lo, mut hi) = (BRACKET_LO, BRACKET_HI);
    let (glo, ghi) = (g(lo), g(hi));
    if glo < 0.0 || ghi > 0.0 {
        return Err(Error::Domain(format!(
            "no root of the Moran equation in [{BRACKET_LO}, {BRACKET_HI}]"
        )));
    }
    if ghi == 0.0 {
        return Ok(hi);
    }
    for _ in 0..MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < TOLERANCE * 0.01 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxCount {
    pub depth: usize,
    pub boxes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxCountEstimate {
    pub slope: f64,
    pub counts: Vec<BoxCount>,
}

pub fn box_counting_estimate(base: Base, depths: &[usize]) -> Result<BoxCountEstimate> {
    box_counting_estimate_with_limits(base, depths, &Limits::default())
}

/// Least-squares slope of `ln N_k` against `k ln s`, where `N_k` counts the
/// grid boxes of side `s^-k` meeting the rank-`k` cover minus the open
/// certified interior.
pub fn box_counting_estimate_with_limits(
    base: Base,
    depths: &[usize],
    limits: &Limits,
) -> Result<BoxCountEstimate> {
    if depths.len() < 2 {
        return Err(Error::InvalidArgument("need at least two depths".into()));
    }
    if depths.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "depths must be strictly increasing".into(),
        ));
    }
    let max_depth = *depths.last().expect("non-empty");
    let box_side = base.s() as i128 - 1;
    let mut counts = Vec::with_capacity(depths.len());
    walk_levels(base, max_depth, true, limits, |cover, interior| {
        if depths.contains(&cover.level) {
            let interior = interior.expect("interior requested");
            counts.push(BoxCount {
                depth: cover.level,
                boxes: boundary_box_count(cover, interior, box_side),
            });
        }
        Ok(())
    })?;

    let ln_s = (base.s() as f64).ln();
    let xs: Vec<f64> = counts.iter().map(|c| c.depth as f64 * ln_s).collect();
    let ys: Vec<f64> = counts
        .iter()
        .map(|c| (c.boxes.max(1) as f64).ln())
        .collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(BoxCountEstimate {
        slope: sxy / sxx,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closed_form(s: u32) -> f64 {
        3f64.ln() / (s as f64).ln()
    }

    #[test]
    fn boundary_family_matches_closed_form() {
        for s in [4u32, 6, 8, 10] {
            let d = similarity_dimension(&RatioFamily::boundary(Base::new(s).unwrap())).unwrap();
            assert!((d - closed_form(s)).abs() < 1e-12, "s={s}: {d}");
        }
        let d = similarity_dimension(&RatioFamily::boundary(Base::new(4).unwrap())).unwrap();
        assert!((d - 0.7924812503605781).abs() < 1e-12);
    }

    #[test]
    fn finite_families() {
        let d = similarity_dimension(&RatioFamily::Finite(vec![0.5, 0.5])).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
        let d = similarity_dimension(&RatioFamily::Finite(vec![1.0 / 3.0, 1.0 / 3.0])).unwrap();
        assert!((d - 2f64.ln() / 3f64.ln()).abs() < 1e-12);
        assert!(similarity_dimension(&RatioFamily::Finite(vec![0.9, 0.9])).is_err());
        assert!(similarity_dimension(&RatioFamily::Finite(vec![1.5])).is_err());
    }

    #[test]
    fn box_counts_small() {
        let est = box_counting_estimate(Base::new(4).unwrap(), &[2, 3, 4]).unwrap();
        let boxes: Vec<u64> = est.counts.iter().map(|c| c.boxes).collect();
        assert_eq!(boxes, vec![18, 54, 162]);
        assert!((est.slope - closed_form(4)).abs() < 0.05);
    }

    #[test]
    fn needs_two_depths() {
        let b = Base::new(4).unwrap();
        assert!(box_counting_estimate(b, &[5]).is_err());
        assert!(box_counting_estimate(b, &[5, 4]).is_err());
    }
}
