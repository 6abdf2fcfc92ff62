use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::distribution::DigitLaw;
use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};
use crate::sampling::cdf::cdf_bracket;
use crate::sampling::draw::{digits_numerator, sample_many_digits};

/// Number of grid intervals; the grid has `GRID + 1` points over the hull.
pub const GRID: u32 = 256;
/// Confidence level of the band is `1 - DKW_ALPHA`.
pub const DKW_ALPHA: f64 = 0.001;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub x: f64,
    pub lo: f64,
    pub hi: f64,
    pub empirical: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalReport {
    /// Largest excursion of the empirical CDF outside the widened band;
    /// nonpositive means the sample stayed inside everywhere.
    pub statistic: f64,
    pub epsilon: f64,
    pub samples: usize,
    pub depth: usize,
    pub rows: Vec<CheckRow>,
}

/// `sqrt(ln(2 / alpha) / (2 n))`.
pub fn dkw_epsilon(samples: usize) -> f64 {
    ((2.0 / DKW_ALPHA).ln() / (2.0 * samples as f64)).sqrt()
}

pub fn empirical_check(
    law: &DigitLaw,
    depth: usize,
    samples: usize,
    seed: u64,
) -> Result<EmpiricalReport> {
    empirical_check_against(law, law, depth, samples, seed)
}

/// Draws from `sampled` and compares the empirical CDF on the grid with the
/// brackets of `reference`, widened by the DKW band.
pub fn empirical_check_against(
    sampled: &DigitLaw,
    reference: &DigitLaw,
    depth: usize,
    samples: usize,
    seed: u64,
) -> Result<EmpiricalReport> {
    if samples < 100 {
        return Err(Error::InvalidArgument("need at least 100 samples".into()));
    }
    let base = reference.base();
    if sampled.base() != base {
        return Err(Error::WrongBase {
            expected: base.s(),
            actual: sampled.base().s(),
        });
    }
    let s = base.s();
    // Sample S = num / s^depth against grid point x_i = i (s+1) / (GRID (s-1)):
    // S <= x_i iff num * GRID (s-1) <= i (s+1) s^depth.
    let scale = u128::from(GRID) * u128::from(s - 1);
    let top = u128::from(s + 1);
    let span = (0..depth)
        .try_fold(top * u128::from(GRID), |acc, _| {
            acc.checked_mul(u128::from(s))
        })
        .filter(|v| v.checked_mul(u128::from(s)).is_some())
        .ok_or(Error::Resource {
            what: "sample numerators",
            needed: u128::MAX,
            limit: u128::MAX,
        })?;
    let per_step = span / u128::from(GRID);

    let mut nums: Vec<u128> = sample_many_digits(sampled, depth, samples, seed)?
        .iter()
        .map(|d| digits_numerator(base, d).expect("checked above") * scale)
        .collect();
    nums.sort_unstable();

    let epsilon = dkw_epsilon(samples);
    let hull_max = base.hull_max();
    let mut statistic = f64::NEG_INFINITY;
    let mut rows = Vec::with_capacity(GRID as usize + 1);
    for i in 0..=GRID {
        let x = &hull_max * Rational::new(BigInt::from(i), BigInt::from(GRID));
        let bound = u128::from(i) * per_step;
        let empirical = nums.partition_point(|&n| n <= bound) as f64 / samples as f64;
        let b = cdf_bracket(reference, depth, &x)?;
        statistic = statistic
            .max(empirical - (b.hi + epsilon))
            .max((b.lo - epsilon) - empirical);
        rows.push(CheckRow {
            x: to_f64(&x),
            lo: b.lo,
            hi: b.hi,
            empirical,
        });
    }
    Ok(EmpiricalReport {
        statistic,
        epsilon,
        samples,
        depth,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::gn_convolution_law;

    #[test]
    fn epsilon_value() {
        assert!((dkw_epsilon(100_000) - (2000f64.ln() / 200_000.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn small_sample_passes() {
        let law = gn_convolution_law(0.3).unwrap();
        let r = empirical_check(&law, 12, 100, 1).unwrap();
        assert!(r.statistic <= 0.0);
        assert_eq!(r.rows.len(), 257);
        assert!(empirical_check(&law, 12, 99, 1).is_err());
    }

    #[test]
    fn swapped_law_is_caught() {
        let law = gn_convolution_law(0.5).unwrap();
        let bad = law.swapped(0, 1).unwrap();
        let r = empirical_check_against(&bad, &law, 12, 20_000, 3).unwrap();
        assert!(r.statistic > 0.0);
    }
}
