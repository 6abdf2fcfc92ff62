use rand::distr::weighted::WeightedIndex;
use rand::distr::{Bernoulli, Distribution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::base::Base;
use crate::distribution::DigitLaw;
use crate::error::{Error, Result};

/// Samples per independent random stream in the parallel drivers.
pub const CHUNK: usize = 4096;

/// Draws digits from a fixed law.
#[derive(Debug, Clone)]
pub struct DigitSampler {
    base: Base,
    index: WeightedIndex<f64>,
}

impl DigitSampler {
    pub fn new(law: &DigitLaw) -> Result<Self> {
        let index = WeightedIndex::new(law.probs().iter().copied())
            .map_err(|e| Error::InvalidLaw(e.to_string()))?;
        Ok(DigitSampler {
            base: law.base(),
            index,
        })
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn digit<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        self.index.sample(rng) as u32
    }

    pub fn digits<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<u32> {
        (0..n).map(|_| self.digit(rng)).collect()
    }
}

/// `sum_{n <= len} d_n s^-n`, summed from the last digit for accuracy.
pub fn digits_value(base: Base, digits: &[u32]) -> f64 {
    let s = base.s() as f64;
    digits
        .iter()
        .rev()
        .fold(0.0, |acc, &d| (acc + d as f64) / s)
}

/// `sum_{n <= len} d_n s^(len-n)`, the value scaled by `s^len`, if it fits.
pub fn digits_numerator(base: Base, digits: &[u32]) -> Option<u128> {
    let s = u128::from(base.s());
    digits.iter().try_fold(0u128, |acc, &d| {
        acc.checked_mul(s)?.checked_add(u128::from(d))
    })
}

pub fn sample_digits<R: Rng + ?Sized>(law: &DigitLaw, n: usize, rng: &mut R) -> Result<Vec<u32>> {
    Ok(DigitSampler::new(law)?.digits(n, rng))
}

/// One draw of `sum_{n <= depth} s^-n xi_n`.
pub fn sample_xi_with<R: Rng + ?Sized>(sampler: &DigitSampler, depth: usize, rng: &mut R) -> f64 {
    let digits = sampler.digits(depth, rng);
    digits_value(sampler.base(), &digits)
}

pub fn sample_xi(law: &DigitLaw, depth: usize, seed: u64) -> Result<f64> {
    check_depth(depth)?;
    let sampler = DigitSampler::new(law)?;
    Ok(sample_xi_with(
        &sampler,
        depth,
        &mut ChaCha8Rng::seed_from_u64(seed),
    ))
}

/// `3 a + 2 (b_1 + ... + b_m)` for the bits `[a, b_1, ..., b_m]`.
pub fn eta_block_digit(bits: &[bool]) -> u32 {
    let mut it = bits.iter();
    let head = it.next().map_or(0, |&a| 3 * u32::from(a));
    head + it.map(|&b| 2 * u32::from(b)).sum::<u32>()
}

/// Draws blocks of `m + 1` bits equal to one with probability `1 - q0`.
#[derive(Debug, Clone)]
pub struct EtaSampler {
    base: Base,
    m: u32,
    bit: Bernoulli,
}

impl EtaSampler {
    pub fn new(m: u32, q0: f64) -> Result<Self> {
        if !(q0 > 0.0 && q0 < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "q0 = {q0} must lie in (0, 1)"
            )));
        }
        let base = Base::from_m(m)?;
        let bit = Bernoulli::new(1.0 - q0).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        Ok(EtaSampler { base, m, bit })
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn block_digit<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        let bits: Vec<bool> = (0..=self.m).map(|_| self.bit.sample(rng)).collect();
        eta_block_digit(&bits)
    }

    pub fn digits<R: Rng + ?Sized>(&self, blocks: usize, rng: &mut R) -> Vec<u32> {
        (0..blocks).map(|_| self.block_digit(rng)).collect()
    }
}

/// One draw of the block series truncated after `blocks` levels.
pub fn sample_eta(m: u32, q0: f64, blocks: usize, seed: u64) -> Result<f64> {
    check_depth(blocks)?;
    let sampler = EtaSampler::new(m, q0)?;
    let digits = sampler.digits(blocks, &mut ChaCha8Rng::seed_from_u64(seed));
    Ok(digits_value(sampler.base(), &digits))
}

fn check_depth(depth: usize) -> Result<()> {
    if depth == 0 {
        return Err(Error::InvalidArgument("need at least one digit".into()));
    }
    Ok(())
}

/// The random stream for chunk `index` of a run seeded with `seed`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `count` digit strings of length `depth`, drawn chunk by chunk on
/// independent streams so the result does not depend on the thread count.
fn draw_many<F>(count: usize, seed: u64, draw: F) -> Vec<Vec<u32>>
where
    F: Fn(&mut ChaCha8Rng) -> Vec<u32> + Sync,
{
    let chunks = count.div_ceil(CHUNK);
    let draw = &draw;
    (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = stream_rng(seed, c as u64);
            let n = CHUNK.min(count - c * CHUNK);
            (0..n).map(move |_| draw(&mut rng)).collect::<Vec<_>>()
        })
        .collect()
}

/// Digit strings of `count` independent draws of `xi` truncated at `depth`.
pub fn sample_many_digits(
    law: &DigitLaw,
    depth: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<Vec<u32>>> {
    check_depth(depth)?;
    let sampler = DigitSampler::new(law)?;
    Ok(draw_many(count, seed, |rng| sampler.digits(depth, rng)))
}

pub fn sample_many_xi(law: &DigitLaw, depth: usize, count: usize, seed: u64) -> Result<Vec<f64>> {
    let base = law.base();
    Ok(sample_many_digits(law, depth, count, seed)?
        .iter()
        .map(|d| digits_value(base, d))
        .collect())
}

pub fn sample_many_eta(
    m: u32,
    q0: f64,
    blocks: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    check_depth(blocks)?;
    let sampler = EtaSampler::new(m, q0)?;
    let base = sampler.base();
    Ok(draw_many(count, seed, |rng| sampler.digits(blocks, rng))
        .iter()
        .map(|d| digits_value(base, d))
        .collect())
}
