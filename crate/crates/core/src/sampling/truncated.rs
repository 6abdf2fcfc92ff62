use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::base::Base;
use crate::distribution::{DigitLaw, Weights};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::rational::{format_ratio, pow, Rational};

/// Double-double accumulator: `hi + lo` carries about 106 bits.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

impl Dd {
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (hi, lo) = two_sum(s, e + self.lo + o.lo);
        Dd { hi, lo }
    }

    pub fn mul_f64(self, b: f64) -> Dd {
        let p = self.hi * b;
        let e = self.hi.mul_add(b, -p) + self.lo * b;
        let (hi, lo) = two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn value(self) -> f64 {
        self.hi + self.lo
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AtomProbs {
    Exact(Vec<Rational>),
    Float(Vec<f64>),
}

/// Law of `sum_{n <= depth} s^-n xi_n`: atoms at `numerator / s^depth`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedDist {
    base: Base,
    depth: usize,
    numerators: Vec<u128>,
    probs: AtomProbs,
}

impl TruncatedDist {
    pub fn base(&self) -> Base {
        self.base
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    /// Atom positions scaled by `s^depth`, strictly increasing.
    pub fn numerators(&self) -> &[u128] {
        &self.numerators
    }

    pub fn probs(&self) -> &AtomProbs {
        &self.probs
    }

    pub fn value(&self, i: usize) -> Rational {
        Rational::new(
            BigInt::from(self.numerators[i]),
            pow(self.base.s(), self.depth),
        )
    }

    pub fn values(&self) -> Vec<Rational> {
        (0..self.len()).map(|i| self.value(i)).collect()
    }

    pub fn prob_f64(&self, i: usize) -> f64 {
        match &self.probs {
            AtomProbs::Exact(p) => crate::rational::to_f64(&p[i]),
            AtomProbs::Float(p) => p[i],
        }
    }

    /// `(s+1) / (s^depth (s-1))`, the largest possible discarded remainder.
    pub fn tail_radius(&self) -> Rational {
        tail_radius(self.base, self.depth)
    }
}

pub fn tail_radius(base: Base, depth: usize) -> Rational {
    let s = base.s() as i64;
    Rational::new(
        BigInt::from(s + 1),
        pow(base.s(), depth) * BigInt::from(s - 1),
    )
}

pub fn truncated_dist(law: &DigitLaw, depth: usize) -> Result<TruncatedDist> {
    truncated_dist_with_limits(law, depth, &Limits::default())
}

/// Exact convolution of the first `depth` scaled digit laws.
pub fn truncated_dist_with_limits(
    law: &DigitLaw,
    depth: usize,
    limits: &Limits,
) -> Result<TruncatedDist> {
    let base = law.base();
    let s = u128::from(base.s());
    let top = s + 1;
    let fits = (0..depth)
        .try_fold(top, |acc, _| acc.checked_mul(s))
        .is_some();
    if !fits {
        return Err(Error::Resource {
            what: "truncated atom numerators",
            needed: u128::MAX,
            limit: u128::MAX,
        });
    }
    let support = law.support();
    match law.weights() {
        Weights::Exact(p) => {
            let (numerators, probs) = convolve(
                depth,
                s,
                &support,
                limits,
                Rational::one(),
                |acc, d| acc * &p[d as usize],
                |a, b| *a += b,
            )?;
            Ok(TruncatedDist {
                base,
                depth,
                numerators,
                probs: AtomProbs::Exact(probs),
            })
        }
        Weights::Float(p) => {
            let (numerators, probs) = convolve(
                depth,
                s,
                &support,
                limits,
                Dd::from_f64(1.0),
                |acc: &Dd, d| acc.mul_f64(p[d as usize]),
                |a: &mut Dd, b| *a = a.add(b),
            )?;
            Ok(TruncatedDist {
                base,
                depth,
                numerators,
                probs: AtomProbs::Float(probs.into_iter().map(Dd::value).collect()),
            })
        }
    }
}

fn convolve<P, M, A>(
    depth: usize,
    s: u128,
    support: &[u32],
    limits: &Limits,
    one: P,
    mul: M,
    add: A,
) -> Result<(Vec<u128>, Vec<P>)>
where
    P: Clone,
    M: Fn(&P, u32) -> P,
    A: Fn(&mut P, P),
{
    let mut atoms: Vec<(u128, P)> = vec![(0, one)];
    for _ in 0..depth {
        limits.check("truncated atoms", atoms.len().saturating_mul(support.len()))?;
        let mut next: HashMap<u128, P> = HashMap::with_capacity(atoms.len() * support.len());
        for (a, w) in &atoms {
            for &d in support {
                let key = a * s + u128::from(d);
                let mass = mul(w, d);
                match next.get_mut(&key) {
                    Some(slot) => add(slot, mass),
                    None => {
                        next.insert(key, mass);
                    }
                }
            }
        }
        atoms = next.into_iter().collect();
        atoms.sort_unstable_by_key(|(k, _)| *k);
    }
    Ok(atoms.into_iter().unzip())
}

#[derive(Serialize)]
struct AtomWire {
    value: String,
    prob: serde_json::Value,
}

#[derive(Serialize)]
struct DistWire {
    s: u32,
    depth: usize,
    tail_radius: String,
    atoms: Vec<AtomWire>,
}

impl Serialize for TruncatedDist {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let atoms = (0..self.len())
            .map(|i| AtomWire {
                value: format_ratio(&self.value(i)),
                prob: match &self.probs {
                    AtomProbs::Exact(p) => serde_json::Value::String(format_ratio(&p[i])),
                    AtomProbs::Float(p) => serde_json::json!(p[i]),
                },
            })
            .collect();
        DistWire {
            s: self.base.s(),
            depth: self.depth,
            tail_radius: format_ratio(&self.tail_radius()),
            atoms,
        }
        .serialize(ser)
    }
}

impl AtomProbs {
    pub fn is_exact(&self) -> bool {
        matches!(self, AtomProbs::Exact(_))
    }

    pub fn total_is_one(&self) -> bool {
        match self {
            AtomProbs::Exact(p) => p.iter().fold(Rational::zero(), |a, b| a + b).is_one(),
            AtomProbs::Float(p) => (p.iter().sum::<f64>() - 1.0).abs() < 1e-12,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::{gn_convolution_law, gn_convolution_law_exact};
    use crate::rational::ratio;

    #[test]
    fn one_digit() {
        let d = truncated_dist(&gn_convolution_law_exact(&ratio(1, 2)).unwrap(), 1).unwrap();
        assert_eq!(
            d.values(),
            vec![ratio(0, 1), ratio(1, 2), ratio(3, 4), ratio(5, 4)]
        );
        assert_eq!(d.probs(), &AtomProbs::Exact(vec![ratio(1, 4); 4]));
        assert_eq!(d.tail_radius(), ratio(5, 12));
    }

    #[test]
    fn two_digits_sum_to_one() {
        let d = truncated_dist(&gn_convolution_law_exact(&ratio(1, 2)).unwrap(), 2).unwrap();
        assert!(d.len() <= 16);
        assert!(d.probs().total_is_one());
        assert!(d.numerators().windows(2).all(|w| w[0] < w[1]));
        let f = truncated_dist(&gn_convolution_law(0.3).unwrap(), 6).unwrap();
        assert!(f.probs().total_is_one());
    }

    #[test]
    fn guard() {
        let law = gn_convolution_law(0.3).unwrap();
        assert!(matches!(
            truncated_dist_with_limits(&law, 12, &Limits::new(1000)),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn double_double_keeps_small_terms() {
        let x = Dd::from_f64(1.0)
            .add(Dd::from_f64(1e-20))
            .add(Dd::from_f64(-1.0));
        assert!((x.value() - 1e-20).abs() < 1e-30);
    }

    #[test]
    fn json_has_exact_atoms() {
        let d = truncated_dist(&gn_convolution_law_exact(&ratio(1, 2)).unwrap(), 1).unwrap();
        let j = serde_json::to_value(&d).unwrap();
        assert_eq!(j["atoms"][1]["value"], "1/2");
        assert_eq!(j["atoms"][1]["prob"], "1/4");
        assert_eq!(j["tail_radius"], "5/12");
    }
}
