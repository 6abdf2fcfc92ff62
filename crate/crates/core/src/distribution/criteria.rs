use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::base::Base;
use crate::distribution::law::{DigitLaw, Weights};
use crate::error::{Error, Result};
use crate::rational::{integer, to_f64, Rational};

/// Float-mode threshold for calling `u` or `v` nonzero.
pub const CRITERIA_TOLERANCE: f64 = 1e-9;
/// Float-mode tolerance for the uniform-split equalities.
pub const SPLIT_TOLERANCE: f64 = 1e-12;

/// Real and imaginary parts of `phi_1(2 pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriteriaValues {
    pub u: f64,
    pub v: f64,
}

/// `u = p0 - p2 + p4`, `v = p1 - p3 + p5`.
pub fn criteria_s4(law: &DigitLaw) -> Result<CriteriaValues> {
    let s = law.base().s();
    if s != 4 {
        return Err(Error::WrongBase {
            expected: 4,
            actual: s,
        });
    }
    let p = law.probs();
    Ok(CriteriaValues {
        u: p[0] - p[2] + p[4],
        v: p[1] - p[3] + p[5],
    })
}

/// The grouped cosine and sine sums for `s = 2m + 2`.
pub fn criteria_general(law: &DigitLaw) -> Result<CriteriaValues> {
    let base = law.base();
    let m = base.m().ok_or(Error::OddBase(base.s()))? as usize;
    let s = base.s() as usize;
    let p = law.probs();
    let angle = |j: usize| PI * j as f64 / (m + 1) as f64;
    let mut u = (p[0] + p[s] - p[s / 2]) + (p[1] + p[s + 1] + p[s - 1]) * angle(1).cos();
    let mut v = (p[1] + p[s + 1] - p[s - 1]) * angle(1).sin();
    for j in 2..=m {
        u += (p[j] + p[s - j]) * angle(j).cos();
        v += (p[j] - p[s - j]) * angle(j).sin();
    }
    Ok(CriteriaValues { u, v })
}

/// `criteria_s4` in base 4 and `criteria_general` otherwise.
pub fn criteria(law: &DigitLaw) -> Result<CriteriaValues> {
    if law.base().s() == 4 {
        criteria_s4(law)
    } else {
        criteria_general(law)
    }
}

/// Coefficients (lowest first) of the `n`-th cyclotomic polynomial.
fn cyclotomic(n: usize) -> Vec<BigInt> {
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut poly = vec![BigInt::zero(); n + 1];
    poly[0] = -BigInt::one();
    poly[n] = BigInt::one();
    for d in (1..n).filter(|&d| n.is_multiple_of(d)) {
        poly = divide_exact(&poly, &cyclotomic(d));
    }
    poly
}

/// Quotient of polynomials whose division is known to be exact and whose
/// divisor is monic.
fn divide_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd].clone();
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

/// Whether `sum_j p_j zeta^j = 0` for `zeta = exp(2 pi i / s)`, decided by
/// reducing the residue-class polynomial modulo `Phi_s`.
fn first_factor_vanishes_exact(base: Base, p: &[Rational]) -> bool {
    let s = base.s() as usize;
    let mut c = vec![Rational::zero(); s];
    for (j, pj) in p.iter().enumerate() {
        c[j % s] += pj;
    }
    // Clear denominators so the reduction stays in integers.
    let lcm = c.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let mut rem: Vec<BigInt> = c
        .iter()
        .map(|r| (r * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let phi = cyclotomic(s);
    let dd = phi.len() - 1;
    for i in (dd..rem.len()).rev() {
        let lead = rem[i].clone();
        if lead.is_zero() {
            continue;
        }
        for (j, pc) in phi.iter().enumerate() {
            rem[i - dd + j] -= &lead * pc;
        }
    }
    rem.iter().all(Zero::is_zero)
}

/// Whether `phi_1(2 pi)` is nonzero: exactly in rational mode, beyond
/// [`CRITERIA_TOLERANCE`] in float mode.
pub fn criteria_nonzero(law: &DigitLaw) -> Result<bool> {
    let values = criteria(law)?;
    Ok(match law.weights() {
        Weights::Exact(p) => !first_factor_vanishes_exact(law.base(), p),
        Weights::Float(_) => {
            values.u.abs() > CRITERIA_TOLERANCE || values.v.abs() > CRITERIA_TOLERANCE
        }
    })
}

/// Weights of a uniform digit on `{0, ..., s-1}` plus an independent digit
/// on `{0, 1, 2}` with masses `(u, v, 1 - u - v)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniformSplit {
    pub u: f64,
    pub v: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<ExactSplit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactSplit {
    #[serde(with = "crate::rational::text")]
    pub u: Rational,
    #[serde(with = "crate::rational::text")]
    pub v: Rational,
}

impl UniformSplit {
    /// Convolve the two digits back into a law on `{0, ..., s+1}`.
    pub fn reconstruct(&self, base: Base) -> Result<DigitLaw> {
        let s = base.s() as usize;
        match &self.exact {
            Some(ExactSplit { u, v }) => {
                let w = integer(1) - u - v;
                let three = [u.clone(), v.clone(), w];
                let unif = Rational::new(BigInt::one(), BigInt::from(s));
                let mut p = vec![Rational::zero(); s + 2];
                for a in 0..s {
                    for (b, q) in three.iter().enumerate() {
                        p[a + b] += &unif * q;
                    }
                }
                DigitLaw::exact(base, p)
            }
            None => {
                let three = [self.u, self.v, 1.0 - self.u - self.v];
                let mut p = vec![0.0; s + 2];
                for a in 0..s {
                    for (b, q) in three.iter().enumerate() {
                        p[a + b] += q / s as f64;
                    }
                }
                DigitLaw::float(base, p)
            }
        }
    }
}

/// Split the digit law into a uniform digit plus a three-point digit when
/// `p1 >= p0` and `p2 = ... = p_{s-1} = p0 + p_s = p1 + p_{s+1} = 1/s`.
pub fn decompose_uniform(law: &DigitLaw) -> Option<UniformSplit> {
    let s = law.base().s() as usize;
    match law.weights() {
        Weights::Exact(p) => {
            let target = Rational::new(BigInt::one(), BigInt::from(s));
            let ok = p[1] >= p[0]
                && p[2..s].iter().all(|x| x == &target)
                && &p[0] + &p[s] == target
                && &p[1] + &p[s + 1] == target;
            ok.then(|| {
                let sr = integer(s as i64);
                let u = &p[0] * &sr;
                let v = (&p[1] - &p[0]) * &sr;
                UniformSplit {
                    u: to_f64(&u),
                    v: to_f64(&v),
                    exact: Some(ExactSplit { u, v }),
                }
            })
        }
        Weights::Float(p) => {
            let target = 1.0 / s as f64;
            let close = |x: f64| (x - target).abs() <= SPLIT_TOLERANCE;
            let ok = p[1] >= p[0] - SPLIT_TOLERANCE
                && p[2..s].iter().all(|&x| close(x))
                && close(p[0] + p[s])
                && close(p[1] + p[s + 1]);
            ok.then(|| UniformSplit {
                u: s as f64 * p[0],
                v: (s as f64 * (p[1] - p[0])).max(0.0),
                exact: None,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::law::{
        gn_convolution_law, gn_convolution_law_exact, multigeometric_law,
    };
    use crate::rational::ratio;
    use num_complex::Complex64;

    fn b(s: u32) -> Base {
        Base::new(s).unwrap()
    }

    fn direct(law: &DigitLaw) -> Complex64 {
        let s = law.base().s() as f64;
        law.probs()
            .iter()
            .enumerate()
            .map(|(j, &p)| Complex64::from_polar(p, 2.0 * PI * j as f64 / s))
            .sum()
    }

    #[test]
    fn s4_values() {
        let c = criteria_s4(&gn_convolution_law(0.3).unwrap()).unwrap();
        assert!((c.u + 0.12).abs() < 1e-15 && (c.v - 0.28).abs() < 1e-15);
        let c = criteria_s4(&gn_convolution_law(0.5).unwrap()).unwrap();
        assert_eq!((c.u, c.v), (0.0, 0.0));
        let c = criteria_s4(&DigitLaw::float(b(4), vec![1.0 / 6.0; 6]).unwrap()).unwrap();
        assert!((c.u - 1.0 / 6.0).abs() < 1e-15 && (c.v - 1.0 / 6.0).abs() < 1e-15);
        assert!(matches!(
            criteria_s4(&multigeometric_law(2, 0.3).unwrap()),
            Err(Error::WrongBase { .. })
        ));
    }

    #[test]
    fn general_reduces_to_s4() {
        for law in [
            gn_convolution_law(0.3).unwrap(),
            gn_convolution_law(0.71).unwrap(),
        ] {
            let a = criteria_s4(&law).unwrap();
            let g = criteria_general(&law).unwrap();
            assert!((a.u - g.u).abs() < 1e-14 && (a.v - g.v).abs() < 1e-14);
        }
    }

    #[test]
    fn general_s6_values() {
        let mut p = vec![0.0; 8];
        p[0] = 0.5;
        p[7] = 0.5;
        let c = criteria_general(&DigitLaw::float(b(6), p).unwrap()).unwrap();
        assert!((c.u - 0.75).abs() < 1e-15);
        assert!((c.v - 3f64.sqrt() / 4.0).abs() < 1e-15);

        let mut p = vec![1.0 / 6.0; 8];
        p[1] = 0.0;
        p[6] = 0.0;
        let law = DigitLaw::float(b(6), p).unwrap();
        let c = criteria_general(&law).unwrap();
        let z = direct(&law);
        assert!((c.u - z.re).abs() < 1e-14 && (c.v - z.im).abs() < 1e-14);
        assert!(criteria_general(&DigitLaw::float(b(5), vec![1.0 / 7.0; 7]).unwrap()).is_err());
    }

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |n| {
            cyclotomic(n)
                .iter()
                .map(|c| i64::try_from(c).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn exact_vanishing() {
        let half = gn_convolution_law_exact(&ratio(1, 2)).unwrap();
        assert!(!criteria_nonzero(&half).unwrap());
        let other = gn_convolution_law_exact(&ratio(3, 10)).unwrap();
        assert!(criteria_nonzero(&other).unwrap());
        // s = 6: weights 1/3 at 0, 2, 4 sum the cube roots of unity.
        let third = ratio(1, 3);
        let z = ratio(0, 1);
        let p = vec![
            third.clone(),
            z.clone(),
            third.clone(),
            z.clone(),
            third,
            z.clone(),
            z.clone(),
            z,
        ];
        assert!(!criteria_nonzero(&DigitLaw::exact(b(6), p).unwrap()).unwrap());
    }

    #[test]
    fn uniform_split() {
        let law = DigitLaw::float(b(4), vec![0.05, 0.10, 0.25, 0.25, 0.20, 0.15]).unwrap();
        let split = decompose_uniform(&law).unwrap();
        assert!((split.u - 0.2).abs() < 1e-12 && (split.v - 0.2).abs() < 1e-12);
        assert!(decompose_uniform(&gn_convolution_law(0.5).unwrap()).is_none());

        let sixth = ratio(1, 6);
        let z = ratio(0, 1);
        let mut p = vec![sixth; 8];
        p[0] = z.clone();
        p[7] = z;
        let law = DigitLaw::exact(b(6), p).unwrap();
        let split = decompose_uniform(&law).unwrap();
        assert_eq!(
            split.exact,
            Some(ExactSplit {
                u: ratio(0, 1),
                v: ratio(1, 1)
            })
        );
        assert_eq!(split.reconstruct(b(6)).unwrap(), law);
    }
}
