use std::fmt;

use num_traits::{FromPrimitive, Num, One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::base::Base;
use crate::error::{Error, Result};
use crate::rational::{format_ratio, parse_ratio, to_f64, Rational};

/// Float-mode laws must sum to one within this.
pub const FLOAT_SUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum Weights {
    Exact(Vec<Rational>),
    Float(Vec<f64>),
}

/// Law of a single digit on `{0, ..., s+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DigitLaw {
    base: Base,
    weights: Weights,
    floats: Vec<f64>,
}

impl DigitLaw {
    pub fn exact(base: Base, p: Vec<Rational>) -> Result<Self> {
        check_len(base, p.len())?;
        if let Some(j) = p.iter().position(|w| w.is_negative()) {
            return Err(Error::InvalidLaw(format!("p_{j} is negative")));
        }
        let total: Rational = p.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidLaw(format!(
                "probabilities sum to {}, not 1",
                format_ratio(&total)
            )));
        }
        if let Some(j) = p.iter().position(|w| w.is_one()) {
            return Err(Error::InvalidLaw(format!(
                "p_{j} = 1 gives a degenerate law"
            )));
        }
        let floats = p.iter().map(to_f64).collect();
        Ok(DigitLaw {
            base,
            weights: Weights::Exact(p),
            floats,
        })
    }

    pub fn float(base: Base, p: Vec<f64>) -> Result<Self> {
        check_len(base, p.len())?;
        if let Some(j) = p.iter().position(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidLaw(format!(
                "p_{j} = {} is not a probability",
                p[j]
            )));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > FLOAT_SUM_TOLERANCE {
            return Err(Error::InvalidLaw(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        if let Some(j) = p
            .iter()
            .position(|w| (w - 1.0).abs() <= FLOAT_SUM_TOLERANCE)
        {
            return Err(Error::InvalidLaw(format!(
                "p_{j} = 1 gives a degenerate law"
            )));
        }
        Ok(DigitLaw {
            base,
            floats: p.clone(),
            weights: Weights::Float(p),
        })
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.weights, Weights::Exact(_))
    }

    pub fn exact_probs(&self) -> Option<&[Rational]> {
        match &self.weights {
            Weights::Exact(p) => Some(p),
            Weights::Float(_) => None,
        }
    }

    /// Probabilities as floats (rounded in exact mode).
    pub fn probs(&self) -> &[f64] {
        &self.floats
    }

    pub fn p(&self, j: usize) -> f64 {
        self.floats[j]
    }

    /// Digits with positive probability.
    pub fn support(&self) -> Vec<u32> {
        let positive = |j: usize| match &self.weights {
            Weights::Exact(p) => !p[j].is_zero(),
            Weights::Float(p) => p[j] > 0.0,
        };
        (0..self.floats.len())
            .filter(|&j| positive(j))
            .map(|j| j as u32)
            .collect()
    }

    /// The same law with `p_i` and `p_j` exchanged.
    pub fn swapped(&self, i: usize, j: usize) -> Result<DigitLaw> {
        match &self.weights {
            Weights::Exact(p) => {
                let mut p = p.clone();
                p.swap(i, j);
                DigitLaw::exact(self.base, p)
            }
            Weights::Float(p) => {
                let mut p = p.clone();
                p.swap(i, j);
                DigitLaw::float(self.base, p)
            }
        }
    }

    pub fn from_json(text: &str) -> Result<DigitLaw> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn check_len(base: Base, len: usize) -> Result<()> {
    let want = base.s() as usize + 2;
    if len != want {
        return Err(Error::InvalidLaw(format!(
            "base {base} needs {want} probabilities, got {len}"
        )));
    }
    Ok(())
}

impl fmt::Display for DigitLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = match &self.weights {
            Weights::Exact(p) => p.iter().map(format_ratio).collect(),
            Weights::Float(p) => p.iter().map(|w| w.to_string()).collect(),
        };
        write!(f, "s={} p=({})", self.base, items.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Rational,
    Float,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Text(String),
    Number(serde_json::Number),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WireIn {
    s: u32,
    p: Vec<Entry>,
    mode: Option<Mode>,
}

#[derive(Serialize)]
struct WireOut<'a> {
    s: u32,
    p: Vec<serde_json::Value>,
    mode: &'a Mode,
}

impl Serialize for DigitLaw {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let (p, mode) = match &self.weights {
            Weights::Exact(p) => (
                p.iter()
                    .map(|w| serde_json::Value::String(format_ratio(w)))
                    .collect(),
                Mode::Rational,
            ),
            Weights::Float(p) => (
                p.iter().map(|&w| serde_json::json!(w)).collect(),
                Mode::Float,
            ),
        };
        WireOut {
            s: self.base.s(),
            p,
            mode: &mode,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for DigitLaw {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let wire = WireIn::deserialize(de)?;
        let base = Base::new(wire.s).map_err(D::Error::custom)?;
        let mode = wire.mode.unwrap_or_else(|| {
            let all_exact = wire.p.iter().all(|e| match e {
                Entry::Text(_) => true,
                Entry::Number(n) => n.is_u64() || n.is_i64(),
            });
            if all_exact {
                Mode::Rational
            } else {
                Mode::Float
            }
        });
        let exact: Vec<Rational> = wire
            .p
            .iter()
            .map(|e| match e {
                Entry::Text(t) => parse_ratio(t),
                Entry::Number(n) => parse_ratio(&n.to_string()),
            })
            .collect::<Result<_>>()
            .map_err(D::Error::custom)?;
        let law = match mode {
            Mode::Rational => DigitLaw::exact(base, exact),
            Mode::Float => DigitLaw::float(base, exact.iter().map(to_f64).collect()),
        };
        law.map_err(D::Error::custom)
    }
}

fn check_q0<T: PartialOrd + Zero + One + fmt::Debug>(q0: &T) -> Result<()> {
    if !(q0 > &T::zero() && q0 < &T::one()) {
        return Err(Error::InvalidArgument(format!(
            "q0 = {q0:?} must lie in (0, 1)"
        )));
    }
    Ok(())
}

/// Weights of `3a + 2b` with `a ~ Bernoulli(q1)` and `b ~ Binomial(m, q1)`.
fn block_weights<T: Num + Clone + FromPrimitive>(m: u32, q0: &T) -> Vec<T> {
    let q1 = T::one() - q0.clone();
    let s = 2 * m as usize + 2;
    let mut p = vec![T::zero(); s + 2];
    let pow = |x: &T, e: u32| (0..e).fold(T::one(), |acc, _| acc * x.clone());
    let mut binom = 1u64;
    for b in 0..=m {
        let bin = T::from_u64(binom).expect("binomial fits");
        let mass_b = bin * pow(q0, m - b) * pow(&q1, b);
        p[2 * b as usize] = p[2 * b as usize].clone() + q0.clone() * mass_b.clone();
        p[2 * b as usize + 3] = p[2 * b as usize + 3].clone() + q1.clone() * mass_b;
        binom = binom * u64::from(m - b) / u64::from(b + 1);
    }
    p
}

fn check_m(m: u32) -> Result<Base> {
    if m > 30 {
        return Err(Error::InvalidArgument(format!(
            "m = {m} is too large (at most 30)"
        )));
    }
    Base::from_m(m)
}

/// Digit law of `3a + 2(b_1 + ... + b_m)` for i.i.d. Bernoulli bits with
/// `P(0) = q0`, in base `s = 2m + 2`.
pub fn multigeometric_law(m: u32, q0: f64) -> Result<DigitLaw> {
    let base = check_m(m)?;
    check_q0(&q0)?;
    DigitLaw::float(base, block_weights(m, &q0))
}

pub fn multigeometric_law_exact(m: u32, q0: &Rational) -> Result<DigitLaw> {
    let base = check_m(m)?;
    check_q0(q0)?;
    DigitLaw::exact(base, block_weights(m, q0))
}

/// `(q0^2, 0, q0 q1, q0 q1, 0, q1^2)` in base 4.
pub fn gn_convolution_law(q0: f64) -> Result<DigitLaw> {
    multigeometric_law(1, q0)
}

pub fn gn_convolution_law_exact(q0: &Rational) -> Result<DigitLaw> {
    multigeometric_law_exact(1, q0)
}
