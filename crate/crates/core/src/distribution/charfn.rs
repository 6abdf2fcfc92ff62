use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distribution::law::DigitLaw;
use crate::error::{Error, Result};

/// `phi_k(t) = sum_m p_m exp(i t m / s^k)`, the characteristic function of
/// the `k`-th scaled digit.
pub fn phi_k(law: &DigitLaw, t: f64, k: u32) -> Complex64 {
    if t == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let scale = t / (law.base().s() as f64).powi(k as i32);
    law.probs()
        .iter()
        .enumerate()
        .filter(|(_, &p)| p != 0.0)
        .map(|(m, &p)| Complex64::from_polar(p, scale * m as f64))
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharFnValue {
    pub t: f64,
    pub re: f64,
    pub im: f64,
    /// `|f(t) - (re + i im)| <= radius`.
    pub radius: f64,
    /// The tail bound was too weak to say anything useful.
    pub low_confidence: bool,
}

impl CharFnValue {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

const RADIUS_CAP: f64 = 2.0;

/// Partial product `prod_{k <= depth} phi_k(t)` with a certified radius for
/// the distance to the full infinite product.
///
/// Each factor satisfies `|phi_k(t) - 1| <= (s+1)|t| s^-k`. Summed over
/// `k > depth` that gives `tau = (s+1)|t| s^-depth / (s-1)`, so the tail
/// product lies within `exp(tau) - 1` of one.
pub fn char_fn(law: &DigitLaw, t: f64, depth: u32) -> Result<CharFnValue> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    if !t.is_finite() {
        return Err(Error::InvalidArgument(format!("t = {t} is not finite")));
    }
    if t == 0.0 {
        return Ok(CharFnValue {
            t,
            re: 1.0,
            im: 0.0,
            radius: 0.0,
            low_confidence: false,
        });
    }
    let s = law.base().s() as f64;
    let mut product = Complex64::new(1.0, 0.0);
    for k in 1..=depth {
        let factor = phi_k(law, t, k);
        if factor == Complex64::new(0.0, 0.0) {
            product = factor;
            break;
        }
        product *= factor;
    }
    let tau = (s + 1.0) * t.abs() * s.powi(-(depth as i32)) / (s - 1.0);
    let tail = product.norm() * tau.exp_m1();
    let rounding = 4.0
        * f64::EPSILON
        * (f64::from(depth) * (s + 4.0) + (s + 2.0) * (s + 1.0) * t.abs() / (s - 1.0) + 1.0);
    let raw = tail + rounding;
    Ok(CharFnValue {
        t,
        re: product.re,
        im: product.im,
        radius: raw.min(RADIUS_CAP),
        low_confidence: raw >= 1.0 || raw.is_nan(),
    })
}

/// `char_fn` at each `t`, evaluated in parallel; the output order follows
/// `ts`.
pub fn char_fn_many(law: &DigitLaw, ts: &[f64], depth: u32) -> Result<Vec<CharFnValue>> {
    ts.par_iter().map(|&t| char_fn(law, t, depth)).collect()
}

/// Certified lower bound on `limsup |f(t)|`, taken from `|f(2 pi)|`.
pub fn limsup_lower_bound(law: &DigitLaw, depth: u32) -> Result<f64> {
    let v = char_fn(law, 2.0 * std::f64::consts::PI, depth)?;
    Ok((v.value().norm() - v.radius).max(0.0))
}
