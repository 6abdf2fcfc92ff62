use serde::{Deserialize, Serialize};

use crate::distribution::charfn::limsup_lower_bound;
use crate::distribution::criteria::{
    criteria, criteria_nonzero, decompose_uniform, CriteriaValues, UniformSplit, SPLIT_TOLERANCE,
};
use crate::distribution::law::{DigitLaw, Weights};
use crate::error::{Error, Result};
use crate::rational::ratio;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Singular,
    AbsolutelyContinuous,
    Unknown,
}

/// The rule that decided a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    /// The digit is a uniform digit plus an independent digit on `{0,1,2}`.
    UniformSplit,
    /// The base-4 law `(1/4, 0, 1/4, 1/4, 0, 1/4)`.
    GuthrieNymannLaw,
    /// `p0 - p2 + p4` or `p1 - p3 + p5` is nonzero (base 4).
    FirstFactorBase4,
    /// `phi_1(2 pi)` is nonzero (even base).
    FirstFactorEvenBase,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    Criteria(CriteriaValues),
    Split(UniformSplit),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub reason: Option<Reason>,
    pub witness: Option<Witness>,
    /// Certified lower bound on `limsup |f(t)|` from the depth-`depth`
    /// product at `t = 2 pi`.
    pub limsup_lower_bound: f64,
    pub depth: u32,
}

fn is_guthrie_nymann(law: &DigitLaw) -> bool {
    if law.base().s() != 4 {
        return false;
    }
    let want = [1, 0, 1, 1, 0, 1];
    match law.weights() {
        Weights::Exact(p) => p.iter().zip(want).all(|(x, w)| x == &ratio(w, 4)),
        Weights::Float(p) => p
            .iter()
            .zip(want)
            .all(|(x, w)| (x - w as f64 / 4.0).abs() <= SPLIT_TOLERANCE),
    }
}

/// Decide the type of the law of `sum xi_k s^-k` where the digits `xi_k`
/// are i.i.d. with the given law. Needs an even base.
pub fn classify(law: &DigitLaw, depth: u32) -> Result<Verdict> {
    let base = law.base();
    base.require_even()?;
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    let bound = limsup_lower_bound(law, depth)?;
    let verdict = |kind, reason, witness| Verdict {
        kind,
        reason,
        witness,
        limsup_lower_bound: bound,
        depth,
    };

    if let Some(split) = decompose_uniform(law) {
        return Ok(verdict(
            VerdictKind::AbsolutelyContinuous,
            Some(Reason::UniformSplit),
            Some(Witness::Split(split)),
        ));
    }
    if is_guthrie_nymann(law) {
        return Ok(verdict(
            VerdictKind::AbsolutelyContinuous,
            Some(Reason::GuthrieNymannLaw),
            None,
        ));
    }
    let values = criteria(law)?;
    if criteria_nonzero(law)? {
        let reason = if base.s() == 4 {
            Reason::FirstFactorBase4
        } else {
            Reason::FirstFactorEvenBase
        };
        return Ok(verdict(
            VerdictKind::Singular,
            Some(reason),
            Some(Witness::Criteria(values)),
        ));
    }
    Ok(verdict(
        VerdictKind::Unknown,
        None,
        Some(Witness::Criteria(values)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::Base;
    use crate::distribution::law::{
        gn_convolution_law, gn_convolution_law_exact, multigeometric_law,
    };
    use crate::rational::ratio;

    #[test]
    fn gn_family() {
        let v = classify(&gn_convolution_law(0.3).unwrap(), 40).unwrap();
        assert_eq!(v.kind, VerdictKind::Singular);
        assert_eq!(v.reason, Some(Reason::FirstFactorBase4));
        let Some(Witness::Criteria(c)) = v.witness else {
            panic!()
        };
        assert!((c.u + 0.12).abs() < 1e-12 && (c.v - 0.28).abs() < 1e-12);
        assert!(v.limsup_lower_bound > 0.0);

        for law in [
            gn_convolution_law(0.5).unwrap(),
            gn_convolution_law_exact(&ratio(1, 2)).unwrap(),
        ] {
            let v = classify(&law, 40).unwrap();
            assert_eq!(v.kind, VerdictKind::AbsolutelyContinuous);
            assert_eq!(v.reason, Some(Reason::GuthrieNymannLaw));
        }
    }

    #[test]
    fn base_six_block_law() {
        let v = classify(&multigeometric_law(2, 0.3).unwrap(), 40).unwrap();
        assert_eq!(v.kind, VerdictKind::Singular);
        assert_eq!(v.reason, Some(Reason::FirstFactorEvenBase));
    }

    #[test]
    fn uniform_split_and_unknown() {
        let law = DigitLaw::float(
            Base::new(4).unwrap(),
            vec![0.05, 0.10, 0.25, 0.25, 0.20, 0.15],
        )
        .unwrap();
        assert_eq!(
            classify(&law, 20).unwrap().reason,
            Some(Reason::UniformSplit)
        );

        // u = v = 0 but not of the split form.
        let q = |n| ratio(n, 16);
        let p = vec![q(2), q(1), q(5), q(3), q(3), q(2)];
        let law = DigitLaw::exact(Base::new(4).unwrap(), p).unwrap();
        let v = classify(&law, 20).unwrap();
        assert_eq!(v.kind, VerdictKind::Unknown);
        assert_eq!(v.limsup_lower_bound, 0.0);
    }

    #[test]
    fn odd_base_rejected() {
        let law = DigitLaw::float(Base::new(5).unwrap(), vec![1.0 / 7.0; 7]).unwrap();
        assert!(matches!(classify(&law, 10), Err(Error::OddBase(5))));
    }

    #[test]
    fn json_shape() {
        let v = classify(&gn_convolution_law(0.3).unwrap(), 40).unwrap();
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["kind"], "singular");
        assert_eq!(j["reason"], "first_factor_base4");
        assert_eq!(j["witness"]["type"], "criteria");
    }
}
