//! Digit laws and the type of the law of `sum xi_k s^-k` for i.i.d. digits.

mod charfn;
mod classify;
mod criteria;
mod law;

pub use charfn::{char_fn, char_fn_many, limsup_lower_bound, phi_k, CharFnValue};
pub use classify::{classify, Reason, Verdict, VerdictKind, Witness};
pub use criteria::{
    criteria, criteria_general, criteria_nonzero, criteria_s4, decompose_uniform, CriteriaValues,
    ExactSplit, UniformSplit, CRITERIA_TOLERANCE, SPLIT_TOLERANCE,
};
pub use law::{
    gn_convolution_law, gn_convolution_law_exact, multigeometric_law, multigeometric_law_exact,
    DigitLaw, Weights, FLOAT_SUM_TOLERANCE,
};
