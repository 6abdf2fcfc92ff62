//! Expansions over the redundant alphabet `{0, ..., s+1}`: exact evaluation,
//! cylinders, value-preserving pair rewrites, conversion into the
//! restricted alphabet and membership probing.

mod convert;
mod probe;
mod string;

pub use convert::{classical_expansion, restricted_in_maximal_interval, to_restricted_digits};
pub use probe::{
    count_prefixes, count_prefixes_with_limits, membership_probe, membership_probe_with_limits,
    Membership, Separator,
};
pub(crate) use string::prefix_value;
pub use string::{
    cylinder_interval, eval_delta, pair_rewrite, parse_digit_text, DigitString, EvalDepth,
    Evaluation, RewriteDirection,
};
