//! Monte Carlo draws of the random series, exact truncated laws and
//! certified CDF brackets.

mod cdf;
mod check;
mod draw;
mod truncated;

pub use cdf::{cdf_bracket, cdf_bracket_with_limits, CdfBracket, ExactBracket};
pub use check::{
    dkw_epsilon, empirical_check, empirical_check_against, CheckRow, EmpiricalReport, DKW_ALPHA,
    GRID,
};
pub use draw::{
    digits_numerator, digits_value, eta_block_digit, sample_digits, sample_eta, sample_many_digits,
    sample_many_eta, sample_many_xi, sample_xi, sample_xi_with, stream_rng, DigitSampler,
    EtaSampler, CHUNK,
};
pub use truncated::{
    tail_radius, truncated_dist, truncated_dist_with_limits, AtomProbs, TruncatedDist,
};
