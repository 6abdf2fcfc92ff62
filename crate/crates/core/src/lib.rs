//! Exact geometry of the set `E_s` of sums `sum a_n s^-n` with digits drawn
//! from `{0, ..., s+1}` minus `{1, s}`, and classification of the laws of
//! random expansions whose digits are i.i.d.
//!
//! * [`digits`]: redundant-alphabet expansions, cylinders, rewriting and
//!   membership probing, all in exact rationals.
//! * [`geometry`]: IFS covers, gaps, the maximal interval, the self-similar
//!   decomposition, interior measure and boundary dimension.
//! * [`distribution`]: digit laws, characteristic functions, singularity
//!   criteria, uniform-component splitting and the classifier.
//! * [`sampling`]: Monte Carlo draws, exact truncated laws and certified
//!   CDF brackets.

pub mod base;
pub mod digits;
pub mod distribution;
pub mod error;
pub mod geometry;
pub mod limits;
pub mod rational;
pub mod sampling;

pub use base::Base;
pub use digits::{DigitString, EvalDepth};
pub use distribution::{DigitLaw, Verdict, VerdictKind};
pub use error::{Error, Result};
pub use geometry::IntervalUnion;
pub use limits::Limits;
pub use rational::{Rational, RationalInterval};
pub use sampling::{CdfBracket, TruncatedDist};
