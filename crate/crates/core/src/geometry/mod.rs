//! Covers, gaps, the self-similar decomposition and dimension estimates of
//! the restricted-digit set `E_s`.

mod cover;
mod dimension;
mod ifs;
mod union;

pub use cover::{
    cover_table, cylinder_cover, cylinder_cover_with_limits, gaps, gaps_with_limits,
    interior_measure_estimate, interior_measure_estimate_with_limits, CoverRow,
};
pub use dimension::{
    box_counting_estimate, box_counting_estimate_with_limits, similarity_dimension, BoxCount,
    BoxCountEstimate, RatioFamily,
};
pub use ifs::{
    decompose, ifs_maps, maximal_interval, symmetry_map, AffineCopy, CopyPair, Decomposition,
    IfsMap,
};
pub use union::IntervalUnion;
