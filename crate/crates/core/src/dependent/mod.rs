//! Dependent planar matchings: the longest increasing subsequence `T_n` of a
//! uniform injection `{1..n} -> {1..k}`, the segmented lower bound `X_t`, and
//! the exact and asymptotic probability estimates around them.

mod bounds;
mod events;
mod lis;
mod segmented;

pub use bounds::{
    chernoff_bound, dependent_bounds, mean_bounds_tn, mean_bounds_xt, mu_t, tail_bound_general,
    var_bound_xt, var_structural, BoundEntry, BoundsReport, MeanBoundsTn, Regime, TailBound,
};
pub use events::{
    f_bounds, falling_ratio, falling_ratio_exact, joint_bound_a1a2, prob_a1c_bounds,
    prob_a1c_exact, prob_a1c_ratio, prob_joint_a1a2_exact, prob_joint_a1a2_ratio,
};
pub use lis::{lis_length, lis_length_of, lis_length_oracle, lis_witness};
pub use segmented::{
    nearby_valid_t, segmented_count, snap_segment_size, top_segment_size, SegStats, SnappedT,
};
