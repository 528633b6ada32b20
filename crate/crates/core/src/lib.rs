//! Planar matchings of random bipartite graphs.
//!
//! Two random models are covered:
//!
//! * **Rainbow planar matchings.** Every edge of `K_{n,n}` receives a colour
//!   drawn uniformly from `{1..r}`; `R_n` is the largest non-crossing matching
//!   whose edges carry pairwise distinct colours ([`rainbow`]).
//! * **Dependent planar matchings.** Each of the `n` bottom vertices picks a
//!   distinct top vertex out of `k >= n`; `T_n` is the largest non-crossing
//!   matching, i.e. the longest increasing subsequence of the resulting
//!   injection ([`dependent`]).
//!
//! [`montecarlo`] estimates the distribution of both statistics with seeded,
//! schedule-independent parallel trials and compares them against the
//! analytic bounds; [`cli`] exposes everything as a batch command-line tool.

pub mod bound;
pub mod cli;
pub mod dependent;
pub mod error;
pub mod exact;
pub mod graph;
pub mod montecarlo;
pub mod rainbow;
pub mod rng;

pub use error::{Error, Result};
pub use graph::{
    sample_colouring, sample_injection, segment, validate_planar, ColourAssignment, Injection,
    PlanarMatching, Segmentation,
};
pub use rng::Seed;
