//! Perfect and quasi-perfect codes on Cartesian products of paths, cycles
//! and small explicit graphs.
//!
//! - [`graph`]: implicit product graphs, their metric, balls, spheres,
//!   translates and direct sums.
//! - [`metrics`]: exact classification of a code.
//! - [`constructions`]: one generator per known construction, each returning
//!   the code together with the claim it is expected to satisfy.
//! - [`search`]: exhaustive backtracking search, used as an independent oracle.
//! - [`io`]: code files, reports and the layered text renderer.

pub mod constructions;
pub mod error;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod search;

pub use constructions::{ConstructionResult, Provenance, TheoremId};
pub use error::{Error, Result};
pub use graph::{ExplicitGraph, FactorSpec, ProductGraph, Vertex, DEFAULT_EXPANSION_CAP};
pub use metrics::{
    check_claim, classify, covering_radius, distance_histogram, distance_to_code,
    min_pairwise_distance, sphere_packing_census, Claim, Code, CodeKind, CodeReport, Label,
    MinDistance, Verdict,
};

pub use search::{min_code_size, search_code, MinSize, SearchOutcome, SearchSpec, SearchStatus};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
