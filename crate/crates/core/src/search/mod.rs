//! Searches for minimal-height polynomials: exhaustive enumeration of the
//! affine space cut out by the linear conditions, and randomized products
//! of linear factors.

pub mod cascade;
pub mod exhaustive;
pub mod linear;
pub mod random;
pub mod report;

pub use cascade::{newton_filter, rootless, run_cascade, Stage, EXHAUSTIVE_ORDER, RANDOM_ORDER};
pub use exhaustive::{
    exhaustive_search, exhaustive_search_all, exhaustive_search_with, ExhaustiveOptions,
    DEFAULT_CHECKPOINT_INTERVAL,
};
pub use linear::{build_linear_system, AffineSpace, Constraint};
pub use random::{random_candidate, random_product, random_search, RandomSpec};
pub use report::{SearchReport, PIPELINE_VERSION};
