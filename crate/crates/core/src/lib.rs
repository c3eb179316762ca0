//! Numerical laboratory for discrete multilinear spherical averages on `Z^d`
//! and their circle-method decomposition.

pub mod error;
pub mod harness;
pub mod lattice;
pub mod numeric;
pub mod operator;
pub mod spectral;

pub use error::{Error, Result};

/// Crate version, used as the stamp on cached tables and experiment records.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/counts.md")]
    struct Counts;
    #[doc = include_str!("../../../book/src/averages.md")]
    struct Averages;
    #[doc = include_str!("../../../book/src/circle-method.md")]
    struct CircleMethod;
    #[doc = include_str!("../../../book/src/experiments.md")]
    struct Experiments;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
