//! Lattice functions, the `l`-linear spherical averages `T_lambda`, the
//! truncated maximal operator and `l^p` norms.

pub mod average;
pub mod function;
pub mod norm;

pub use average::{
    maximal_operator, multilinear_average, multilinear_average_direct, shell_convolve,
    AverageResult, MaximalResult, DIRECT_GUARD,
};
pub use function::LatticeFunction;
pub use norm::{lp_norm, norm_ratio};
