//! Exponential sums, the major/minor arc dissection, Gauss sums, the exact
//! symbol `sigma_hat_{lambda,0}` and its major-arc approximations.

pub mod arcs;
pub mod bessel;
pub mod bump;
pub mod gauss;
pub mod minor;
pub mod multiplier;
pub mod quad;
pub mod symbol;
pub mod weyl;

pub use arcs::{farey_fractions, farey_major_arcs, ArcSet, FareyArc, Overlap};
pub use bessel::{sphere_ft, sphere_ft_refined};
pub use bump::{plateau, Bump};
pub use gauss::{degenerate_sum, gauss_sum, gauss_sum_1d, reduced_residues, GaussCache};
pub use minor::{minor_arc_integral, minor_arc_sups, MinorArcIntegral};
pub use multiplier::{
    box_phase_ft, major_arc_multiplier, multiplier_a, multiplier_b, multiplier_m, Cutoff, MainTerm,
    MainTermForm, MultiplierSample,
};
pub use symbol::{sigma_hat_exact, SigmaHat};
pub use weyl::{generating_product, weyl_sum, WeylSup};
