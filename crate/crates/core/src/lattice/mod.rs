//! Lattice-point counts on spheres `|u|^2 = lambda` and their enumeration.
//!
//! `r_k(lambda)` is built by convolving `r_1` with itself, which is exact and
//! cheap at desk scale. The normalizing count of the `l`-linear average in
//! `Z^d` is `N_l(lambda) = r_{l d}(lambda)`.

mod sphere;
mod table;

pub use sphere::{shells, sphere_points, LatticePoint};
pub use table::{build_representation_table, CountTables, RepresentationTable};
