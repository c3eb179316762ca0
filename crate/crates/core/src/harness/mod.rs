//! Experiment drivers, exponent fits and report output.

pub mod comparison;
pub mod decay;
pub mod holder;
pub mod record;
pub mod report;
pub mod scaling;
pub mod sharpness;
pub mod weyl;

pub use comparison::{cube_grid, run_multiplier_comparison};
pub use decay::{alpha_p, run_error_decay_experiment};
pub use holder::{in_bounded_region, run_holder_sweep, violates_holder, Family, SweepGrid};
pub use record::{
    fit_loglog, fit_loglog_all, linear_fit, ExperimentRecord, Fit, Measurement, Provenance,
};
pub use report::{emit_report, read_csv, render_svg, write_csv, write_json, CsvRow, ReportFormat};
pub use scaling::{box_pair_norm, run_scaling_experiment, BoxPairCounter};
pub use sharpness::{classify, run_sharpness_experiment, sharpness_sums, Growth};
pub use weyl::run_weyl_experiment;
