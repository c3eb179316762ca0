//! Decay of the normalized minor-arc integral in `N`.

use crate::error::{domain, Result};
use crate::harness::record::ExperimentRecord;
use crate::lattice::CountTables;
use crate::spectral::minor::minor_arc_integral;

/// Largest `N` accepted by the decay experiment.
pub const MAX_N: u64 = 128;

/// `alpha_p = 2(2/p - 1) - delta (2 - 2/p)`.
pub fn alpha_p(p: f64, delta: f64) -> f64 {
    2.0 * (2.0 / p - 1.0) - delta * (2.0 - 2.0 / p)
}

pub fn run_error_decay_experiment(d: usize, n_list: &[u64]) -> Result<ExperimentRecord> {
    if n_list.len() < 3 {
        return domain(format!("need at least 3 values of N, got {}", n_list.len()));
    }
    if let Some(&n) = n_list.iter().find(|&&n| n == 0 || n > MAX_N) {
        return domain(format!("N must lie in 1..={MAX_N}, got {n}"));
    }
    let n_max = *n_list.iter().max().expect("nonempty");
    let tables = CountTables::new(2 * d, n_max * n_max)?;
    let mut rec = ExperimentRecord::new("error_decay", 0);
    rec.param("d", d).param("N", n_list).param("lambda", "N^2");
    for &n in n_list {
        let m = minor_arc_integral(&tables, d, n)?;
        let x = n as f64;
        rec.push("raw", x, m.raw);
        rec.push("normalized", x, m.normalized);
        rec.push("max_sup", x, m.max_sup);
    }
    let raw = rec.fit("raw")?;
    let normalized = rec.fit("normalized")?;
    let delta = -normalized.exponent;
    for i in 0..=20 {
        let p = 1.0 + i as f64 / 20.0;
        rec.push("alpha_p", p, alpha_p(p, delta));
    }
    rec.note("raw_exponent", raw.exponent)
        .note("delta_fit", delta)
        .note("delta_residual", normalized.residual)
        .note("alpha_2", alpha_p(2.0, delta))
        .note("p_threshold", (2.0 + delta) / (1.0 + delta));
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_closed_forms() {
        assert_eq!(alpha_p(2.0, 0.7), -0.7);
        assert_eq!(alpha_p(1.0, 0.7), 2.0);
        // zero exactly at p = (2 + delta) / (1 + delta)
        let delta = 0.4;
        assert!(alpha_p((2.0 + delta) / (1.0 + delta), delta).abs() < 1e-12);
    }
}
