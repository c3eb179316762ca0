//! Growth of `sup_xi |S_N(theta, xi)|` over minor-arc samples of `theta`.

use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::harness::record::ExperimentRecord;
use crate::spectral::arcs::farey_major_arcs;
use crate::spectral::minor::minor_arc_sups;
use crate::spectral::weyl::WeylSup;

/// Number of Kronecker samples `frac(k / phi)` per `N`.
pub const KRONECKER_SAMPLES: usize = 1024;

/// Arcs with `q` up to this contribute samples just outside both edges.
pub const EDGE_Q_MAX: u64 = 8;

/// `theta` samples: the Kronecker sequence plus points just outside the edges
/// of the arcs with small `q`. Major-arc points are filtered later.
pub fn theta_samples(n: u64) -> Vec<f64> {
    let step = (5f64.sqrt() - 1.0) / 2.0;
    let mut out: Vec<f64> = (1..=KRONECKER_SAMPLES)
        .map(|k| (k as f64 * step).fract())
        .collect();
    for q in 1..=EDGE_Q_MAX.min(n) {
        let w = 1.0 / (8 * q * n) as f64;
        for a in 0..q {
            if crate::numeric::gcd(a, q) != 1 && !(a == 0 && q == 1) {
                continue;
            }
            let c = a as f64 / q as f64;
            for t in [c - w * (1.0 + 1e-6), c + w * (1.0 + 1e-6)] {
                out.push(t.rem_euclid(1.0));
            }
        }
    }
    out
}

pub fn run_weyl_experiment(n_list: &[u64]) -> Result<ExperimentRecord> {
    if n_list.len() < 5 {
        return domain(format!("need at least 5 values of N, got {}", n_list.len()));
    }
    if n_list.iter().any(|&n| n < 2) {
        return domain("every N must be at least 2");
    }
    let rows: Vec<(u64, f64, usize, f64)> = n_list
        .par_iter()
        .map(|&n| -> Result<_> {
            let arcs = farey_major_arcs(n)?;
            let sups = minor_arc_sups(&arcs, &theta_samples(n));
            let max = sups.iter().map(|s| s.1).fold(0.0, f64::max);
            // diagnostic: centre of the arc at 1/3, where |S_N| ~ N q^{-1/2}
            let centre = WeylSup::new(n).evaluate(1.0 / 3.0).sup;
            Ok((n, max, sups.len(), centre))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rec = ExperimentRecord::new("weyl", 0);
    rec.param("N", n_list)
        .param("kronecker_samples", KRONECKER_SAMPLES)
        .param("edge_q_max", EDGE_Q_MAX);
    for &(n, max, kept, centre) in &rows {
        let x = n as f64;
        rec.push("minor_sup", x, max);
        rec.push("minor_sup_over_sqrt_n", x, max / x.sqrt());
        rec.push("minor_samples", x, kept as f64);
        rec.push("major_centre_sup", x, centre);
        rec.push("major_centre_over_n_q", x, centre / (x / 3f64.sqrt()));
    }
    let fit = rec.fit("minor_sup")?;
    rec.fit("major_centre_sup")?;
    rec.note("exponent", fit.exponent)
        .note("exponent_bound", 0.65);
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_samples_are_minor() {
        let n = 64;
        let arcs = farey_major_arcs(n).unwrap();
        let samples = theta_samples(n);
        let edges = &samples[KRONECKER_SAMPLES..];
        assert!(!edges.is_empty());
        assert!(edges.iter().all(|&t| !arcs.contains(t)));
    }
}
