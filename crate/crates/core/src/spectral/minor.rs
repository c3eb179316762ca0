use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::lattice::CountTables;
use crate::numeric::pairwise_sum;
use crate::spectral::arcs::{farey_major_arcs, ArcSet};
use crate::spectral::weyl::WeylSup;

/// Minor-arc integral `int_m sup_xi |F(theta, xi)| |F(theta)| d theta` and its
/// normalization by `N(Lambda)`, `Lambda = N^2`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MinorArcIntegral {
    pub d: usize,
    pub n: u64,
    pub lambda: u64,
    pub count: u64,
    pub raw: f64,
    pub normalized: f64,
    pub grid_points: usize,
    pub minor_points: usize,
    /// Largest `sup_xi |S_N(theta, xi)|` seen on the minor-arc grid.
    pub max_sup: f64,
}

const BLOCK: usize = 4096;

/// Midpoint rule with step `1/(16 N^2)` over the minor arcs; the inner
/// maximization over `xi` is done once per `theta` since
/// `sup_xi |F(theta, xi)| = (sup_xi |S_N(theta, xi)|)^d`.
pub fn minor_arc_integral(tables: &CountTables, d: usize, n: u64) -> Result<MinorArcIntegral> {
    if d == 0 || n == 0 {
        return domain("need d >= 1 and N >= 1");
    }
    let lambda = n * n;
    let count = tables.count_n(d, lambda, 2)?;
    if count == 0 {
        return Err(Error::EmptySphere {
            dim: d,
            arity: 2,
            lambda,
        });
    }
    let arcs = farey_major_arcs(n)?;
    let points = 16 * (n as usize) * (n as usize);
    let h = 1.0 / points as f64;
    let blocks: Vec<(Vec<f64>, usize, f64)> = (0..points.div_ceil(BLOCK))
        .into_par_iter()
        .map(|b| {
            let mut sup = WeylSup::new(n);
            let mut vals = Vec::with_capacity(BLOCK);
            let mut minor = 0;
            let mut max_sup = 0.0f64;
            for i in b * BLOCK..((b + 1) * BLOCK).min(points) {
                let theta = (i as f64 + 0.5) * h;
                if arcs.contains(theta) {
                    continue;
                }
                let s = sup.evaluate(theta);
                minor += 1;
                max_sup = max_sup.max(s.sup);
                vals.push((s.sup * s.at_zero.norm()).powi(d as i32));
            }
            (vals, minor, max_sup)
        })
        .collect();
    let block_sums: Vec<f64> = blocks.iter().map(|(v, _, _)| pairwise_sum(v)).collect();
    let raw = pairwise_sum(&block_sums) * h;
    Ok(MinorArcIntegral {
        d,
        n,
        lambda,
        count,
        raw,
        normalized: raw / count as f64,
        grid_points: points,
        minor_points: blocks.iter().map(|b| b.1).sum(),
        max_sup: blocks.iter().map(|b| b.2).fold(0.0, f64::max),
    })
}

/// `sup_xi |S_N(theta, xi)|` at each `theta` that lies on a minor arc, with the `theta` used.
pub fn minor_arc_sups(arcs: &ArcSet, thetas: &[f64]) -> Vec<(f64, f64)> {
    let kept: Vec<f64> = thetas
        .iter()
        .copied()
        .filter(|&t| !arcs.contains(t))
        .collect();
    kept.par_chunks(256)
        .map(|chunk| {
            let mut sup = WeylSup::new(arcs.n);
            chunk
                .iter()
                .map(|&t| (t, sup.evaluate(t).sup))
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonnegative_and_deterministic() {
        let tables = CountTables::new(6, 64).unwrap();
        let a = minor_arc_integral(&tables, 3, 8).unwrap();
        let b = minor_arc_integral(&tables, 3, 8).unwrap();
        assert!(a.raw >= 0.0 && a.normalized >= 0.0);
        assert_eq!(a.raw.to_bits(), b.raw.to_bits());
        assert!(a.minor_points < a.grid_points && a.minor_points > 0);
        assert!(a.max_sup <= 9.0);
    }

    #[test]
    fn sups_skip_major_arcs() {
        let arcs = farey_major_arcs(16).unwrap();
        let out = minor_arc_sups(&arcs, &[0.0, 0.5, 0.3183, 0.7071]);
        let thetas: Vec<f64> = out.iter().map(|p| p.0).collect();
        assert_eq!(thetas, vec![0.3183, 0.7071]);
    }
}
