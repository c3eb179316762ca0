//! Empirical Hoelder ratios `||T*(f, g)||_r / (||f||_p ||g||_q)` over a size schedule.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::harness::record::ExperimentRecord;
use crate::harness::scaling::{box_pair_norm, window_lambda_max};
use crate::lattice::{CountTables, LatticePoint};
use crate::numeric::pairwise_sum;
use crate::operator::{lp_norm, norm_ratio, LatticeFunction};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    /// `f`, `g` with independent uniform values in `[-1, 1]` on `[0, L)^d`.
    RandomSparse { seed: u64 },
    /// `f = g = chi_{[0, L)^d}`, measured on the window `[-L, 2L)^d`.
    Box,
    /// `f = delta_0`, `g = 1` with `||g||_inf` in the denominator and
    /// `lambda <= L^2`.
    DeltaConstant,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::RandomSparse { .. } => "random_sparse",
            Family::Box => "box",
            Family::DeltaConstant => "delta_constant",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub triples: Vec<(f64, f64, f64)>,
    pub family: Family,
    pub sizes: Vec<u64>,
}

fn inv(e: f64) -> f64 {
    if e.is_infinite() {
        0.0
    } else {
        1.0 / e
    }
}

/// `1/r > 1/p + 1/q`: excluded by the necessary condition.
pub fn violates_holder(p: f64, q: f64, r: f64) -> bool {
    inv(r) > inv(p) + inv(q) + 1e-12
}

/// Inside the region where boundedness is expected: the Hoelder condition
/// holds and `r > d / (d - 2)`.
pub fn in_bounded_region(d: usize, p: f64, q: f64, r: f64) -> bool {
    !violates_holder(p, q, r) && d > 2 && r > d as f64 / (d as f64 - 2.0)
}

impl SweepGrid {
    pub fn validate(&self) -> Result<()> {
        if self.triples.is_empty() || self.sizes.len() < 3 {
            return domain("a sweep needs at least one triple and three sizes");
        }
        if let Some(t) = self
            .triples
            .iter()
            .find(|t| !(t.0 >= 1.0 && t.1 >= 1.0 && t.2 >= 1.0))
        {
            return domain(format!("exponents must lie in [1, inf], got {t:?}"));
        }
        if self.sizes.contains(&0) {
            return domain("sizes must be positive");
        }
        Ok(())
    }

    /// Triples excluded by the necessary condition.
    pub fn violating(&self) -> Vec<(f64, f64, f64)> {
        self.triples
            .iter()
            .copied()
            .filter(|t| violates_holder(t.0, t.1, t.2))
            .collect()
    }
}

fn random_box(d: usize, side: u64, rng: &mut ChaCha8Rng) -> Result<LatticeFunction> {
    let total = side.pow(d as u32);
    let mut entries = Vec::with_capacity(total as usize);
    for idx in 0..total {
        let x: Vec<i64> = (0..d)
            .map(|i| (idx / side.pow(i as u32) % side) as i64)
            .collect();
        entries.push((LatticePoint(x), rng.gen_range(-1.0..1.0)));
    }
    LatticeFunction::sparse(d, entries)
}

fn ratio(
    tables: &CountTables,
    d: usize,
    family: Family,
    side: u64,
    (p, q, r): (f64, f64, f64),
) -> Result<f64> {
    match family {
        Family::Box => {
            let chi = LatticeFunction::box_indicator(d, side);
            Ok(box_pair_norm(tables, d, side, r)? / (lp_norm(&chi, p)? * lp_norm(&chi, q)?))
        }
        Family::RandomSparse { seed } => {
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed ^ side.wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let f = random_box(d, side, &mut rng)?;
            let g = random_box(d, side, &mut rng)?;
            let lambdas: Vec<u64> = (1..=window_lambda_max(d, side)).collect();
            norm_ratio(tables, &[f, g], &[p, q], r, &lambdas)
        }
        Family::DeltaConstant => {
            let norm = delta_constant_norm(tables, d, side * side, r)?;
            Ok(norm / lp_norm(&LatticeFunction::delta(d), p)?)
        }
    }
}

/// `||T*(delta_0, 1)||_r` with `1 <= lambda <= lambda_max`. The value at `x`
/// depends only on `m = |x|^2`: `max_lambda r_d(lambda - m) / N(lambda)`.
pub fn delta_constant_norm(tables: &CountTables, d: usize, lambda_max: u64, r: f64) -> Result<f64> {
    if !(r >= 1.0) {
        return domain(format!("r must lie in [1, inf], got {r}"));
    }
    let mut terms = Vec::new();
    let mut sup = 0.0f64;
    for m in 0..=lambda_max {
        let points = tables.r(d, m)?;
        if points == 0 {
            continue;
        }
        let mut best = 0.0f64;
        for lambda in m.max(1)..=lambda_max {
            let count = tables.count_n(d, lambda, 2)?;
            if count > 0 {
                best = best.max(tables.r(d, lambda - m)? as f64 / count as f64);
            }
        }
        sup = sup.max(best);
        if r.is_finite() {
            terms.push(points as f64 * best.powf(r));
        }
    }
    if r.is_infinite() {
        return Ok(sup);
    }
    Ok(pairwise_sum(&terms).powf(1.0 / r))
}

/// One record per triple with the ratio series and its trend fit.
pub fn run_holder_sweep(grid: &SweepGrid, d: usize) -> Result<Vec<ExperimentRecord>> {
    grid.validate()?;
    if d == 0 {
        return domain("d must be positive");
    }
    let side_max = *grid.sizes.iter().max().expect("validated");
    let lambda_max = match grid.family {
        Family::DeltaConstant => side_max * side_max,
        _ => window_lambda_max(d, side_max),
    };
    let tables = CountTables::new(2 * d, lambda_max)?;
    let seed = match grid.family {
        Family::RandomSparse { seed } => seed,
        _ => 0,
    };
    let mut records = Vec::with_capacity(grid.triples.len());
    for &(p, q, r) in &grid.triples {
        let mut rec = ExperimentRecord::new("holder", seed);
        rec.param("d", d)
            .param("p", p)
            .param("q", q)
            .param("r", r)
            .param("family", grid.family)
            .param("sizes", &grid.sizes);
        let mut max_ratio = 0.0f64;
        for &side in &grid.sizes {
            let v = ratio(&tables, d, grid.family, side, (p, q, r))?;
            max_ratio = max_ratio.max(v);
            rec.push("ratio", side as f64, v);
        }
        let fit = rec.fit("ratio")?;
        rec.note("max_ratio", max_ratio)
            .note("slope", fit.exponent)
            .note("violates_holder", violates_holder(p, q, r))
            .note("in_bounded_region", in_bounded_region(d, p, q, r));
        records.push(rec);
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn region_flags() {
        assert!(violates_holder(4.0, 4.0, 1.0));
        assert!(!violates_holder(2.0, 2.0, 1.0));
        assert!(!violates_holder(
            f64::INFINITY,
            f64::INFINITY,
            f64::INFINITY
        ));
        assert!(in_bounded_region(3, 6.0, 6.0, 3.5));
        assert!(!in_bounded_region(3, 2.0, 2.0, 2.5));
    }

    #[test]
    fn delta_constant_matches_generic_operator() {
        use crate::operator::maximal_operator;
        let t = CountTables::new(6, 30).unwrap();
        let lambdas: Vec<u64> = (1..=30).collect();
        let fs = [LatticeFunction::delta(3), LatticeFunction::constant(3, 1.0)];
        let max = maximal_operator(&t, &fs, &lambdas).unwrap();
        for r in [1.0, 2.5, f64::INFINITY] {
            let generic = lp_norm(&max.values, r).unwrap();
            let shells = delta_constant_norm(&t, 3, 30, r).unwrap();
            assert!(
                (generic - shells).abs() < 1e-12 * generic,
                "r {r}: {generic} vs {shells}"
            );
        }
    }

    #[test]
    fn rejects_bad_exponents() {
        let grid = SweepGrid {
            triples: vec![(0.5, 2.0, 2.0)],
            family: Family::Box,
            sizes: vec![1, 2, 3],
        };
        assert!(run_holder_sweep(&grid, 3).is_err());
    }
}
