//! Partial sums of `T*(delta_0, 1)(x)^p` along `lambda = n |x|^2`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::harness::record::{
    fit_loglog_all, linear_fit, ExperimentRecord, FIT_RESIDUAL_THRESHOLD,
};
use crate::lattice::CountTables;

/// Tail increments must fall below this (per lattice point) for "convergent".
pub const CONVERGED_TERM: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Growth {
    Convergent,
    LogLike,
    PowerLike,
    Indeterminate,
}

impl Growth {
    pub fn as_str(self) -> &'static str {
        match self {
            Growth::Convergent => "convergent",
            Growth::LogLike => "log_like",
            Growth::PowerLike => "power_like",
            Growth::Indeterminate => "indeterminate",
        }
    }

    pub fn is_unbounded(self) -> bool {
        matches!(self, Growth::LogLike | Growth::PowerLike)
    }
}

/// Partial sums `S(R)` at integer `R = 1..=R_max` with per-shell diagnostics.
#[derive(Debug, Clone)]
pub struct SharpnessSums {
    pub radii: Vec<u64>,
    pub sums: Vec<f64>,
    /// `S(R) - S(R - 1)`.
    pub increments: Vec<f64>,
    /// Largest single-point term with `R - 1 < |x| <= R`.
    pub max_terms: Vec<f64>,
}

/// `S(R) = sum_{1 <= |x| <= R} (r_d((n-1)|x|^2) / N(n|x|^2))^p`, grouped by shells
/// `|x|^2 = m`. With `d = 4` only `x` with `(n - 1)|x|^2 = 1 mod 8` are kept.
pub fn sharpness_sums(
    tables: &CountTables,
    d: usize,
    n: u64,
    r_max: u64,
    p: f64,
) -> Result<SharpnessSums> {
    if d < 3 || n == 0 || r_max == 0 {
        return domain(format!(
            "need d >= 3, n >= 1, R_max >= 1, got d = {d}, n = {n}, R_max = {r_max}"
        ));
    }
    if !(p > 0.0 && p.is_finite()) {
        return domain(format!("p must be positive and finite, got {p}"));
    }
    let m_max = r_max * r_max;
    let mut radii = Vec::with_capacity(r_max as usize);
    let mut sums = Vec::with_capacity(r_max as usize);
    let mut increments = Vec::with_capacity(r_max as usize);
    let mut max_terms = Vec::with_capacity(r_max as usize);
    let mut total = 0.0;
    let mut shell_sum = 0.0;
    let mut shell_max = 0.0f64;
    let mut radius = 1u64;
    for m in 1..=m_max {
        let points = tables.r(d, m)?;
        let keep = d != 4 || ((n - 1) * m) % 8 == 1;
        if points > 0 && keep {
            let numerator = tables.r(d, (n - 1) * m)? as f64;
            let count = tables.count_n(d, n * m, 2)? as f64;
            let term = (numerator / count).powf(p);
            shell_sum += points as f64 * term;
            if term > 0.0 {
                shell_max = shell_max.max(term);
            }
        }
        if m == radius * radius {
            total += shell_sum;
            radii.push(radius);
            sums.push(total);
            increments.push(shell_sum);
            max_terms.push(shell_max);
            shell_sum = 0.0;
            shell_max = 0.0;
            radius += 1;
        }
    }
    Ok(SharpnessSums {
        radii,
        sums,
        increments,
        max_terms,
    })
}

/// Classification with its evidence.
#[derive(Debug, Clone, Copy)]
pub struct Classification {
    pub growth: Growth,
    /// Log-log slope of the shell increments over `[R_max / 4, R_max]`.
    pub tail_slope: f64,
    /// Largest single-point term in the last unit shell.
    pub last_term: f64,
    /// Slope and residual of `S(R)` against `ln R` over the tail window,
    /// with the residual relative to the mean of `S` there.
    pub log_slope: f64,
    pub log_residual: f64,
}

/// Sequential classifier on the tail window `[R_max / 4, R_max]`:
/// increments decaying faster than `R^{-5/4}` with tiny last terms mean
/// convergent, increments like `R^{-1}` with `S` linear in `ln R` mean
/// log-like, increments decaying slower than `R^{-3/4}` mean power-like.
pub fn classify(sums: &SharpnessSums) -> Result<Classification> {
    let r_max = *sums
        .radii
        .last()
        .ok_or_else(|| crate::Error::Empty("no partial sums".into()))?;
    let start = (r_max / 4).max(2);
    let tail: Vec<usize> = (0..sums.radii.len())
        .filter(|&i| sums.radii[i] >= start)
        .collect();
    if tail.len() < 3 {
        return domain(format!("R_max = {r_max} leaves fewer than 3 tail shells"));
    }
    let inc: Vec<(f64, f64)> = tail
        .iter()
        .filter(|&&i| sums.increments[i] > 0.0)
        .map(|&i| (sums.radii[i] as f64, sums.increments[i]))
        .collect();
    let tail_slope = if inc.len() >= 3 {
        fit_loglog_all(&inc)?.exponent
    } else {
        f64::NEG_INFINITY
    };
    let last_term = *sums.max_terms.last().expect("nonempty");
    let logs: Vec<(f64, f64)> = tail
        .iter()
        .map(|&i| ((sums.radii[i] as f64).ln(), sums.sums[i]))
        .collect();
    let (log_slope, _, rms) = linear_fit(&logs)?;
    let mean = logs.iter().map(|p| p.1).sum::<f64>() / logs.len() as f64;
    let log_residual = if mean > 0.0 {
        rms / mean
    } else {
        f64::INFINITY
    };
    let growth = if tail_slope < -1.25 && last_term < CONVERGED_TERM {
        Growth::Convergent
    } else if (tail_slope + 1.0).abs() <= 0.25
        && log_residual < FIT_RESIDUAL_THRESHOLD
        && log_slope > 0.0
    {
        Growth::LogLike
    } else if tail_slope > -0.75 {
        Growth::PowerLike
    } else {
        Growth::Indeterminate
    };
    Ok(Classification {
        growth,
        tail_slope,
        last_term,
        log_slope,
        log_residual,
    })
}

pub fn run_sharpness_experiment(d: usize, n: u64, r_max: u64, p: f64) -> Result<ExperimentRecord> {
    let tables = CountTables::new(2 * d, n.max(1) * r_max * r_max)?;
    let sums = sharpness_sums(&tables, d, n, r_max, p)?;
    let class = classify(&sums)?;
    let mut rec = ExperimentRecord::new("sharpness", 0);
    rec.param("d", d)
        .param("n", n)
        .param("R_max", r_max)
        .param("p", p);
    if d == 4 {
        rec.param("filter", "(n-1)|x|^2 = 1 mod 8");
    }
    for (i, &r) in sums.radii.iter().enumerate() {
        rec.push("partial_sum", r as f64, sums.sums[i]);
        rec.push("shell_increment", r as f64, sums.increments[i]);
        rec.push("max_term", r as f64, sums.max_terms[i]);
    }
    rec.note("classification", class.growth.as_str())
        .note("unbounded", class.growth.is_unbounded())
        .note("tail_slope", class.tail_slope)
        .note("last_term", class.last_term)
        .note("log_slope", class.log_slope)
        .note("log_residual", class.log_residual)
        .note("final_sum", *sums.sums.last().expect("nonempty"));
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_shells_by_hand() {
        // d = 3, n = 1, p = 1: |x|^2 = 1 has 6 points, each 1 / r_6(1) = 1/12.
        let t = CountTables::new(6, 4).unwrap();
        let s = sharpness_sums(&t, 3, 1, 2, 1.0).unwrap();
        assert!((s.sums[0] - 0.5).abs() < 1e-15);
        // |x|^2 in {2, 3, 4}: 12/r_6(2) + 8/r_6(3) + 6/r_6(4)
        let expect = 0.5 + 12.0 / 60.0 + 8.0 / 160.0 + 6.0 / 252.0;
        assert!((s.sums[1] - expect).abs() < 1e-14, "{}", s.sums[1]);
    }

    #[test]
    fn rejects_small_dimension() {
        let t = CountTables::new(6, 4).unwrap();
        assert!(sharpness_sums(&t, 2, 1, 2, 1.0).is_err());
    }
}
