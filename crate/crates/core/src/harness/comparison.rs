//! Exact symbol against the major-arc main term, layer by layer.

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::harness::record::{linear_fit, ExperimentRecord};
use crate::lattice::CountTables;
use crate::numeric::isqrt;
use crate::spectral::bessel::gamma_half;
use crate::spectral::multiplier::{multiplier_b, multiplier_m, MainTermForm};
use crate::spectral::symbol::SigmaHat;

/// Frequencies where the `B` multiplier is compared with the first layer.
pub const B_SAMPLES: usize = 4;

/// Points `(t_1, ..., t_d)` with each `t_i` in `{0, 1/(2k), ..., 1/2}`.
pub fn cube_grid(d: usize, k: usize) -> Vec<Vec<f64>> {
    let steps: Vec<f64> = (0..=k).map(|j| j as f64 / (2 * k) as f64).collect();
    let mut out = vec![Vec::with_capacity(d)];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p| {
                steps.iter().map(move |&t| {
                    let mut p = p.clone();
                    p.push(t);
                    p
                })
            })
            .collect();
    }
    out
}

fn norm(xi: &[f64]) -> f64 {
    xi.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Sup error of the cumulative main term for every cutoff `1..=q_max`.
fn sup_errors(exact: &[Complex64], layers: &[Vec<Complex64>], q_max: usize) -> Vec<f64> {
    (1..=q_max)
        .map(|q| {
            exact
                .iter()
                .zip(layers)
                .map(|(s, l)| (s - l[..q].iter().sum::<Complex64>()).norm())
                .fold(0.0, f64::max)
        })
        .collect()
}

/// A series decreases overall: last below first, or a negative fitted trend.
fn decreasing(values: &[f64]) -> bool {
    if values.len() < 2 {
        return false;
    }
    let pts: Vec<(f64, f64)> = values
        .iter()
        .enumerate()
        .map(|(i, &v)| ((i + 1) as f64, v))
        .collect();
    values[values.len() - 1] < values[0] || linear_fit(&pts).map(|f| f.0 < 0.0).unwrap_or(false)
}

pub fn run_multiplier_comparison(
    d: usize,
    lambda_list: &[u64],
    xi_grid: &[Vec<f64>],
    q_max: u64,
) -> Result<ExperimentRecord> {
    if lambda_list.is_empty() || xi_grid.is_empty() || q_max == 0 {
        return domain("need lambdas, frequencies and q_max >= 1");
    }
    if let Some(xi) = xi_grid.iter().find(|xi| xi.len() != d) {
        return domain(format!("frequency {xi:?} does not have length {d}"));
    }
    let lambda_max = *lambda_list.iter().max().expect("nonempty");
    let tables = CountTables::new(2 * d, lambda_max)?;
    let mut rec = ExperimentRecord::new("multiplier", 0);
    rec.param("d", d)
        .param("lambda", lambda_list)
        .param("q_max", q_max)
        .param("grid_points", xi_grid.len())
        .param("N", "isqrt(lambda)");
    let mut all_decreasing = true;
    for &lambda in lambda_list {
        let n = isqrt(lambda).max(1);
        let q_eff = q_max.min(n) as usize;
        let symbol = SigmaHat::new(&tables, d, lambda)?;
        let exact: Vec<Complex64> = xi_grid
            .iter()
            .map(|xi| symbol.eval(xi))
            .collect::<Result<_>>()?;
        let mut literal = Vec::with_capacity(xi_grid.len());
        let mut normalized = Vec::with_capacity(xi_grid.len());
        for xi in xi_grid {
            let m = multiplier_m(&tables, lambda, n, xi, q_eff as u64, MainTermForm::Literal)?;
            literal.push(m.layers.iter().map(|l| l.value).collect::<Vec<_>>());
            let m = multiplier_m(
                &tables,
                lambda,
                n,
                xi,
                q_eff as u64,
                MainTermForm::Normalized,
            )?;
            normalized.push(m.layers.iter().map(|l| l.value).collect::<Vec<_>>());
        }
        let lit_err = sup_errors(&exact, &literal, q_eff);
        let norm_err = sup_errors(&exact, &normalized, q_eff);
        for q in 0..q_eff {
            rec.push(
                &format!("literal_error_{lambda}"),
                (q + 1) as f64,
                lit_err[q],
            );
            rec.push(
                &format!("normalized_error_{lambda}"),
                (q + 1) as f64,
                norm_err[q],
            );
        }
        for (i, xi) in xi_grid.iter().enumerate() {
            let total: Complex64 = literal[i].iter().sum();
            rec.push(
                &format!("literal_surface_{lambda}"),
                norm(xi),
                (exact[i] - total).norm(),
            );
        }
        let down = decreasing(&norm_err);
        all_decreasing &= down;
        rec.note(&format!("normalized_decreasing_{lambda}"), down)
            .note(&format!("q_max_used_{lambda}"), q_eff);

        // at the origin: exact symbol is 1, first literal layer is 1
        let origin = vec![0.0; d];
        let m0 = multiplier_m(
            &tables,
            lambda,
            n,
            &origin,
            q_eff as u64,
            MainTermForm::Literal,
        )?;
        let higher: Complex64 = m0.layers[1..].iter().map(|l| l.value).sum();
        let residual = symbol.eval(&origin)? - m0.total;
        rec.note(&format!("origin_sigma_{lambda}"), symbol.eval(&origin)?.re)
            .note(&format!("origin_layer1_{lambda}"), m0.layers[0].value.re)
            .note(
                &format!("origin_residual_gap_{lambda}"),
                (residual + higher).norm(),
            );

        // decay constant along (t, 0, ..., 0)
        let exponent = (2 * d - 1) as f64 / 2.0;
        let root = (lambda as f64).sqrt();
        let mut decay_constant = 0.0f64;
        for j in 1..=64 {
            let t = j as f64 / 128.0;
            let mut xi = vec![0.0; d];
            xi[0] = t;
            let v = symbol.eval(&xi)?.norm() * (1.0 + root * t).powf(exponent);
            decay_constant = decay_constant.max(v);
            rec.push(
                &format!("sigma_decay_{lambda}"),
                t,
                symbol.eval(&xi)?.norm(),
            );
        }
        rec.note(&format!("decay_constant_{lambda}"), decay_constant);

        // B at a/q = 1/1 against the first literal layer, next to the density factor
        let count = tables.count_n(d, lambda, 2)? as f64;
        let density = std::f64::consts::PI.powi(d as i32) * (lambda as f64).powi(d as i32 - 1)
            / gamma_half(2 * d as u32)
            / count;
        let mut ratios = Vec::new();
        for (i, xi) in xi_grid.iter().enumerate().take(B_SAMPLES) {
            let first = literal[i][0];
            if first.norm() < 1e-3 {
                continue;
            }
            ratios.push((multiplier_b(&tables, 1, 1, lambda, n, xi)? / first).norm());
        }
        if !ratios.is_empty() {
            let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
            rec.note(&format!("b_over_m_mean_{lambda}"), mean)
                .note(
                    &format!("b_over_m_min_{lambda}"),
                    ratios.iter().copied().fold(f64::INFINITY, f64::min),
                )
                .note(
                    &format!("b_over_m_max_{lambda}"),
                    ratios.iter().copied().fold(0.0, f64::max),
                )
                .note(&format!("density_{lambda}"), density);
        }
    }
    rec.note("normalized_decreasing", all_decreasing);
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        let g = cube_grid(3, 2);
        assert_eq!(g.len(), 27);
        assert_eq!(g[0], vec![0.0; 3]);
        assert_eq!(g[26], vec![0.5; 3]);
    }

    #[test]
    fn trend_rule() {
        assert!(decreasing(&[0.3, 0.4, 0.1]));
        assert!(!decreasing(&[0.1, 0.2, 0.3]));
    }
}
