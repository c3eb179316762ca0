//! Major-arc multipliers: the truncated-integral forms `A`, `B` and the
//! main term `M` built from Gauss sums and the continuous sphere transform.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::lattice::CountTables;
use crate::numeric::{e, e_ratio, gcd};
use crate::spectral::bessel::{gamma_half, sphere_ft};
use crate::spectral::bump::{plateau, Bump};
use crate::spectral::gauss::{reduced_residues, GaussCache};
use crate::spectral::quad::{integrate, uniform_points, QuadOptions};

/// `b(eta; beta) = int e(beta t^2) phi(t / N) e(-t eta) dt` over `|t| <= 2N`.
pub fn box_phase_ft(beta: f64, n: f64, eta: f64) -> Result<Complex64> {
    box_phase_ft_with(beta, n, eta, QuadOptions::default())
}

pub fn box_phase_ft_with(beta: f64, n: f64, eta: f64, opts: QuadOptions) -> Result<Complex64> {
    if !(n > 0.0) {
        return domain("N must be positive");
    }
    // Panel length at most 1/8 of the shortest local wavelength.
    let rate = beta.abs() * n + eta.abs();
    let step = if rate > 0.0 {
        (0.125 / rate).min(n / 4.0)
    } else {
        n / 4.0
    };
    let per_half = ((n / step).ceil() as usize).max(1);
    let mut points = uniform_points(-2.0 * n, -n, per_half);
    points.pop();
    points.extend(uniform_points(-n, n, 2 * per_half));
    points.pop();
    points.extend(uniform_points(n, 2.0 * n, per_half));
    let opts = QuadOptions {
        abs_tol: opts.abs_tol.max(1e-13 * n),
        ..opts
    };
    let r = integrate(
        |t| e(beta * t * t - t * eta) * plateau(t / n),
        &points,
        opts,
    )?;
    Ok(r.value)
}

/// Cutoff rule applied to the `l` and `m` sums of a major-arc multiplier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cutoff {
    /// No cutoffs: the `A` form, with `|q xi_i - l_i| < 2` and `m in q {-1, 0, 1}^d`.
    None,
    /// `Psi_1(q xi - l) Psi_2(-m)` at the given bump scale: the `B` form.
    Bump(f64),
    /// `Psi_1` only, with the `m` sum restricted to `m = 0`.
    ZeroMode(f64),
}

/// Integer `l` with `|q x - l| < radius`, ascending.
fn shift_window(q: u64, x: f64, radius: f64) -> Vec<i64> {
    let c = q as f64 * x;
    let lo = (c - radius).floor() as i64;
    let hi = (c + radius).ceil() as i64;
    (lo..=hi)
        .filter(|&l| (c - l as f64).abs() < radius)
        .collect()
}

struct MajorArcSetup {
    prefactor: Complex64,
    // per coordinate: (xi_i - l_i / q, g(l_i, a, q) * weight)
    shifts: Vec<Vec<(f64, Complex64)>>,
    // (k, weight) for the m_j = k q terms
    modes: Vec<(i64, f64)>,
    half_width: f64,
}

fn setup(
    tables: &CountTables,
    a: u64,
    q: u64,
    lambda: u64,
    n: u64,
    xi: &[f64],
    cutoff: Cutoff,
) -> Result<MajorArcSetup> {
    let d = xi.len();
    if d == 0 {
        return domain("xi must be nonempty");
    }
    if q == 0 || a == 0 || a > q || gcd(a, q) != 1 {
        return domain(format!(
            "need 1 <= a <= q with gcd(a, q) = 1, got a = {a}, q = {q}"
        ));
    }
    if n == 0 || q > n {
        return domain(format!("need 1 <= q <= N, got q = {q}, N = {n}"));
    }
    if let Cutoff::Bump(s) | Cutoff::ZeroMode(s) = cutoff {
        if !(s > 0.0 && s <= 1.0) {
            return domain(format!("cutoff scale must lie in (0, 1], got {s}"));
        }
    }
    let count = tables.count_n(d, lambda, 2)?;
    if count == 0 {
        return Err(Error::EmptySphere {
            dim: d,
            arity: 2,
            lambda,
        });
    }
    let cache = GaussCache::new();
    let prefactor = e_ratio(-((lambda % q) as i64) * a as i64, q as i64) / count as f64;
    let mut shifts = Vec::with_capacity(d);
    for &x in xi {
        let (window, psi) = match cutoff {
            Cutoff::None => (shift_window(q, x, 2.0), None),
            Cutoff::Bump(s) | Cutoff::ZeroMode(s) => {
                let bump = Bump::new(s);
                (shift_window(q, x, bump.support_radius()), Some(bump))
            }
        };
        let mut coord = Vec::new();
        for l in window {
            let weight = psi.map_or(1.0, |b| b.eval_1d(q as f64 * x - l as f64));
            if weight == 0.0 {
                continue;
            }
            coord.push((x - l as f64 / q as f64, cache.get(l, a as i64, q)? * weight));
        }
        shifts.push(coord);
    }
    let modes = match cutoff {
        Cutoff::None => vec![(-1, 1.0), (0, 1.0), (1, 1.0)],
        Cutoff::ZeroMode(_) => vec![(0, 1.0)],
        Cutoff::Bump(s) => {
            let bump = Bump::new(s);
            (-1..=1)
                .map(|k| (k, bump.eval_1d((k * q as i64) as f64)))
                .filter(|&(_, w)| w != 0.0)
                .collect()
        }
    };
    Ok(MajorArcSetup {
        prefactor,
        shifts,
        modes,
        half_width: 1.0 / (8 * q * n) as f64,
    })
}

/// Major-arc multiplier with the given cutoff rule at `(a, q)`.
///
/// The `beta` integrand factorizes over coordinates as
/// `e(-lambda beta) prod_i U_i(beta) V(beta)^d`, where `U_i` carries the `l_i`
/// sum and `V` the surviving `m_j = k q` terms of `G(m, 0, q)`.
pub fn major_arc_multiplier(
    tables: &CountTables,
    a: u64,
    q: u64,
    lambda: u64,
    n: u64,
    xi: &[f64],
    cutoff: Cutoff,
    opts: QuadOptions,
) -> Result<Complex64> {
    let s = setup(tables, a, q, lambda, n, xi, cutoff)?;
    if s.shifts.iter().any(|c| c.is_empty()) || s.modes.is_empty() {
        return Ok(Complex64::default());
    }
    let d = xi.len() as i32;
    let nf = n as f64;
    let inner = QuadOptions {
        rel_tol: 1e-10,
        ..opts
    };
    let mut failure = None;
    let mut integrand = |beta: f64| -> Complex64 {
        if failure.is_some() {
            return Complex64::default();
        }
        let eval = || -> Result<Complex64> {
            let mut value = e(-(lambda as f64) * beta);
            for coord in &s.shifts {
                let mut u = Complex64::default();
                for &(eta, w) in coord {
                    u += w * box_phase_ft_with(beta, nf, eta, inner)?;
                }
                value *= u;
            }
            let mut v = Complex64::default();
            for &(k, w) in &s.modes {
                v += w * box_phase_ft_with(beta, nf, -(k as f64), inner)?;
            }
            Ok(value * v.powi(d))
        };
        match eval() {
            Ok(v) => v,
            Err(err) => {
                failure = Some(err);
                Complex64::default()
            }
        }
    };
    let w = s.half_width;
    // Total phase rate: lambda from e(-lambda beta), up to 4 N^2 from each of the 2d box factors.
    let rate = lambda as f64 + 8.0 * d as f64 * nf * nf;
    let panels = ((2.0 * w * rate).ceil() as usize).max(1) + 2;
    let scale = integrand(0.0).norm() * 2.0 * w;
    let opts = QuadOptions {
        abs_tol: opts.abs_tol.max(1e-13 * scale),
        ..opts
    };
    let result = integrate(&mut integrand, &uniform_points(-w, w, panels), opts);
    if let Some(err) = failure {
        return Err(err);
    }
    Ok(s.prefactor * result?.value)
}

/// `A^{a/q}_lambda(xi)`: truncated `beta` integral, no smooth cutoffs.
pub fn multiplier_a(
    tables: &CountTables,
    a: u64,
    q: u64,
    lambda: u64,
    n: u64,
    xi: &[f64],
) -> Result<Complex64> {
    major_arc_multiplier(
        tables,
        a,
        q,
        lambda,
        n,
        xi,
        Cutoff::None,
        QuadOptions::default(),
    )
}

/// `B^{a/q}_lambda(xi)` with `Psi_1`, `Psi_2` at the default scale 1/4.
pub fn multiplier_b(
    tables: &CountTables,
    a: u64,
    q: u64,
    lambda: u64,
    n: u64,
    xi: &[f64],
) -> Result<Complex64> {
    major_arc_multiplier(
        tables,
        a,
        q,
        lambda,
        n,
        xi,
        Cutoff::Bump(DEFAULT_PSI_SCALE),
        QuadOptions::default(),
    )
}

/// Default scale of `Psi_1`, `Psi_2`: small enough that at most one `l` per
/// coordinate and only `m = 0` survive.
pub const DEFAULT_PSI_SCALE: f64 = 0.25;

/// How the `v`-side factor of the main term is treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MainTermForm {
    /// `G(0, 0, q) Psi_2(0) = 1`, no `N(lambda)` factor.
    Literal,
    /// Includes the `v`-side Gauss sum `G(0, a, q)` and the singular-integral
    /// density `pi^d lambda^{d-1} / Gamma(d)` over `N(lambda)`, so the
    /// `q -> infinity` limit at `xi = 0` is the classical singular-series ratio.
    Normalized,
}

/// One `q` layer of the main term.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Layer {
    pub q: u64,
    pub value: Complex64,
    /// Largest single `(a, q)` term in the layer.
    pub max_term: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MainTerm {
    pub total: Complex64,
    pub layers: Vec<Layer>,
}

/// `M_lambda(xi) = sum_{q <= q_max} sum_{a in U_q} e(-lambda a / q) sum_l G(l, a, q) Psi_1(q xi - l) dsigma((xi - l/q) x 0)`.
pub fn multiplier_m(
    tables: &CountTables,
    lambda: u64,
    n: u64,
    xi: &[f64],
    q_max: u64,
    form: MainTermForm,
) -> Result<MainTerm> {
    multiplier_m_scaled(tables, lambda, n, xi, q_max, form, DEFAULT_PSI_SCALE)
}

pub fn multiplier_m_scaled(
    tables: &CountTables,
    lambda: u64,
    n: u64,
    xi: &[f64],
    q_max: u64,
    form: MainTermForm,
    psi_scale: f64,
) -> Result<MainTerm> {
    let d = xi.len();
    if d == 0 {
        return domain("xi must be nonempty");
    }
    if q_max == 0 || q_max > n {
        return domain(format!(
            "need 1 <= q_max <= N, got q_max = {q_max}, N = {n}"
        ));
    }
    if !(psi_scale > 0.0 && psi_scale <= 1.0) {
        return domain(format!("cutoff scale must lie in (0, 1], got {psi_scale}"));
    }
    let density = match form {
        MainTermForm::Literal => 1.0,
        MainTermForm::Normalized => {
            let count = tables.count_n(d, lambda, 2)?;
            if count == 0 {
                return Err(Error::EmptySphere {
                    dim: d,
                    arity: 2,
                    lambda,
                });
            }
            PI.powi(d as i32) * (lambda as f64).powi(d as i32 - 1)
                / gamma_half(2 * d as u32)
                / count as f64
        }
    };
    let radius = (lambda as f64).sqrt();
    let bump = Bump::new(psi_scale);
    let cache = GaussCache::new();
    let mut layers = Vec::with_capacity(q_max as usize);
    for q in 1..=q_max {
        // (l, Psi_1 weight, dsigma value)
        let windows: Vec<Vec<(i64, f64)>> = xi
            .iter()
            .map(|&x| {
                shift_window(q, x, bump.support_radius())
                    .into_iter()
                    .map(|l| (l, bump.eval_1d(q as f64 * x - l as f64)))
                    .filter(|&(_, w)| w != 0.0)
                    .collect()
            })
            .collect();
        let shifts = cartesian(&windows);
        let mut value = Complex64::default();
        let mut max_term = 0.0f64;
        for a in reduced_residues(q) {
            let phase = e_ratio(-(((lambda % q) * a) as i64), q as i64);
            let v_side = match form {
                MainTermForm::Literal => Complex64::new(1.0, 0.0),
                MainTermForm::Normalized => cache.get(0, a as i64, q)?.powi(d as i32),
            };
            let mut term = Complex64::default();
            for (ls, weight) in &shifts {
                let dist = ls
                    .iter()
                    .zip(xi)
                    .map(|(&l, &x)| (x - l as f64 / q as f64).powi(2))
                    .sum::<f64>()
                    .sqrt();
                let g = cache.product(ls, a as i64, q)?;
                term += g * (*weight * sphere_ft(2 * d, radius.max(f64::MIN_POSITIVE), dist));
            }
            let term = phase * v_side * term * density;
            max_term = max_term.max(term.norm());
            value += term;
        }
        layers.push(Layer { q, value, max_term });
    }
    let total = layers.iter().map(|l| l.value).sum();
    Ok(MainTerm { total, layers })
}

fn cartesian(windows: &[Vec<(i64, f64)>]) -> Vec<(Vec<i64>, f64)> {
    let mut out = vec![(Vec::with_capacity(windows.len()), 1.0)];
    for w in windows {
        let mut next = Vec::with_capacity(out.len() * w.len());
        for (ls, weight) in &out {
            for &(l, wl) in w {
                let mut ls = ls.clone();
                ls.push(l);
                next.push((ls, weight * wl));
            }
        }
        out = next;
    }
    out
}

/// One evaluated symbol value, with `layer_q = 0` meaning a total.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplierSample {
    pub lambda: u64,
    pub xi: Vec<f64>,
    pub value: Complex64,
    pub layer_q: u64,
}

/// CSV with columns `lambda,xi_1..xi_d,re,im,layer_q`.
pub fn write_multiplier_csv<W: Write>(samples: &[MultiplierSample], writer: W) -> Result<()> {
    let d = samples.first().map_or(0, |s| s.xi.len());
    if samples.iter().any(|s| s.xi.len() != d) {
        return domain("all samples must share one dimension");
    }
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["lambda".to_string()];
    header.extend((1..=d).map(|i| format!("xi_{i}")));
    header.extend(["re", "im", "layer_q"].map(String::from));
    w.write_record(&header)?;
    for s in samples {
        let mut row = vec![s.lambda.to_string()];
        row.extend(s.xi.iter().map(|x| x.to_string()));
        row.push(s.value.re.to_string());
        row.push(s.value.im.to_string());
        row.push(s.layer_q.to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump_integral() -> f64 {
        let r = integrate(
            |t| Complex64::new(plateau(t), 0.0),
            &[-2.0, -1.0, 1.0, 2.0],
            QuadOptions {
                rel_tol: 1e-13,
                ..QuadOptions::default()
            },
        )
        .unwrap();
        r.value.re
    }

    #[test]
    fn box_ft_without_phase() {
        let mass = bump_integral();
        // The transition is antisymmetric about 3/2, so the mass is exactly 3.
        assert!((mass - 3.0).abs() < 1e-12);
        for n in [1.0, 4.0, 10.0] {
            let v = box_phase_ft(0.0, n, 0.0).unwrap();
            assert!((v.re - 3.0 * n).abs() < 1e-8 * n && v.im.abs() < 1e-10);
        }
    }

    #[test]
    fn box_ft_symmetries() {
        for &(beta, eta) in &[(0.01, 0.3), (-0.02, 0.11), (0.003, -0.7)] {
            let a = box_phase_ft(beta, 6.0, eta).unwrap();
            let b = box_phase_ft(-beta, 6.0, -eta).unwrap().conj();
            assert!((a - b).norm() < 1e-8 * a.norm().max(1.0));
            let c = box_phase_ft(beta, 6.0, -eta).unwrap();
            assert!((a - c).norm() < 1e-8 * a.norm().max(1.0));
        }
    }

    #[test]
    fn domain_checks() {
        let tables = CountTables::new(6, 40).unwrap();
        assert!(multiplier_a(&tables, 2, 4, 16, 4, &[0.0; 3]).is_err());
        assert!(multiplier_a(&tables, 1, 5, 16, 4, &[0.0; 3]).is_err());
        assert!(multiplier_m(&tables, 16, 4, &[0.0; 3], 5, MainTermForm::Literal).is_err());
    }

    #[test]
    fn main_term_first_layer_at_origin() {
        let tables = CountTables::new(6, 40).unwrap();
        let m = multiplier_m(&tables, 16, 4, &[0.0; 3], 1, MainTermForm::Literal).unwrap();
        assert!((m.total - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn zero_mode_matches_bump_form() {
        let tables = CountTables::new(4, 20).unwrap();
        let xi = [0.05, 0.3];
        let b = multiplier_b(&tables, 1, 2, 9, 3, &xi).unwrap();
        let z = major_arc_multiplier(
            &tables,
            1,
            2,
            9,
            3,
            &xi,
            Cutoff::ZeroMode(DEFAULT_PSI_SCALE),
            QuadOptions::default(),
        )
        .unwrap();
        assert_eq!(b, z);
    }

    #[test]
    fn csv_layout() {
        let samples = vec![MultiplierSample {
            lambda: 5,
            xi: vec![0.0, 0.5],
            value: Complex64::new(1.0, -0.25),
            layer_q: 0,
        }];
        let mut buf = Vec::new();
        write_multiplier_csv(&samples, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "lambda,xi_1,xi_2,re,im,layer_q\n5,0,0.5,1,-0.25,0\n"
        );
    }
}
