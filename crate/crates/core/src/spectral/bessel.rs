//! Fourier transform of the normalized surface measure on a sphere in `R^k`.
//!
//! `sphere_ft(k, r, s) = c_k (2 pi r s)^{-nu} J_nu(2 pi r s)` with `nu = (k - 2) / 2`.
//! `x^{-nu} J_nu(x)` is evaluated by its power series below a switch point and
//! by the Hankel asymptotic expansion above it.

use std::f64::consts::PI;

/// Evaluation settings; `level` 0 is the default, higher levels move the
/// series/asymptotic switch outward and keep more terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselConfig {
    pub switch: f64,
    pub series_terms: usize,
    pub asymptotic_terms: usize,
}

impl BesselConfig {
    pub fn level(nu: f64, level: u32) -> Self {
        let base = 15.0 + 1.5 * nu;
        BesselConfig {
            switch: base + 5.0 * level as f64,
            series_terms: 200 + 100 * level as usize,
            asymptotic_terms: 30 + 10 * level as usize,
        }
    }
}

/// `Gamma(n / 2)` for a positive integer `n`, by the recurrence from `Gamma(1)` or `Gamma(1/2)`.
pub fn gamma_half(n: u32) -> f64 {
    assert!(n > 0, "Gamma(0) is undefined");
    let mut value = if n % 2 == 0 { 1.0 } else { PI.sqrt() };
    let mut z = if n % 2 == 0 { 1.0 } else { 0.5 };
    let target = n as f64 / 2.0;
    while z < target {
        value *= z;
        z += 1.0;
    }
    value
}

/// `x^{-nu} J_nu(x)` from the power series `sum (-x^2/4)^m / (m! Gamma(m + nu + 1)) / 2^nu`.
fn scaled_series(two_nu: u32, x: f64, terms: usize) -> f64 {
    let nu = two_nu as f64 / 2.0;
    let mut term = 1.0 / (gamma_half(two_nu + 2) * 2f64.powf(nu));
    let mut sum = term;
    let y = -x * x / 4.0;
    for m in 1..terms {
        term *= y / (m as f64 * (m as f64 + nu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// `J_nu(x)` from the Hankel expansion `sqrt(2/(pi x)) (P cos chi - Q sin chi)`.
fn hankel(two_nu: u32, x: f64, terms: usize) -> f64 {
    let nu = two_nu as f64 / 2.0;
    let mu = 4.0 * nu * nu;
    let (mut p, mut q) = (0.0, 0.0);
    let mut a = 1.0;
    let mut prev = f64::INFINITY;
    for j in 0..terms {
        if j > 0 {
            let odd = (2 * j - 1) as f64;
            a *= (mu - odd * odd) / (j as f64 * 8.0 * x);
        }
        // Stop at the smallest term: the series is asymptotic, not convergent.
        if a.abs() > prev {
            break;
        }
        prev = a.abs();
        match j % 4 {
            0 => p += a,
            1 => q += a,
            2 => p -= a,
            _ => q -= a,
        }
        if a == 0.0 {
            break;
        }
    }
    let chi = x - (nu / 2.0 + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// `x^{-nu} J_nu(x)` with `nu = two_nu / 2`.
pub fn scaled_bessel(two_nu: u32, x: f64, config: BesselConfig) -> f64 {
    let x = x.abs();
    if x < config.switch {
        scaled_series(two_nu, x, config.series_terms)
    } else {
        hankel(two_nu, x, config.asymptotic_terms) / x.powf(two_nu as f64 / 2.0)
    }
}

/// `sphere_ft` at refinement `level`.
pub fn sphere_ft_refined(k: usize, r: f64, s: f64, level: u32) -> f64 {
    assert!(k >= 2, "sphere dimension must be at least 2");
    assert!(r > 0.0 && s >= 0.0, "need r > 0 and s >= 0");
    let two_nu = (k - 2) as u32;
    let config = BesselConfig::level(two_nu as f64 / 2.0, level);
    // The constant comes from the s -> 0 limit of the same evaluator.
    let c_k = 1.0 / scaled_bessel(two_nu, 0.0, config);
    if s == 0.0 {
        return 1.0;
    }
    c_k * scaled_bessel(two_nu, 2.0 * PI * r * s, config)
}

/// Fourier transform of normalized surface measure on the radius-`r` sphere of `R^k`
/// at frequency magnitude `s`; equals 1 at `s = 0`.
pub fn sphere_ft(k: usize, r: f64, s: f64) -> f64 {
    sphere_ft_refined(k, r, s, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::quad::{integrate, uniform_points, QuadOptions};
    use num_complex::Complex64;

    #[test]
    fn gamma_values() {
        assert_eq!(gamma_half(2), 1.0);
        assert_eq!(gamma_half(8), 6.0);
        assert!((gamma_half(1) - PI.sqrt()).abs() < 1e-15);
        assert!((gamma_half(5) - 0.75 * PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn unit_at_origin() {
        for k in 2..12 {
            assert_eq!(sphere_ft(k, 1.0, 0.0), 1.0);
            assert!((sphere_ft(k, 1.0, 1e-9) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn circle_matches_quadrature() {
        for s in [0.1, 0.7, 2.3, 2.9, 3.6, 10.0, 41.5] {
            let q = integrate(
                |t| Complex64::new((2.0 * PI * s * t.cos()).cos(), 0.0),
                &uniform_points(0.0, 2.0 * PI, 64),
                QuadOptions::default(),
            )
            .unwrap();
            let j0 = q.value.re / (2.0 * PI);
            assert!((sphere_ft(2, 1.0, s) - j0).abs() < 1e-9, "s = {s}");
        }
    }

    #[test]
    fn three_dimensional_closed_form() {
        // In R^3 the transform is sin(2 pi s) / (2 pi s).
        for i in 1..400 {
            let s = i as f64 * 0.137;
            let x = 2.0 * PI * s;
            assert!((sphere_ft(3, 1.0, s) - x.sin() / x).abs() < 1e-9, "s = {s}");
        }
    }

    #[test]
    fn branches_agree_near_switch() {
        for two_nu in 0..8u32 {
            let nu = two_nu as f64 / 2.0;
            let x = 15.0 + 1.5 * nu + 0.3;
            let series = scaled_series(two_nu, x, 400);
            let asym = hankel(two_nu, x, 40) / x.powf(nu);
            assert!((series - asym).abs() < 1e-8 * series.abs().max(x.powf(-nu - 0.5)));
        }
    }
}
