use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::lattice::{sphere_points, CountTables, LatticePoint};
use crate::numeric::{e, pairwise_sum_complex};

/// Exact partial Fourier transform of the lattice sphere measure,
/// `N(lambda)^{-1} sum_{|u|^2 + |v|^2 = lambda} e(u . xi)`.
///
/// The `v` sum is collapsed to the count `r_d(lambda - |u|^2)`, so only the
/// shells `|u|^2 = k <= lambda` with a nonzero complementary count are
/// enumerated. Build once and evaluate at many frequencies.
#[derive(Debug, Clone)]
pub struct SigmaHat {
    d: usize,
    lambda: u64,
    // (point, weight r_d(lambda - |u|^2)), in shell order
    terms: Vec<(LatticePoint, f64)>,
    norm: f64,
}

impl SigmaHat {
    pub fn new(tables: &CountTables, d: usize, lambda: u64) -> Result<Self> {
        if d == 0 {
            return domain("dimension must be at least 1");
        }
        let n = tables.count_n(d, lambda, 2)?;
        if n == 0 {
            return Err(Error::EmptySphere {
                dim: d,
                arity: 2,
                lambda,
            });
        }
        let mut terms = Vec::new();
        for k in 0..=lambda {
            let weight = tables.r(d, lambda - k)?;
            if weight == 0 || tables.r(d, k)? == 0 {
                continue;
            }
            for u in sphere_points(d, k as i64)? {
                terms.push((u, weight as f64));
            }
        }
        Ok(SigmaHat {
            d,
            lambda,
            terms,
            norm: n as f64,
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    pub fn eval(&self, xi: &[f64]) -> Result<Complex64> {
        if xi.len() != self.d {
            return domain(format!("xi has length {}, expected {}", xi.len(), self.d));
        }
        let parts: Vec<Complex64> = self
            .terms
            .iter()
            .map(|(u, w)| {
                let phase: f64 = u
                    .coords()
                    .iter()
                    .zip(xi)
                    .map(|(&ui, &x)| ui as f64 * x)
                    .sum();
                e(phase) * *w
            })
            .collect();
        Ok(pairwise_sum_complex(&parts) / self.norm)
    }
}

/// `sigma_hat_{lambda,0}(xi)`; fails with `EmptySphere` when `N(lambda) = 0`.
pub fn sigma_hat_exact(
    tables: &CountTables,
    d: usize,
    lambda: u64,
    xi: &[f64],
) -> Result<Complex64> {
    SigmaHat::new(tables, d, lambda)?.eval(xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn examples() {
        let tables = CountTables::new(6, 10).unwrap();
        let one = sigma_hat_exact(&tables, 3, 1, &[0.0; 3]).unwrap();
        assert_eq!(one, Complex64::new(1.0, 0.0));
        let xi = [0.1, 0.27, -0.4];
        let v = sigma_hat_exact(&tables, 3, 1, &xi).unwrap();
        let expect = (6.0 + 2.0 * xi.iter().map(|x| (2.0 * PI * x).cos()).sum::<f64>()) / 12.0;
        assert!((v.re - expect).abs() < 1e-14 && v.im.abs() < 1e-14);
        let half = sigma_hat_exact(&tables, 3, 1, &[0.5; 3]).unwrap();
        assert!(half.norm() < 1e-15);
    }

    #[test]
    fn empty_sphere_is_an_error() {
        // d = 1: N(3) = r_2(3) = 0
        let tables = CountTables::new(4, 10).unwrap();
        assert!(matches!(
            sigma_hat_exact(&tables, 1, 3, &[0.0]),
            Err(Error::EmptySphere { .. })
        ));
    }

    #[test]
    fn matches_double_enumeration() {
        let tables = CountTables::new(6, 30).unwrap();
        let xi3 = [0.123, -0.311, 0.47];
        for d in 1..=3usize {
            let xi = &xi3[..d];
            for lambda in 0..=30u64 {
                if tables.count_n(d, lambda, 2).unwrap() == 0 {
                    continue;
                }
                let mut total = Complex64::default();
                let mut count = 0u64;
                for k in 0..=lambda {
                    for u in sphere_points(d, k as i64).unwrap() {
                        for _v in sphere_points(d, (lambda - k) as i64).unwrap() {
                            let phase: f64 =
                                u.coords().iter().zip(xi).map(|(&a, &b)| a as f64 * b).sum();
                            total += e(phase);
                            count += 1;
                        }
                    }
                }
                let direct = total / count as f64;
                let fast = sigma_hat_exact(&tables, d, lambda, xi).unwrap();
                assert!((direct - fast).norm() < 1e-12, "d {d} lambda {lambda}");
            }
        }
    }
}
