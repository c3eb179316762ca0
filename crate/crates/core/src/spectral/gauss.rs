use std::collections::HashMap;
use std::sync::Mutex;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::numeric::{e_ratio, gcd};

/// `g(l, a, q) = q^{-1} sum_{y mod q} e((a y^2 + l y) / q)`, by direct summation.
///
/// The phase numerator is reduced mod `q` in integer arithmetic, so each term
/// is a root of unity evaluated once.
pub fn gauss_sum_1d(l: i64, a: i64, q: u64) -> Result<Complex64> {
    if q == 0 {
        return domain("modulus q must be positive");
    }
    if gcd(a.unsigned_abs(), q) != 1 {
        return domain(format!("gcd({a}, {q}) != 1"));
    }
    let qi = q as i64;
    let a = a.rem_euclid(qi) as i128;
    let l = l.rem_euclid(qi) as i128;
    let qw = q as i128;
    let sum: Complex64 = (0..qw)
        .map(|y| {
            let r = (a * y * y + l * y).rem_euclid(qw) as i64;
            e_ratio(r, qi)
        })
        .sum();
    Ok(sum / q as f64)
}

/// `G(l, a, q) = prod_i g(l_i, a, q)`.
pub fn gauss_sum(l: &[i64], a: i64, q: u64) -> Result<Complex64> {
    l.iter().try_fold(Complex64::new(1.0, 0.0), |acc, &li| {
        Ok(acc * gauss_sum_1d(li, a, q)?)
    })
}

/// `G(m, 0, q) = q^{-d} sum_{z in Z_q^d} e(m . z / q)`, which is the indicator of `q | m`.
pub fn degenerate_sum(m: &[i64], q: u64) -> Result<f64> {
    if q == 0 {
        return domain("modulus q must be positive");
    }
    let q = q as i64;
    Ok(if m.iter().all(|&mi| mi.rem_euclid(q) == 0) {
        1.0
    } else {
        0.0
    })
}

/// Memoized one-coordinate Gauss sums keyed by `(l mod q, a mod q, q)`.
#[derive(Debug, Default)]
pub struct GaussCache {
    table: Mutex<HashMap<(u64, u64, u64), Complex64>>,
}

impl GaussCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, l: i64, a: i64, q: u64) -> Result<Complex64> {
        let qi = q.max(1) as i64;
        let key = (l.rem_euclid(qi) as u64, a.rem_euclid(qi) as u64, q);
        if let Some(v) = self.table.lock().expect("gauss cache poisoned").get(&key) {
            return Ok(*v);
        }
        let v = gauss_sum_1d(l, a, q)?;
        self.table
            .lock()
            .expect("gauss cache poisoned")
            .insert(key, v);
        Ok(v)
    }

    pub fn product(&self, l: &[i64], a: i64, q: u64) -> Result<Complex64> {
        l.iter().try_fold(Complex64::new(1.0, 0.0), |acc, &li| {
            Ok(acc * self.get(li, a, q)?)
        })
    }

    pub fn len(&self) -> usize {
        self.table.lock().expect("gauss cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Reduced residues `1 <= a <= q` with `gcd(a, q) = 1`.
pub fn reduced_residues(q: u64) -> impl Iterator<Item = u64> {
    (1..=q).filter(move |&a| gcd(a, q) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let g = gauss_sum_1d(0, 1, 1).unwrap();
        assert!((g - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let g = gauss_sum_1d(0, 1, 3).unwrap();
        assert!((g - Complex64::new(0.0, 1.0 / 3f64.sqrt())).norm() < 1e-14);
        assert!(gauss_sum_1d(0, 1, 2).unwrap().norm() < 1e-15);
        assert!(gauss_sum_1d(1, 2, 4).is_err());
    }

    #[test]
    fn degenerate_examples() {
        assert_eq!(degenerate_sum(&[0, 0, 0], 5).unwrap(), 1.0);
        assert_eq!(degenerate_sum(&[3, 0, 0], 3).unwrap(), 1.0);
        assert_eq!(degenerate_sum(&[1, 0, 0], 2).unwrap(), 0.0);
    }

    #[test]
    fn degenerate_matches_full_sum() {
        for q in 1..=6u64 {
            for m0 in -7i64..=7 {
                for m1 in -3i64..=3 {
                    let mut s = Complex64::default();
                    for z0 in 0..q as i64 {
                        for z1 in 0..q as i64 {
                            s += e_ratio(m0 * z0 + m1 * z1, q as i64);
                        }
                    }
                    s /= (q * q) as f64;
                    let closed = degenerate_sum(&[m0, m1], q).unwrap();
                    assert!((s - Complex64::new(closed, 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn cache_agrees_and_is_periodic() {
        let cache = GaussCache::new();
        for q in 1..=12u64 {
            for a in reduced_residues(q) {
                for l in -15i64..15 {
                    let direct = gauss_sum_1d(l, a as i64, q).unwrap();
                    assert!((cache.get(l, a as i64, q).unwrap() - direct).norm() < 1e-14);
                }
            }
        }
        assert!(cache.len() > 0);
        let v = cache.product(&[1, 2, 3], 2, 7).unwrap();
        let w = gauss_sum(&[1, 2, 3], 2, 7).unwrap();
        assert!((v - w).norm() < 1e-14);
    }
}
