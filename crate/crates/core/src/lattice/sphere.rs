use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::numeric::isqrt;

/// A point of `Z^d`. Ordering is lexicographic on the coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn origin(d: usize) -> Self {
        LatticePoint(vec![0; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// `|u|^2`, computed exactly.
    pub fn norm_sq(&self) -> u64 {
        self.0.iter().map(|&c| (c * c) as u64).sum()
    }

    pub fn add(&self, other: &[i64]) -> LatticePoint {
        LatticePoint(self.0.iter().zip(other).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &[i64]) -> LatticePoint {
        LatticePoint(self.0.iter().zip(other).map(|(a, b)| a - b).collect())
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        LatticePoint(v)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// All `u in Z^d` with `|u|^2 = lambda`, in ascending lexicographic order.
///
/// Coordinates are chosen one at a time with `u_i^2` bounded by the remaining
/// budget, so the work is proportional to the output plus the pruned prefixes.
pub fn sphere_points(d: usize, lambda: i64) -> Result<Vec<LatticePoint>> {
    if d == 0 {
        return domain("dimension must be at least 1");
    }
    if lambda < 0 {
        return domain(format!(
            "sphere radius squared must be nonnegative, got {lambda}"
        ));
    }
    let lambda = lambda as u64;
    let bound = isqrt(lambda) as i64;
    // Stripes by first coordinate; collecting in order keeps the output deterministic.
    let stripes: Vec<Vec<LatticePoint>> = (-bound..=bound)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let rest = lambda - (first * first) as u64;
            let mut prefix = Vec::with_capacity(d);
            prefix.push(first);
            descend(d - 1, rest, &mut prefix, &mut out);
            out
        })
        .collect();
    Ok(stripes.into_iter().flatten().collect())
}

fn descend(remaining_dims: usize, budget: u64, prefix: &mut Vec<i64>, out: &mut Vec<LatticePoint>) {
    if remaining_dims == 0 {
        if budget == 0 {
            out.push(LatticePoint(prefix.clone()));
        }
        return;
    }
    if remaining_dims == 1 {
        let t = isqrt(budget);
        if t * t == budget {
            if t == 0 {
                prefix.push(0);
                out.push(LatticePoint(prefix.clone()));
                prefix.pop();
            } else {
                for c in [-(t as i64), t as i64] {
                    prefix.push(c);
                    out.push(LatticePoint(prefix.clone()));
                    prefix.pop();
                }
            }
        }
        return;
    }
    let bound = isqrt(budget) as i64;
    for c in -bound..=bound {
        prefix.push(c);
        descend(remaining_dims - 1, budget - (c * c) as u64, prefix, out);
        prefix.pop();
    }
}

/// Every sphere `S_k = {|u|^2 = k}` for `k = 0..=lambda_max`, indexed by `k`.
pub fn shells(d: usize, lambda_max: u64) -> Result<Vec<Vec<LatticePoint>>> {
    (0..=lambda_max)
        .map(|k| sphere_points(d, k as i64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<LatticePoint> {
        v.iter().map(|c| LatticePoint(c.to_vec())).collect()
    }

    #[test]
    fn unit_circle() {
        let got = sphere_points(2, 1).unwrap();
        assert_eq!(got, pts(&[&[-1, 0], &[0, -1], &[0, 1], &[1, 0]]));
    }

    #[test]
    fn origin_and_empty() {
        assert_eq!(sphere_points(3, 0).unwrap(), pts(&[&[0, 0, 0]]));
        assert!(sphere_points(2, 3).unwrap().is_empty());
        assert!(sphere_points(2, -1).is_err());
        assert!(sphere_points(0, 1).is_err());
    }

    #[test]
    fn sorted_and_on_sphere() {
        let got = sphere_points(4, 50).unwrap();
        assert!(got.windows(2).all(|w| w[0] < w[1]));
        assert!(got.iter().all(|p| p.norm_sq() == 50));
    }
}
