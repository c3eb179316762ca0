use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::numeric::{e, golden_max};

/// `S_N(theta, xi) = sum_{0 <= u <= N} e(theta u^2 + xi u)`, summed directly.
pub fn weyl_sum(n: u64, theta: f64, xi: f64) -> Complex64 {
    (0..=n)
        .map(|u| {
            let uf = u as f64;
            e(theta * (u * u) as f64 + xi * uf)
        })
        .sum()
}

/// `F(theta, xi) F(theta) = prod_i S_N(theta, xi_i) * S_N(theta, 0)^d`.
pub fn generating_product(n: u64, theta: f64, xi: &[f64]) -> Complex64 {
    let base = weyl_sum(n, theta, 0.0);
    xi.iter()
        .map(|&x| weyl_sum(n, theta, x) * base)
        .fold(Complex64::new(1.0, 0.0), |acc, z| acc * z)
}

/// Evaluates `max_xi |S_N(theta, xi)|` for many `theta` at fixed `N`.
///
/// The sum over `u` is a trigonometric polynomial in `xi` of degree `N`, so one
/// inverse FFT of length `8N` samples it on a grid finer than its `1/N`
/// oscillation scale; golden-section search then polishes the grid maximum.
pub struct WeylSup {
    n: u64,
    grid: usize,
    fft: Arc<dyn Fft<f64>>,
    coeffs: Vec<Complex64>,
    buffer: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

/// Result of one sup evaluation.
#[derive(Debug, Clone, Copy)]
pub struct SupSample {
    /// Maximizing frequency in `[0, 1)`.
    pub xi: f64,
    /// `max_xi |S_N(theta, xi)|`.
    pub sup: f64,
    /// `S_N(theta, 0)`, free by-product of the same transform.
    pub at_zero: Complex64,
}

impl WeylSup {
    pub fn new(n: u64) -> Self {
        let grid = (8 * n.max(1)) as usize;
        let fft = FftPlanner::new().plan_fft_inverse(grid);
        let scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        WeylSup {
            n,
            grid,
            fft,
            coeffs: vec![Complex64::default(); n as usize + 1],
            buffer: vec![Complex64::default(); grid],
            scratch,
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn grid_len(&self) -> usize {
        self.grid
    }

    fn horner(&self, xi: f64) -> Complex64 {
        let z = e(xi);
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::default(), |acc, &c| acc * z + c)
    }

    pub fn evaluate(&mut self, theta: f64) -> SupSample {
        for (u, c) in self.coeffs.iter_mut().enumerate() {
            *c = e(theta * (u * u) as f64);
        }
        self.buffer
            .iter_mut()
            .for_each(|b| *b = Complex64::default());
        self.buffer[..self.coeffs.len()].copy_from_slice(&self.coeffs);
        self.fft
            .process_with_scratch(&mut self.buffer, &mut self.scratch);

        let (best_j, best) = self
            .buffer
            .iter()
            .enumerate()
            .map(|(j, z)| (j, z.norm()))
            .fold(
                (0, f64::NEG_INFINITY),
                |acc, x| if x.1 > acc.1 { x } else { acc },
            );
        let at_zero = self.buffer[0];
        let h = 1.0 / self.grid as f64;
        let centre = best_j as f64 * h;
        let (xi, refined) = golden_max(|x| self.horner(x).norm(), centre - h, centre + h, 48);
        let (xi, sup) = if refined > best {
            (xi, refined)
        } else {
            (centre, best)
        };
        SupSample {
            xi: xi - xi.floor(),
            sup,
            at_zero,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_values() {
        for n in [0u64, 1, 5, 17] {
            let s = weyl_sum(n, 0.0, 0.0);
            assert!((s.re - (n + 1) as f64).abs() < 1e-12 && s.im.abs() < 1e-12);
        }
        let s = weyl_sum(4, 0.5, 0.0);
        assert!((s - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(weyl_sum(3, 0.0, 0.5).norm() < 1e-12);
    }

    #[test]
    fn product_examples() {
        let p = generating_product(4, 0.0, &[0.0; 3]);
        assert!((p.re - 5f64.powi(6)).abs() < 1e-6);
        let p = generating_product(4, 0.5, &[0.0; 3]);
        assert!((p - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let xi = [0.13, -0.4, 0.77];
        let neg: Vec<f64> = xi.iter().map(|x| -x).collect();
        let a = generating_product(9, 0.318, &xi);
        let b = generating_product(9, -0.318, &neg).conj();
        assert!((a - b).norm() < 1e-9 * a.norm().max(1.0));
    }

    #[test]
    fn sup_dominates_dense_scan() {
        let mut sup = WeylSup::new(40);
        for theta in [0.0123, 0.31, 0.5 + 1e-3, 0.7071] {
            let s = sup.evaluate(theta);
            let dense = (0..20_000)
                .map(|j| weyl_sum(40, theta, j as f64 / 20_000.0).norm())
                .fold(0.0, f64::max);
            assert!(s.sup >= dense - 1e-9, "theta {theta}: {} < {dense}", s.sup);
            assert!(s.sup <= dense * (1.0 + 1e-4));
            assert!((weyl_sum(40, theta, s.xi).norm() - s.sup).abs() < 1e-9);
            assert!((s.at_zero - weyl_sum(40, theta, 0.0)).norm() < 1e-9);
        }
    }
}
