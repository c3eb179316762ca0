//! Globally adaptive Gauss-Kronrod (7, 15) quadrature for complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, QuadratureFailure, Result};

const XK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_553,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_41,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights on the odd Kronrod nodes XK[1], XK[3], XK[5], XK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            rel_tol: 1e-8,
            abs_tol: 1e-14,
            max_intervals: 20_000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    pub intervals: usize,
}

struct Panel {
    lo: f64,
    hi: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: FnMut(f64) -> Complex64>(f: &mut F, lo: f64, hi: f64) -> Panel {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let fc = f(c);
    let mut kronrod = fc * WK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XK[j];
        let pair = f(c - dx) + f(c + dx);
        kronrod += pair * WK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let value = kronrod * h;
    let error = ((kronrod - gauss) * h).norm();
    Panel {
        lo,
        hi,
        value,
        error,
    }
}

/// Integrates `f` over `[points[0], points[last]]`, starting from the panels
/// delimited by `points` (which must be increasing).
///
/// Panels are bisected in order of largest error estimate until the summed
/// estimate drops below `max(abs_tol, rel_tol |I|)`.
pub fn integrate<F: FnMut(f64) -> Complex64>(
    mut f: F,
    points: &[f64],
    opts: QuadOptions,
) -> Result<QuadResult> {
    assert!(points.len() >= 2, "need at least one panel");
    let mut heap = BinaryHeap::new();
    for w in points.windows(2) {
        if w[1] > w[0] {
            heap.push(gk15(&mut f, w[0], w[1]));
        }
    }
    loop {
        // Re-summing keeps the totals free of cancellation drift.
        let value: Complex64 = heap.iter().map(|p| p.value).sum();
        let error: f64 = heap.iter().map(|p| p.error).sum();
        let tolerance = opts.abs_tol.max(opts.rel_tol * value.norm());
        if error <= tolerance {
            return Ok(QuadResult {
                value,
                error,
                intervals: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap nonempty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if heap.len() + 2 > opts.max_intervals || mid <= worst.lo || mid >= worst.hi {
            return Err(Error::Quadrature(QuadratureFailure {
                estimate: (value.re, value.im),
                error,
                tolerance,
                intervals: heap.len() + 1,
                bounds: (points[0], points[points.len() - 1]),
            }));
        }
        heap.push(gk15(&mut f, worst.lo, mid));
        heap.push(gk15(&mut f, mid, worst.hi));
    }
}

/// `n + 1` equally spaced breakpoints on `[lo, hi]`.
pub fn uniform_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let n = n.max(1);
    (0..=n)
        .map(|i| lo + (hi - lo) * i as f64 / n as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::e;

    #[test]
    fn polynomials_exact() {
        let r = integrate(
            |x| Complex64::new(x.powi(6), x),
            &[0.0, 2.0],
            QuadOptions::default(),
        )
        .unwrap();
        assert!((r.value.re - 128.0 / 7.0).abs() < 1e-12);
        assert!((r.value.im - 2.0).abs() < 1e-12);
    }

    #[test]
    fn oscillatory() {
        let r = integrate(
            |t| e(40.0 * t),
            &uniform_points(0.0, 1.0, 8),
            QuadOptions::default(),
        )
        .unwrap();
        assert!(r.value.norm() < 1e-10);
        // Fresnel integrals: C(2) / 2 and S(2) / 2.
        let r = integrate(|t| e(t * t), &[0.0, 1.0], QuadOptions::default()).unwrap();
        assert!((r.value.re - 0.244_126_703_037_670_4).abs() < 1e-9);
        assert!((r.value.im - 0.171_707_839_181_849_1).abs() < 1e-9);
    }

    #[test]
    fn budget_exhaustion_reports() {
        let opts = QuadOptions {
            max_intervals: 4,
            ..QuadOptions::default()
        };
        let err = integrate(
            |t| Complex64::new(1.0 / t.abs().sqrt().max(1e-300), 0.0),
            &[-1.0, 1.0],
            opts,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Quadrature(_)));
    }
}
