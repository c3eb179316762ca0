//! Plateau bump functions used as smooth cutoffs.

/// `exp(-1/x)` for `x > 0`, else 0. Smooth at 0 with all derivatives vanishing.
fn flat(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (-1.0 / x).exp()
    }
}

/// Profile `phi(t)`: 1 on `|t| <= 1`, 0 on `|t| >= 2`, smooth in between.
pub fn plateau(t: f64) -> f64 {
    let s = t.abs() - 1.0;
    if s <= 0.0 {
        1.0
    } else if s >= 1.0 {
        0.0
    } else {
        let up = flat(1.0 - s);
        up / (up + flat(s))
    }
}

/// Tensor cutoff `Psi(x) = prod_i phi(x_i / scale)`: 1 on the cube of side
/// `2 scale`, supported in the cube of side `4 scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bump {
    pub scale: f64,
}

impl Bump {
    pub fn new(scale: f64) -> Self {
        assert!(scale > 0.0, "bump scale must be positive");
        Bump { scale }
    }

    pub fn eval_1d(&self, t: f64) -> f64 {
        plateau(t / self.scale)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        x.iter().map(|&t| self.eval_1d(t)).product()
    }

    /// Half-width of the open support in each coordinate.
    pub fn support_radius(&self) -> f64 {
        2.0 * self.scale
    }

    /// The enlarged companion `Psi'` (plateau `2 scale`, support `4 scale`), so `Psi' Psi = Psi`.
    pub fn companion(&self) -> Bump {
        Bump::new(2.0 * self.scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plateau_shape() {
        assert_eq!(plateau(0.0), 1.0);
        assert_eq!(plateau(1.0), 1.0);
        assert_eq!(plateau(-1.0), 1.0);
        assert_eq!(plateau(2.0), 0.0);
        assert_eq!(plateau(-7.0), 0.0);
        assert!((plateau(1.5) - 0.5).abs() < 1e-15);
        let mut prev = 1.0;
        for i in 0..=1000 {
            let v = plateau(1.0 + i as f64 / 1000.0);
            assert!((0.0..=1.0).contains(&v) && v <= prev);
            prev = v;
        }
    }

    #[test]
    fn companion_absorbs() {
        let psi = Bump::new(0.25);
        let wide = psi.companion();
        for i in -200..=200 {
            let x = [i as f64 / 200.0, 0.1];
            assert_eq!(wide.eval(&x) * psi.eval(&x), psi.eval(&x));
        }
    }
}
