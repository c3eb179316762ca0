use std::cmp::Ordering;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Major arc `{theta : |theta - a/q| <= 1/(8 q N)}` with `gcd(a, q) = 1`, `1 <= a <= q <= N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FareyArc {
    pub a: u64,
    pub q: u64,
    pub n: u64,
}

impl FareyArc {
    pub fn center(&self) -> f64 {
        self.a as f64 / self.q as f64
    }

    pub fn half_width(&self) -> f64 {
        1.0 / (8 * self.q * self.n) as f64
    }

    /// Exact endpoints `(8 a N -+ 1) / (8 q N)` as numerator/denominator pairs.
    pub fn endpoints(&self) -> (Frac, Frac) {
        let den = 8 * self.q as i128 * self.n as i128;
        let mid = 8 * self.a as i128 * self.n as i128;
        (Frac::new(mid - 1, den), Frac::new(mid + 1, den))
    }
}

/// Exact rational with positive denominator, compared by cross-multiplication.
#[derive(Debug, Clone, Copy)]
pub struct Frac {
    pub num: i128,
    pub den: i128,
}

impl Frac {
    pub fn new(num: i128, den: i128) -> Self {
        debug_assert!(den > 0);
        Frac { num, den }
    }

    pub fn shift(self, k: i128) -> Self {
        Frac::new(self.num + k * self.den, self.den)
    }
}

impl PartialEq for Frac {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Frac {}
impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Frac {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

/// The major arcs `M` for parameter `N`, sorted by center; the minor arcs are the complement.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArcSet {
    pub n: u64,
    pub arcs: Vec<FareyArc>,
}

/// Two arcs found intersecting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overlap {
    pub left: FareyArc,
    pub right: FareyArc,
}

/// Fractions `a/q` in `(0, 1]` with `q <= n`, ascending (the Farey sequence without 0/1).
pub fn farey_fractions(n: u64) -> impl Iterator<Item = (u64, u64)> {
    // Standard next-term recurrence starting from 0/1, 1/n.
    let mut state = (0u64, 1u64, 1u64, n.max(1));
    let mut done = n == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let (a, b, c, d) = state;
        let current = (c, d);
        if c == 1 && d == 1 {
            done = true;
        } else {
            let k = (n + b) / d;
            state = (c, d, k * c - a, k * d - b);
        }
        Some(current)
    })
}

/// All major arcs for `N`, one per reduced fraction `a/q` with `q <= N`.
pub fn farey_major_arcs(n: u64) -> Result<ArcSet> {
    if n == 0 {
        return domain("N must be at least 1");
    }
    let arcs = farey_fractions(n)
        .map(|(a, q)| FareyArc { a, q, n })
        .collect();
    Ok(ArcSet { n, arcs })
}

impl ArcSet {
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Total measure `sum 2 / (8 q N)`.
    pub fn measure(&self) -> f64 {
        self.arcs.iter().map(|arc| 2.0 * arc.half_width()).sum()
    }

    /// Sort-and-scan in exact rational arithmetic on the circle `R / Z`.
    ///
    /// Each arc lives on the representative interval around its center in
    /// `(0, 1]`; adjacent arcs and the wrap-around pair (last arc shifted by
    /// `-1` against the first) are compared by their closed endpoints.
    pub fn verify_disjoint(&self) -> std::result::Result<(), Overlap> {
        let sorted_input = self.arcs.windows(2).all(|w| {
            Frac::new(w[0].a as i128, w[0].q as i128) < Frac::new(w[1].a as i128, w[1].q as i128)
        });
        let owned;
        let arcs: &[FareyArc] = if sorted_input {
            &self.arcs
        } else {
            let mut v = self.arcs.clone();
            v.sort_by(|x, y| {
                Frac::new(x.a as i128, x.q as i128).cmp(&Frac::new(y.a as i128, y.q as i128))
            });
            owned = v;
            &owned
        };
        for w in arcs.windows(2) {
            if w[0].endpoints().1 >= w[1].endpoints().0 {
                return Err(Overlap {
                    left: w[0],
                    right: w[1],
                });
            }
        }
        if arcs.len() >= 2 {
            let (first, last) = (arcs[0], arcs[arcs.len() - 1]);
            if last.endpoints().1.shift(-1) >= first.endpoints().0 {
                return Err(Overlap {
                    left: last,
                    right: first,
                });
            }
        } else if let Some(only) = arcs.first() {
            // A lone arc overlaps itself only if it covers the whole circle.
            let (lo, hi) = only.endpoints();
            if hi.shift(-1) >= lo {
                return Err(Overlap {
                    left: *only,
                    right: *only,
                });
            }
        }
        Ok(())
    }

    /// Whether `theta` (any real, read mod 1) lies in a major arc.
    pub fn contains(&self, theta: f64) -> bool {
        let t = theta - theta.floor();
        let idx = self.arcs.partition_point(|arc| arc.center() < t);
        let near = |i: usize, shift: f64| {
            let arc = &self.arcs[i];
            (t - (arc.center() + shift)).abs() <= arc.half_width()
        };
        let n = self.arcs.len();
        if n == 0 {
            return false;
        }
        (idx < n && near(idx, 0.0))
            || (idx > 0 && near(idx - 1, 0.0))
            // the arc at 1/1 also covers a neighbourhood of 0
            || near(n - 1, -1.0)
            || near(0, 1.0)
    }

    /// CSV with columns `a,q,center,half_width`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["a", "q", "center", "half_width"])?;
        for arc in &self.arcs {
            w.write_record([
                arc.a.to_string(),
                arc.q.to_string(),
                arc.center().to_string(),
                arc.half_width().to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}
