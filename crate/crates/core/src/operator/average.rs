use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::lattice::{shells, sphere_points, CountTables, LatticePoint};
use crate::numeric::isqrt;
use crate::operator::function::LatticeFunction;

/// Enumeration limit of the direct oracle, in tuples `(u_1, ..., u_l)`.
pub const DIRECT_GUARD: u64 = 10_000_000;

/// `x -> T_lambda(f_1, ..., f_l)(x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AverageResult {
    pub values: LatticeFunction,
    pub lambda: u64,
    pub arity: usize,
}

/// Pointwise `max_lambda |T_lambda|` over the effective range, with the
/// maximizing `lambda` per point and the `lambda` skipped for `N_l(lambda) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaximalResult {
    pub values: LatticeFunction,
    pub argmax: BTreeMap<LatticePoint, u64>,
    pub lambdas: Vec<u64>,
    pub skipped: Vec<u64>,
}

/// `(f * omega_k)(x) = sum_{|u|^2 = k} f(x - u)`.
pub fn shell_convolve(
    tables: &CountTables,
    f: &LatticeFunction,
    k: u64,
) -> Result<LatticeFunction> {
    let d = f.dim();
    let count = tables.r(d, k)?;
    if let LatticeFunction::Constant { value, .. } = f {
        return Ok(LatticeFunction::constant(d, value * count as f64));
    }
    let shell = sphere_points(d, k as i64)?;
    let mut out: BTreeMap<LatticePoint, f64> = BTreeMap::new();
    for (y, v) in f.entries().expect("finite support") {
        for u in &shell {
            *out.entry(y.add(u.coords())).or_insert(0.0) += v;
        }
    }
    out.retain(|_, v| *v != 0.0);
    Ok(LatticeFunction::Sparse {
        dim: d,
        values: out,
    })
}

enum Slot {
    Sparse(Vec<(Vec<i64>, f64)>),
    Box { side: i64, height: f64 },
}

/// Inputs split into finite slots and the product of the constant slots.
struct Prepared {
    d: usize,
    slots: Vec<Slot>,
    constant: f64,
    constant_slots: usize,
}

fn prepare(fs: &[LatticeFunction]) -> Result<Prepared> {
    let d = match fs.first() {
        Some(f) => f.dim(),
        None => return domain("need at least one function"),
    };
    if d == 0 || fs.iter().any(|f| f.dim() != d) {
        return domain("all functions must live on the same Z^d, d >= 1");
    }
    let mut slots = Vec::new();
    let mut constant = 1.0;
    let mut constant_slots = 0;
    for f in fs {
        match f {
            LatticeFunction::Constant { value, .. } => {
                constant *= value;
                constant_slots += 1;
            }
            LatticeFunction::BoxIndicator { side, height, .. } => slots.push(Slot::Box {
                side: *side as i64,
                height: *height,
            }),
            LatticeFunction::Sparse { values, .. } => slots.push(Slot::Sparse(
                values
                    .iter()
                    .map(|(x, v)| (x.coords().to_vec(), *v))
                    .collect(),
            )),
        }
    }
    Ok(Prepared {
        d,
        slots,
        constant,
        constant_slots,
    })
}

impl Prepared {
    fn arity(&self) -> usize {
        self.slots.len() + self.constant_slots
    }

    /// Points where every finite slot can reach: support of the smallest slot
    /// plus the ball of radius `sqrt(lambda_max)`.
    fn candidates(&self, lambda_max: u64) -> Result<Vec<Vec<i64>>> {
        let smallest = self
            .slots
            .iter()
            .min_by_key(|s| match s {
                Slot::Sparse(v) => v.len(),
                Slot::Box { side, .. } => (*side as usize).saturating_pow(self.d as u32),
            })
            .expect("at least one finite slot");
        let support: Vec<Vec<i64>> = match smallest {
            Slot::Sparse(v) => v.iter().map(|p| p.0.clone()).collect(),
            Slot::Box { side, .. } => LatticeFunction::box_indicator(self.d, *side as u64)
                .entries()
                .expect("finite")
                .into_iter()
                .map(|p| p.0 .0)
                .collect(),
        };
        let ball: Vec<LatticePoint> = shells(self.d, lambda_max)?.into_iter().flatten().collect();
        let mut set = BTreeSet::new();
        for y in &support {
            for u in &ball {
                set.insert(
                    y.iter()
                        .zip(u.coords())
                        .map(|(a, b)| a + b)
                        .collect::<Vec<i64>>(),
                );
            }
        }
        Ok(set.into_iter().collect())
    }

    /// `R(lambda) = sum over compositions of prod_i (f_i * omega_{k_i})(x)` for
    /// every `lambda <= lambda_max`, written into `out`.
    fn profile_sums(
        &self,
        x: &[i64],
        lambda_max: usize,
        tables: &CountTables,
        work: &mut Work,
        out: &mut [f64],
    ) -> Result<()> {
        let len = lambda_max + 1;
        work.acc.clear();
        work.acc.resize(len, 0.0);
        work.acc[0] = 1.0;
        for slot in &self.slots {
            work.profile.clear();
            work.profile.resize(len, 0.0);
            match slot {
                Slot::Sparse(entries) => {
                    for (y, v) in entries {
                        let k: i64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
                        if (k as usize) < len {
                            work.profile[k as usize] += v;
                        }
                    }
                }
                Slot::Box { side, height } => box_profile(x, *side, *height, len, work),
            }
            convolve_into(&work.acc, &work.profile, &mut work.next);
            std::mem::swap(&mut work.acc, &mut work.next);
        }
        if self.constant_slots == 0 {
            out.copy_from_slice(&work.acc);
        } else {
            let t = tables.table(self.constant_slots * self.d)?;
            let counts = &t.counts()[..len.min(t.counts().len())];
            if counts.len() < len {
                return Err(Error::Range {
                    what: "lambda",
                    value: lambda_max as u64,
                    limit: t.lambda_max(),
                });
            }
            for (lambda, o) in out.iter_mut().enumerate() {
                let mut s = 0.0;
                for (k, &a) in work.acc[..=lambda].iter().enumerate() {
                    if a != 0.0 {
                        s += a * counts[lambda - k] as f64;
                    }
                }
                *o = self.constant * s;
            }
        }
        Ok(())
    }
}

#[derive(Default)]
struct Work {
    acc: Vec<f64>,
    next: Vec<f64>,
    profile: Vec<f64>,
    hist: Vec<f64>,
}

/// `out = (a * b)` truncated to `a.len()`, skipping zeros of `b`.
fn convolve_into(a: &[f64], b: &[f64], out: &mut Vec<f64>) {
    let len = a.len();
    out.clear();
    out.resize(len, 0.0);
    for (j, &bj) in b.iter().enumerate() {
        if bj == 0.0 {
            continue;
        }
        for (i, &ai) in a[..len - j].iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
}

/// `height * #{y in [0, side)^d : |x - y|^2 = k}` for `k < len`, from separable
/// one-dimensional histograms.
fn box_profile(x: &[i64], side: i64, height: f64, len: usize, work: &mut Work) {
    work.profile[0] = height;
    for &xi in x {
        work.hist.clear();
        work.hist.resize(len, 0.0);
        for y in 0..side {
            let m = ((xi - y) * (xi - y)) as usize;
            if m < len {
                work.hist[m] += 1.0;
            }
        }
        let acc = std::mem::take(&mut work.profile);
        let mut next = Vec::new();
        convolve_into(&acc, &work.hist, &mut next);
        work.profile = next;
    }
}

fn check_tables(tables: &CountTables, prep: &Prepared, lambda_max: u64) -> Result<()> {
    tables.count_n(prep.d, lambda_max, prep.arity())?;
    Ok(())
}

fn evaluate_all(
    tables: &CountTables,
    prep: &Prepared,
    points: &[Vec<i64>],
    lambda_max: u64,
) -> Result<Vec<Vec<f64>>> {
    let len = lambda_max as usize + 1;
    points
        .par_chunks(256)
        .map(|chunk| {
            let mut work = Work::default();
            chunk
                .iter()
                .map(|x| {
                    let mut out = vec![0.0; len];
                    prep.profile_sums(x, lambda_max as usize, tables, &mut work, &mut out)?;
                    Ok(out)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().flatten().collect())
}

/// `T_lambda(f_1, ..., f_l)(x) = N_l(lambda)^{-1} sum_{|u_1|^2 + ... + |u_l|^2 = lambda} prod f_i(x - u_i)`,
/// via shell profiles: for each `x`, the per-slot radial profiles
/// `k -> (f_i * omega_k)(x)` are convolved, and constant slots enter as `r_{c d}`.
pub fn multilinear_average(
    tables: &CountTables,
    fs: &[LatticeFunction],
    lambda: u64,
) -> Result<AverageResult> {
    let prep = prepare(fs)?;
    let arity = prep.arity();
    check_tables(tables, &prep, lambda)?;
    let n = tables.count_n(prep.d, lambda, arity)?;
    if n == 0 {
        return Err(Error::EmptySphere {
            dim: prep.d,
            arity,
            lambda,
        });
    }
    if prep.slots.is_empty() {
        let mut out = vec![0.0; lambda as usize + 1];
        all_constant_sum(tables, &prep, &mut out)?;
        return Ok(AverageResult {
            values: LatticeFunction::constant(prep.d, out[lambda as usize] / n as f64),
            lambda,
            arity,
        });
    }
    let points = prep.candidates(lambda)?;
    let sums = evaluate_all(tables, &prep, &points, lambda)?;
    let values = points
        .into_iter()
        .zip(sums)
        .map(|(x, s)| (LatticePoint(x), s[lambda as usize] / n as f64))
        .filter(|(_, v)| *v != 0.0)
        .collect();
    Ok(AverageResult {
        values: LatticeFunction::Sparse {
            dim: prep.d,
            values,
        },
        lambda,
        arity,
    })
}

/// All slots constant: `C sum_k r_d(k) r_{(l-1) d}(lambda - k)`, kept as a real
/// convolution so the mass identity checks the tables.
fn all_constant_sum(tables: &CountTables, prep: &Prepared, out: &mut [f64]) -> Result<()> {
    let d = prep.d;
    let l = prep.constant_slots;
    let first = tables.table(d)?.counts();
    for (lambda, o) in out.iter_mut().enumerate() {
        *o = if l == 1 {
            prep.constant * tables.r(d, lambda as u64)? as f64
        } else {
            let rest = tables.table((l - 1) * d)?.counts();
            let mut s = 0.0;
            for k in 0..=lambda {
                s += first[k] as f64 * rest[lambda - k] as f64;
            }
            prep.constant * s
        };
    }
    Ok(())
}

/// The oracle: enumerate every `(u_1, ..., u_l)` with `sum |u_i|^2 = lambda`
/// and scatter `prod_i f_i(x - u_i)` from the support of the first finite slot.
pub fn multilinear_average_direct(
    tables: &CountTables,
    fs: &[LatticeFunction],
    lambda: u64,
) -> Result<AverageResult> {
    let prep = prepare(fs)?;
    let arity = prep.arity();
    let d = prep.d;
    let n = tables.count_n(d, lambda, arity)?;
    if n == 0 {
        return Err(Error::EmptySphere {
            dim: d,
            arity,
            lambda,
        });
    }
    if n > DIRECT_GUARD {
        return Err(Error::Guard {
            what: "tuples on the l-fold sphere",
            needed: n,
            limit: DIRECT_GUARD,
        });
    }
    let shell_list: Vec<Vec<LatticePoint>> = (0..=lambda)
        .map(|k| sphere_points(d, k as i64))
        .collect::<Result<_>>()?;

    // Slot order as given; `anchor` is the first finite slot.
    let anchor = fs.iter().position(|f| !f.is_constant());
    let lookups: Vec<Lookup> = fs.iter().map(Lookup::new).collect();
    let radius = isqrt(lambda) as i64;

    let mut tuples = 0u64;
    let mut out = match anchor {
        Some(j) => {
            let entries = fs[j].entries().expect("finite");
            let (lo, hi) = bounding_box(d, entries.iter().map(|e| e.0.coords()));
            let lo: Vec<i64> = lo.iter().map(|c| c - radius).collect();
            let hi: Vec<i64> = hi.iter().map(|c| c + radius).collect();
            Some((j, entries, DenseGrid::new(lo, hi)))
        }
        None => None,
    };
    let mut stack: Vec<&LatticePoint> = Vec::with_capacity(arity);
    let mut x = vec![0i64; d];
    let mut shifted = vec![0i64; d];
    enumerate_tuples(
        &shell_list,
        arity,
        lambda as usize,
        &mut stack,
        &mut |us: &[&LatticePoint]| {
            tuples += 1;
            if let Some((j, entries, grid)) = out.as_mut() {
                for (y, v) in entries.iter() {
                    for c in 0..d {
                        x[c] = y.coords()[c] + us[*j].coords()[c];
                    }
                    let mut value = *v;
                    for (i, lookup) in lookups.iter().enumerate() {
                        if i == *j {
                            continue;
                        }
                        for c in 0..d {
                            shifted[c] = x[c] - us[i].coords()[c];
                        }
                        value *= lookup.get(&shifted);
                        if value == 0.0 {
                            break;
                        }
                    }
                    if value != 0.0 {
                        *grid.at_mut(&x) += value;
                    }
                }
            }
        },
    );
    debug_assert_eq!(tuples, n);
    let values = match out {
        None => LatticeFunction::constant(d, prep.constant * tuples as f64 / n as f64),
        Some((_, _, grid)) => LatticeFunction::Sparse {
            dim: d,
            values: grid
                .into_entries()
                .map(|(x, v)| (LatticePoint(x), v / n as f64))
                .filter(|(_, v)| *v != 0.0)
                .collect(),
        },
    };
    Ok(AverageResult {
        values,
        lambda,
        arity,
    })
}

fn enumerate_tuples<'a, F: FnMut(&[&'a LatticePoint])>(
    shell_list: &'a [Vec<LatticePoint>],
    slots_left: usize,
    budget: usize,
    stack: &mut Vec<&'a LatticePoint>,
    visit: &mut F,
) {
    if slots_left == 1 {
        for u in &shell_list[budget] {
            stack.push(u);
            visit(stack);
            stack.pop();
        }
        return;
    }
    for k in 0..=budget {
        for u in &shell_list[k] {
            stack.push(u);
            enumerate_tuples(shell_list, slots_left - 1, budget - k, stack, visit);
            stack.pop();
        }
    }
}

fn bounding_box<'a, I: Iterator<Item = &'a [i64]>>(d: usize, pts: I) -> (Vec<i64>, Vec<i64>) {
    let mut lo = vec![i64::MAX; d];
    let mut hi = vec![i64::MIN; d];
    let mut any = false;
    for p in pts {
        any = true;
        for c in 0..d {
            lo[c] = lo[c].min(p[c]);
            hi[c] = hi[c].max(p[c]);
        }
    }
    if !any {
        return (vec![0; d], vec![-1; d]);
    }
    (lo, hi)
}

/// Dense array over an axis-aligned box of `Z^d`.
struct DenseGrid {
    lo: Vec<i64>,
    ext: Vec<usize>,
    data: Vec<f64>,
}

impl DenseGrid {
    fn new(lo: Vec<i64>, hi: Vec<i64>) -> Self {
        let ext: Vec<usize> = lo
            .iter()
            .zip(&hi)
            .map(|(l, h)| (h - l + 1).max(0) as usize)
            .collect();
        let size = ext.iter().product();
        DenseGrid {
            lo,
            ext,
            data: vec![0.0; size],
        }
    }

    fn index(&self, x: &[i64]) -> Option<usize> {
        let mut idx = 0usize;
        for c in 0..x.len() {
            let off = x[c] - self.lo[c];
            if off < 0 || off as usize >= self.ext[c] {
                return None;
            }
            idx = idx * self.ext[c] + off as usize;
        }
        Some(idx)
    }

    fn at_mut(&mut self, x: &[i64]) -> &mut f64 {
        let i = self.index(x).expect("point inside grid");
        &mut self.data[i]
    }

    fn into_entries(self) -> impl Iterator<Item = (Vec<i64>, f64)> {
        let DenseGrid { lo, ext, data } = self;
        data.into_iter()
            .enumerate()
            .filter(|(_, v)| *v != 0.0)
            .map(move |(mut i, v)| {
                let mut x = vec![0i64; lo.len()];
                for c in (0..lo.len()).rev() {
                    x[c] = lo[c] + (i % ext[c]) as i64;
                    i /= ext[c];
                }
                (x, v)
            })
    }
}

enum Lookup {
    Dense(DenseGrid),
    Constant(f64),
    Box { side: i64, height: f64 },
}

impl Lookup {
    fn new(f: &LatticeFunction) -> Self {
        match f {
            LatticeFunction::Constant { value, .. } => Lookup::Constant(*value),
            LatticeFunction::BoxIndicator { side, height, .. } => Lookup::Box {
                side: *side as i64,
                height: *height,
            },
            LatticeFunction::Sparse { dim, values } => {
                let (lo, hi) = bounding_box(*dim, values.keys().map(|k| k.coords()));
                let mut grid = DenseGrid::new(lo, hi);
                for (k, v) in values {
                    *grid.at_mut(k.coords()) = *v;
                }
                Lookup::Dense(grid)
            }
        }
    }

    fn get(&self, x: &[i64]) -> f64 {
        match self {
            Lookup::Constant(v) => *v,
            Lookup::Box { side, height } => {
                if x.iter().all(|&c| c >= 0 && c < *side) {
                    *height
                } else {
                    0.0
                }
            }
            Lookup::Dense(grid) => grid.index(x).map_or(0.0, |i| grid.data[i]),
        }
    }
}

/// `T*(f_1, ..., f_l)(x) = max_{lambda in range} |T_lambda(...)(x)|`.
///
/// One shell-profile pass per point serves every `lambda` in the range.
pub fn maximal_operator(
    tables: &CountTables,
    fs: &[LatticeFunction],
    lambdas: &[u64],
) -> Result<MaximalResult> {
    let prep = prepare(fs)?;
    let arity = prep.arity();
    let mut range: Vec<u64> = lambdas.to_vec();
    range.sort_unstable();
    range.dedup();
    let Some(&lambda_max) = range.last() else {
        return Err(Error::Empty("lambda range is empty".into()));
    };
    check_tables(tables, &prep, lambda_max)?;
    let mut effective = Vec::new();
    let mut skipped = Vec::new();
    for &lambda in &range {
        let n = tables.count_n(prep.d, lambda, arity)?;
        if n == 0 {
            skipped.push(lambda);
        } else {
            effective.push((lambda, n as f64));
        }
    }
    if effective.is_empty() {
        return Err(Error::Empty(format!(
            "every lambda in the range has N_{arity}(lambda) = 0: {skipped:?}"
        )));
    }
    let lambdas: Vec<u64> = effective.iter().map(|e| e.0).collect();
    if prep.slots.is_empty() {
        let mut out = vec![0.0; lambda_max as usize + 1];
        all_constant_sum(tables, &prep, &mut out)?;
        let best = effective
            .iter()
            .map(|&(l, n)| (out[l as usize] / n).abs())
            .fold(0.0, f64::max);
        return Ok(MaximalResult {
            values: LatticeFunction::constant(prep.d, best),
            argmax: BTreeMap::new(),
            lambdas,
            skipped,
        });
    }
    let points = prep.candidates(lambda_max)?;
    let sums = evaluate_all(tables, &prep, &points, lambda_max)?;
    let mut values = BTreeMap::new();
    let mut argmax = BTreeMap::new();
    for (x, s) in points.into_iter().zip(sums) {
        let mut best = (0.0f64, None);
        for &(lambda, n) in &effective {
            let v = (s[lambda as usize] / n).abs();
            if v > best.0 {
                best = (v, Some(lambda));
            }
        }
        if let (v, Some(lambda)) = best {
            let key = LatticePoint(x);
            argmax.insert(key.clone(), lambda);
            values.insert(key, v);
        }
    }
    Ok(MaximalResult {
        values: LatticeFunction::Sparse {
            dim: prep.d,
            values,
        },
        argmax,
        lambdas,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tables() -> CountTables {
        CountTables::new(9, 60).unwrap()
    }

    #[test]
    fn shell_convolve_examples() {
        let t = tables();
        let delta = LatticeFunction::delta(3);
        assert_eq!(shell_convolve(&t, &delta, 0).unwrap(), delta);
        let unit = shell_convolve(&t, &delta, 1).unwrap();
        let pts = unit.entries().unwrap();
        assert_eq!(pts.len(), 6);
        assert!(pts.iter().all(|(p, v)| p.norm_sq() == 1 && *v == 1.0));
        assert_eq!(
            shell_convolve(&t, &LatticeFunction::constant(3, 1.0), 5).unwrap(),
            LatticeFunction::constant(3, 24.0)
        );
    }

    #[test]
    fn average_examples() {
        let t = tables();
        let delta = LatticeFunction::delta(3);
        let one = LatticeFunction::constant(3, 1.0);
        let avg = multilinear_average(&t, &[delta.clone(), one.clone()], 1).unwrap();
        assert_eq!(avg.values.eval(&[0, 0, 0]), 0.5);
        let both = multilinear_average(&t, &[delta.clone(), delta.clone()], 0).unwrap();
        assert_eq!(both.values.eval(&[0, 0, 0]), 1.0);
        let zero = multilinear_average(&t, &[delta.clone(), delta.clone()], 1).unwrap();
        assert_eq!(zero.values.support_size(), Some(0));
        let direct = multilinear_average_direct(&t, &[delta.clone(), delta], 1).unwrap();
        assert_eq!(direct.values.support_size(), Some(0));
    }

    #[test]
    fn delta_against_constant_closed_form() {
        let t = tables();
        let fs = [LatticeFunction::delta(3), LatticeFunction::constant(3, 1.0)];
        for lambda in [1u64, 2, 5, 14, 30] {
            let fast = multilinear_average(&t, &fs, lambda).unwrap();
            let direct = multilinear_average_direct(&t, &fs, lambda).unwrap();
            let n = t.count_n(3, lambda, 2).unwrap() as f64;
            for (x, v) in fast.values.entries().unwrap() {
                let expect = t.r(3, lambda - x.norm_sq()).unwrap() as f64 / n;
                assert!((v - expect).abs() < 1e-15);
                assert!((direct.values.eval(x.coords()) - expect).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn empty_sphere_and_guard() {
        let t = CountTables::new(9, 60).unwrap();
        let f = [LatticeFunction::delta(1), LatticeFunction::delta(1)];
        assert!(matches!(
            multilinear_average(&t, &f, 3),
            Err(Error::EmptySphere { .. })
        ));
        let g = [
            LatticeFunction::delta(3),
            LatticeFunction::delta(3),
            LatticeFunction::delta(3),
        ];
        assert!(matches!(
            multilinear_average_direct(&t, &g, 60),
            Err(Error::Guard { .. })
        ));
    }

    #[test]
    fn maximal_records_skips_and_argmax() {
        let t = tables();
        let f = [LatticeFunction::delta(1), LatticeFunction::constant(1, 1.0)];
        let m = maximal_operator(&t, &f, &[3, 1, 4]).unwrap();
        assert_eq!(m.skipped, vec![3]);
        assert_eq!(m.lambdas, vec![1, 4]);
        // x = 0: T_1 = r_1(1)/r_2(1) = 1/2, T_4 = r_1(4)/r_2(4) = 1/2; first max wins.
        assert_eq!(m.values.eval(&[0]), 0.5);
        assert_eq!(m.argmax[&LatticePoint(vec![0])], 1);
        assert!(maximal_operator(&t, &f, &[3]).is_err());
        assert!(maximal_operator(&t, &f, &[]).is_err());
    }

    #[test]
    fn box_profile_matches_materialized() {
        let t = tables();
        let b = LatticeFunction::box_indicator(2, 3);
        let s = b.materialize();
        let g = LatticeFunction::sparse(
            2,
            vec![
                (LatticePoint(vec![1, -1]), 2.0),
                (LatticePoint(vec![0, 2]), -1.0),
            ],
        )
        .unwrap();
        for lambda in [2u64, 5, 13] {
            let x = multilinear_average(&t, &[b.clone(), g.clone()], lambda).unwrap();
            let y = multilinear_average(&t, &[s.clone(), g.clone()], lambda).unwrap();
            assert_eq!(x, y);
        }
    }
}
