use crate::error::{domain, Error, Result};
use crate::lattice::CountTables;
use crate::numeric::pairwise_sum;
use crate::operator::average::maximal_operator;
use crate::operator::function::LatticeFunction;

/// `||f||_p` for `p` in `[1, inf]`; pass `f64::INFINITY` for the sup norm.
///
/// Box indicators use the closed form `height L^{d/p}`. A nonzero constant has
/// infinite `l^p` norm for finite `p`, reported as an error.
pub fn lp_norm(f: &LatticeFunction, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return domain(format!("p must lie in [1, inf], got {p}"));
    }
    if p.is_infinite() {
        return Ok(f.sup_norm());
    }
    match f {
        LatticeFunction::Sparse { values, .. } => {
            let powers: Vec<f64> = values.values().map(|v| v.abs().powf(p)).collect();
            Ok(pairwise_sum(&powers).powf(1.0 / p))
        }
        LatticeFunction::Constant { value, .. } => {
            if *value == 0.0 {
                Ok(0.0)
            } else {
                Err(Error::DegenerateNorm(format!(
                    "the constant {value} has infinite l^{p} norm"
                )))
            }
        }
        LatticeFunction::BoxIndicator { dim, side, height } => {
            Ok(height.abs() * (*side as f64).powf(*dim as f64 / p))
        }
    }
}

/// `||T*(f_1, ..., f_l)||_r / prod_i ||f_i||_{p_i}` with `T*` truncated to `lambdas`.
pub fn norm_ratio(
    tables: &CountTables,
    fs: &[LatticeFunction],
    p_list: &[f64],
    r: f64,
    lambdas: &[u64],
) -> Result<f64> {
    if fs.len() != p_list.len() {
        return domain(format!(
            "{} functions but {} exponents",
            fs.len(),
            p_list.len()
        ));
    }
    let mut denominator = 1.0;
    for (f, &p) in fs.iter().zip(p_list) {
        denominator *= lp_norm(f, p)?;
    }
    if denominator == 0.0 || !denominator.is_finite() {
        return Err(Error::DegenerateNorm(format!(
            "input norm product is {denominator}"
        )));
    }
    let max = maximal_operator(tables, fs, lambdas)?;
    Ok(lp_norm(&max.values, r)? / denominator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticePoint;

    #[test]
    fn examples() {
        let delta = LatticeFunction::delta(3);
        for p in [1.0, 1.5, 2.0, 7.0, f64::INFINITY] {
            assert_eq!(lp_norm(&delta, p).unwrap(), 1.0);
        }
        let b = LatticeFunction::box_indicator(3, 4);
        assert!((lp_norm(&b, 2.0).unwrap() - 8.0).abs() < 1e-12);
        assert!((lp_norm(&b.materialize(), 2.0).unwrap() - 8.0).abs() < 1e-12);
        assert!(lp_norm(&delta, 0.5).is_err());
        assert!(lp_norm(&LatticeFunction::constant(3, 1.0), 2.0).is_err());
        assert_eq!(
            lp_norm(&LatticeFunction::constant(3, -2.0), f64::INFINITY).unwrap(),
            2.0
        );
    }

    #[test]
    fn zero_norm_is_refused() {
        let t = CountTables::new(6, 10).unwrap();
        let zero = LatticeFunction::sparse(3, Vec::<(LatticePoint, f64)>::new()).unwrap();
        let r = norm_ratio(
            &t,
            &[zero, LatticeFunction::delta(3)],
            &[1.0, 1.0],
            1.0,
            &[1],
        );
        assert!(matches!(r, Err(Error::DegenerateNorm(_))));
    }
}
