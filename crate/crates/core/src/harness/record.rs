use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Fits whose residual exceeds this are flagged.
pub const FIT_RESIDUAL_THRESHOLD: f64 = 0.1;

/// Least-squares line `ln y = exponent ln x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Fit {
    pub exponent: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fitted values.
    pub residual: f64,
    pub points: usize,
    pub flagged: bool,
}

/// Ordinary least squares `y = a + b x`, returning `(b, a, rms residual)`.
pub fn linear_fit(points: &[(f64, f64)]) -> Result<(f64, f64, f64)> {
    if points.len() < 2 {
        return Err(Error::Empty(format!(
            "a line fit needs 2 points, got {}",
            points.len()
        )));
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Domain("all abscissae coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    Ok((slope, intercept, (rss / n).sqrt()))
}

/// Log-log fit of positive data after dropping the smallest abscissa.
pub fn fit_loglog(points: &[(f64, f64)]) -> Result<Fit> {
    let mut pts: Vec<(f64, f64)> = points.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    if !pts.is_empty() {
        pts.remove(0);
    }
    fit_loglog_all(&pts)
}

/// Log-log fit using every point.
pub fn fit_loglog_all(points: &[(f64, f64)]) -> Result<Fit> {
    if let Some(p) = points.iter().find(|p| !(p.0 > 0.0 && p.1 > 0.0)) {
        return Err(Error::Domain(format!(
            "log-log fit needs positive data, got {p:?}"
        )));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|p| (p.0.ln(), p.1.ln())).collect();
    let (exponent, intercept, residual) = linear_fit(&logs)?;
    Ok(Fit {
        exponent,
        intercept,
        residual,
        points: points.len(),
        flagged: residual > FIT_RESIDUAL_THRESHOLD,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub series: String,
    pub abscissa: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub version: String,
    pub seed: u64,
}

impl Provenance {
    pub fn new(seed: u64) -> Self {
        Provenance {
            version: crate::VERSION.to_string(),
            seed,
        }
    }
}

/// Parameters, measurements and fitted exponents of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub schema_version: u32,
    pub experiment: String,
    pub params: BTreeMap<String, Value>,
    pub measurements: Vec<Measurement>,
    /// Fitted exponents keyed by series name.
    pub fits: BTreeMap<String, Fit>,
    /// Derived scalars and labels (classifications, pass/fail of trend checks).
    pub summary: BTreeMap<String, Value>,
    pub provenance: Provenance,
}

impl ExperimentRecord {
    pub fn new(experiment: &str, seed: u64) -> Self {
        ExperimentRecord {
            schema_version: SCHEMA_VERSION,
            experiment: experiment.to_string(),
            params: BTreeMap::new(),
            measurements: Vec::new(),
            fits: BTreeMap::new(),
            summary: BTreeMap::new(),
            provenance: Provenance::new(seed),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.params.insert(
            key.to_string(),
            serde_json::to_value(value).expect("serializable"),
        );
        self
    }

    pub fn note(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.summary.insert(
            key.to_string(),
            serde_json::to_value(value).expect("serializable"),
        );
        self
    }

    pub fn push(&mut self, series: &str, abscissa: f64, value: f64) {
        self.measurements.push(Measurement {
            series: series.to_string(),
            abscissa,
            value,
        });
    }

    pub fn series(&self, name: &str) -> Vec<(f64, f64)> {
        self.measurements
            .iter()
            .filter(|m| m.series == name)
            .map(|m| (m.abscissa, m.value))
            .collect()
    }

    /// Fits `series` log-log (dropping the smallest abscissa) and stores the fit.
    pub fn fit(&mut self, series: &str) -> Result<Fit> {
        let fit = fit_loglog(&self.series(series))?;
        self.fits.insert(series.to_string(), fit);
        Ok(fit)
    }

    pub fn summary_f64(&self, key: &str) -> Option<f64> {
        self.summary.get(key).and_then(Value::as_f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let pts: Vec<(f64, f64)> = [2.0, 4.0, 8.0, 16.0]
            .iter()
            .map(|&x: &f64| (x, 5.0 * x.powf(1.5)))
            .collect();
        let fit = fit_loglog(&pts).unwrap();
        assert_eq!(fit.points, 3);
        assert!((fit.exponent - 1.5).abs() < 1e-12);
        assert!(fit.residual < 1e-12 && !fit.flagged);
    }

    #[test]
    fn noisy_fit_is_flagged() {
        let pts = [
            (1.0, 1.0),
            (2.0, 10.0),
            (4.0, 1.0),
            (8.0, 50.0),
            (16.0, 2.0),
        ];
        assert!(fit_loglog(&pts).unwrap().flagged);
        assert!(fit_loglog(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]).is_err());
    }
}
