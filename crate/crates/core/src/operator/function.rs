use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::lattice::LatticePoint;

/// A function `Z^d -> R`: finitely supported, or one of two symbolic
/// infinite-support cases (a constant, and a scaled indicator of `[0, L)^d`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LatticeFunction {
    Sparse {
        dim: usize,
        #[serde(with = "pairs")]
        values: BTreeMap<LatticePoint, f64>,
    },
    Constant {
        dim: usize,
        value: f64,
    },
    BoxIndicator {
        dim: usize,
        side: u64,
        height: f64,
    },
}

impl LatticeFunction {
    /// Builds a sparse function, summing repeated points and dropping zeros.
    pub fn sparse<I: IntoIterator<Item = (LatticePoint, f64)>>(
        dim: usize,
        entries: I,
    ) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (x, v) in entries {
            if x.dim() != dim {
                return domain(format!("point {x} is not in Z^{dim}"));
            }
            if !v.is_finite() {
                return domain(format!("non-finite value {v} at {x}"));
            }
            *values.entry(x).or_insert(0.0) += v;
        }
        values.retain(|_, v| *v != 0.0);
        Ok(LatticeFunction::Sparse { dim, values })
    }

    pub fn delta(dim: usize) -> Self {
        let mut values = BTreeMap::new();
        values.insert(LatticePoint::origin(dim), 1.0);
        LatticeFunction::Sparse { dim, values }
    }

    pub fn constant(dim: usize, value: f64) -> Self {
        LatticeFunction::Constant { dim, value }
    }

    /// Indicator of `[0, side)^d`.
    pub fn box_indicator(dim: usize, side: u64) -> Self {
        LatticeFunction::BoxIndicator {
            dim,
            side,
            height: 1.0,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            LatticeFunction::Sparse { dim, .. }
            | LatticeFunction::Constant { dim, .. }
            | LatticeFunction::BoxIndicator { dim, .. } => *dim,
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, LatticeFunction::Constant { .. })
    }

    pub fn eval(&self, x: &[i64]) -> f64 {
        match self {
            LatticeFunction::Sparse { values, .. } => values
                .get(&LatticePoint(x.to_vec()))
                .copied()
                .unwrap_or(0.0),
            LatticeFunction::Constant { value, .. } => *value,
            LatticeFunction::BoxIndicator { side, height, .. } => {
                if x.iter().all(|&c| c >= 0 && (c as u64) < *side) {
                    *height
                } else {
                    0.0
                }
            }
        }
    }

    /// Support points with values; `None` for the symbolic constant.
    pub fn entries(&self) -> Option<Vec<(LatticePoint, f64)>> {
        match self {
            LatticeFunction::Sparse { values, .. } => {
                Some(values.iter().map(|(k, v)| (k.clone(), *v)).collect())
            }
            LatticeFunction::Constant { .. } => None,
            LatticeFunction::BoxIndicator { dim, side, height } => {
                if *height == 0.0 {
                    return Some(Vec::new());
                }
                let mut out = Vec::new();
                let mut x = vec![0i64; *dim];
                if *side == 0 {
                    return Some(out);
                }
                loop {
                    out.push((LatticePoint(x.clone()), *height));
                    let mut i = dim - 1;
                    loop {
                        x[i] += 1;
                        if (x[i] as u64) < *side {
                            break;
                        }
                        x[i] = 0;
                        if i == 0 {
                            return Some(out);
                        }
                        i -= 1;
                    }
                }
            }
        }
    }

    /// Number of support points; `None` when infinite.
    pub fn support_size(&self) -> Option<usize> {
        match self {
            LatticeFunction::Sparse { values, .. } => Some(values.len()),
            LatticeFunction::Constant { value, .. } => (*value == 0.0).then_some(0),
            LatticeFunction::BoxIndicator { dim, side, height } => Some(if *height == 0.0 {
                0
            } else {
                (*side as usize).pow(*dim as u32)
            }),
        }
    }

    /// Converts a box indicator to explicit sparse form; constants are kept.
    pub fn materialize(&self) -> LatticeFunction {
        match self {
            LatticeFunction::BoxIndicator { dim, .. } => LatticeFunction::Sparse {
                dim: *dim,
                values: self.entries().expect("finite").into_iter().collect(),
            },
            other => other.clone(),
        }
    }

    /// `x -> f(x - h)`.
    pub fn translate(&self, h: &[i64]) -> Result<LatticeFunction> {
        if h.len() != self.dim() {
            return domain("shift dimension mismatch");
        }
        match self.materialize() {
            LatticeFunction::Sparse { dim, values } => Ok(LatticeFunction::Sparse {
                dim,
                values: values.into_iter().map(|(x, v)| (x.add(h), v)).collect(),
            }),
            c => Ok(c),
        }
    }

    pub fn scale(&self, c: f64) -> LatticeFunction {
        match self {
            LatticeFunction::Sparse { dim, values } => LatticeFunction::Sparse {
                dim: *dim,
                values: values
                    .iter()
                    .map(|(x, v)| (x.clone(), v * c))
                    .filter(|(_, v)| *v != 0.0)
                    .collect(),
            },
            LatticeFunction::Constant { dim, value } => LatticeFunction::Constant {
                dim: *dim,
                value: value * c,
            },
            LatticeFunction::BoxIndicator { dim, side, height } => LatticeFunction::BoxIndicator {
                dim: *dim,
                side: *side,
                height: height * c,
            },
        }
    }

    pub fn abs(&self) -> LatticeFunction {
        match self {
            LatticeFunction::Sparse { dim, values } => LatticeFunction::Sparse {
                dim: *dim,
                values: values.iter().map(|(x, v)| (x.clone(), v.abs())).collect(),
            },
            LatticeFunction::Constant { dim, value } => LatticeFunction::Constant {
                dim: *dim,
                value: value.abs(),
            },
            LatticeFunction::BoxIndicator { dim, side, height } => LatticeFunction::BoxIndicator {
                dim: *dim,
                side: *side,
                height: height.abs(),
            },
        }
    }

    /// `sup |f|`.
    pub fn sup_norm(&self) -> f64 {
        match self {
            LatticeFunction::Sparse { values, .. } => {
                values.values().fold(0.0, |m, v| m.max(v.abs()))
            }
            LatticeFunction::Constant { value, .. } => value.abs(),
            LatticeFunction::BoxIndicator { side, height, .. } => {
                if *side == 0 {
                    0.0
                } else {
                    height.abs()
                }
            }
        }
    }

    /// CSV with columns `coord_1..coord_d,value`; box indicators are written out
    /// point by point, constants are refused.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let entries = self
            .entries()
            .ok_or_else(|| Error::Domain("a constant function has no finite CSV form".into()))?;
        let mut w = csv::Writer::from_writer(writer);
        let mut header: Vec<String> = (1..=self.dim()).map(|i| format!("coord_{i}")).collect();
        header.push("value".into());
        w.write_record(&header)?;
        for (x, v) in entries {
            let mut row: Vec<String> = x.coords().iter().map(|c| c.to_string()).collect();
            row.push(v.to_string());
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<LatticeFunction> {
        let mut r = csv::Reader::from_reader(reader);
        let headers = r.headers()?.clone();
        let dim = headers
            .len()
            .checked_sub(1)
            .filter(|&d| d > 0)
            .ok_or_else(|| Error::Parse("expected columns coord_1..coord_d,value".into()))?;
        let mut entries = Vec::new();
        for (line, record) in r.records().enumerate() {
            let record = record?;
            let parse_err =
                |e: &dyn std::fmt::Display| Error::Parse(format!("row {}: {e}", line + 1));
            let coords = (0..dim)
                .map(|i| record[i].trim().parse::<i64>().map_err(|e| parse_err(&e)))
                .collect::<Result<Vec<_>>>()?;
            let value = record[dim]
                .trim()
                .parse::<f64>()
                .map_err(|e| parse_err(&e))?;
            entries.push((LatticePoint(coords), value));
        }
        LatticeFunction::sparse(dim, entries)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<LatticeFunction> {
        Ok(serde_json::from_str(text)?)
    }
}

// JSON object keys must be strings, so the support is stored as `[[coords], value]` pairs.
mod pairs {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::lattice::LatticePoint;

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<LatticePoint, f64>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let v: Vec<(&[i64], f64)> = map.iter().map(|(k, v)| (k.coords(), *v)).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<LatticePoint, f64>, D::Error> {
        let v: Vec<(Vec<i64>, f64)> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|(k, v)| (LatticePoint(k), v)).collect())
    }
}
