use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numeric::isqrt;

/// Exact counts `r_k(lambda) = #{u in Z^k : |u|^2 = lambda}` for `lambda <= lambda_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationTable {
    dim: usize,
    counts: Vec<u64>,
}

impl RepresentationTable {
    /// `r_1`: 1 at zero, 2 at each positive square.
    pub fn one_dimensional(lambda_max: u64) -> Self {
        let mut counts = vec![0u64; lambda_max as usize + 1];
        counts[0] = 1;
        for t in 1..=isqrt(lambda_max) {
            counts[(t * t) as usize] = 2;
        }
        RepresentationTable { dim: 1, counts }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lambda_max(&self) -> u64 {
        self.counts.len() as u64 - 1
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn get(&self, lambda: u64) -> Result<u64> {
        self.counts
            .get(lambda as usize)
            .copied()
            .ok_or(Error::Range {
                what: "lambda",
                value: lambda,
                limit: self.lambda_max(),
            })
    }

    /// One convolution step against `r_1`: `r_{k+1} = r_k * r_1`.
    fn extend_by_one(&self) -> Result<Self> {
        let lambda_max = self.lambda_max();
        let dim = self.dim + 1;
        let squares: Vec<usize> = (1..=isqrt(lambda_max)).map(|t| (t * t) as usize).collect();
        let mut counts = self.counts.clone();
        for lambda in 0..counts.len() {
            let mut acc = self.counts[lambda];
            for &sq in squares.iter().take_while(|&&sq| sq <= lambda) {
                let term = self.counts[lambda - sq]
                    .checked_mul(2)
                    .ok_or(Error::Overflow {
                        dim,
                        lambda: lambda as u64,
                    })?;
                acc = acc.checked_add(term).ok_or(Error::Overflow {
                    dim,
                    lambda: lambda as u64,
                })?;
            }
            counts[lambda] = acc;
        }
        Ok(RepresentationTable { dim, counts })
    }

    /// CSV dump with columns `lambda,count`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["lambda", "count"])?;
        for (lambda, count) in self.counts.iter().enumerate() {
            w.write_record([lambda.to_string(), count.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a dump produced by [`write_csv`](Self::write_csv). Rows must run 0, 1, 2, ...
    pub fn read_csv<R: Read>(reader: R, dim: usize) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(reader);
        let mut counts = Vec::new();
        for (i, row) in rdr.records().enumerate() {
            let row = row?;
            if row.len() != 2 {
                return Err(Error::Parse(format!("row {i}: expected 2 columns")));
            }
            let lambda: usize = row[0]
                .parse()
                .map_err(|e| Error::Parse(format!("row {i}: lambda: {e}")))?;
            if lambda != i {
                return Err(Error::Parse(format!(
                    "row {i}: lambda {lambda} out of sequence"
                )));
            }
            counts.push(
                row[1]
                    .parse()
                    .map_err(|e| Error::Parse(format!("row {i}: count: {e}")))?,
            );
        }
        if counts.is_empty() {
            return Err(Error::Parse("empty representation table".into()));
        }
        if dim == 0 {
            return domain("dimension must be positive");
        }
        Ok(RepresentationTable { dim, counts })
    }
}

/// Builds `r_k` on `0..=lambda_max` by convolving `r_1` against itself `k - 1` times.
pub fn build_representation_table(k: usize, lambda_max: u64) -> Result<RepresentationTable> {
    if k == 0 {
        return domain("dimension k must be at least 1");
    }
    let mut table = RepresentationTable::one_dimensional(lambda_max);
    for _ in 1..k {
        table = table.extend_by_one()?;
    }
    Ok(table)
}

/// Immutable stack of tables `r_1, ..., r_{max_dim}` on a common range.
///
/// Every operator consults this instead of building its own counts, so the
/// range limit `lambda_max` is fixed once per experiment.
#[derive(Debug, Clone)]
pub struct CountTables {
    tables: Vec<RepresentationTable>,
}

impl CountTables {
    pub fn new(max_dim: usize, lambda_max: u64) -> Result<Self> {
        if max_dim == 0 {
            return domain("max_dim must be at least 1");
        }
        let mut tables = Vec::with_capacity(max_dim);
        tables.push(RepresentationTable::one_dimensional(lambda_max));
        for _ in 1..max_dim {
            let next = tables.last().expect("nonempty").extend_by_one()?;
            tables.push(next);
        }
        Ok(CountTables { tables })
    }

    /// Reassembles a stack, e.g. one loaded from a cache. The tables must be
    /// `r_1, ..., r_k` in order on a common range.
    pub fn from_tables(tables: Vec<RepresentationTable>) -> Result<Self> {
        let Some(first) = tables.first() else {
            return domain("need at least one table");
        };
        let lambda_max = first.lambda_max();
        if *first != RepresentationTable::one_dimensional(lambda_max) {
            return Err(Error::Parse("first table is not r_1".into()));
        }
        for (i, t) in tables.iter().enumerate() {
            if t.dim != i + 1 || t.lambda_max() != lambda_max {
                return Err(Error::Parse(format!(
                    "table {i} has dim {} and range {}, expected {} and {lambda_max}",
                    t.dim,
                    t.lambda_max(),
                    i + 1
                )));
            }
        }
        Ok(CountTables { tables })
    }

    pub fn tables(&self) -> &[RepresentationTable] {
        &self.tables
    }

    pub fn max_dim(&self) -> usize {
        self.tables.len()
    }

    pub fn lambda_max(&self) -> u64 {
        self.tables[0].lambda_max()
    }

    pub fn table(&self, k: usize) -> Result<&RepresentationTable> {
        if k == 0 {
            return domain("dimension must be at least 1");
        }
        self.tables.get(k - 1).ok_or(Error::Range {
            what: "dimension",
            value: k as u64,
            limit: self.max_dim() as u64,
        })
    }

    /// `r_k(lambda)`.
    pub fn r(&self, k: usize, lambda: u64) -> Result<u64> {
        self.table(k)?.get(lambda)
    }

    /// `N_l(lambda) = r_{l d}(lambda)`, the number of lattice points on the sphere
    /// `|u_1|^2 + ... + |u_l|^2 = lambda` with each `u_i in Z^d`.
    pub fn count_n(&self, d: usize, lambda: u64, arity: usize) -> Result<u64> {
        if d == 0 || arity == 0 {
            return domain("dimension and arity must be positive");
        }
        self.r(d * arity, lambda)
    }

    /// `(lambda, N_l(lambda) / lambda^{l d / 2 - 1})` for each `lambda` in `range`.
    pub fn regularity_ratio(
        &self,
        d: usize,
        range: std::ops::RangeInclusive<u64>,
        arity: usize,
    ) -> Result<Vec<(u64, f64)>> {
        let exponent = (arity * d) as f64 / 2.0 - 1.0;
        if exponent <= 0.0 {
            return domain(format!("l d / 2 - 1 must be positive, got {exponent}"));
        }
        if *range.start() == 0 {
            return domain("regularity ratio needs lambda >= 1");
        }
        range
            .map(|lambda| {
                let n = self.count_n(d, lambda, arity)?;
                Ok((lambda, n as f64 / (lambda as f64).powf(exponent)))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r1_shape() {
        let t = build_representation_table(1, 30).unwrap();
        for (m, &c) in t.counts().iter().enumerate() {
            let s = isqrt(m as u64);
            let expected = if m == 0 {
                1
            } else if s * s == m as u64 {
                2
            } else {
                0
            };
            assert_eq!(c, expected, "m = {m}");
        }
        assert_eq!(t.get(4).unwrap(), 2);
    }

    #[test]
    fn small_examples() {
        assert_eq!(
            build_representation_table(3, 10).unwrap().get(2).unwrap(),
            12
        );
        assert_eq!(
            build_representation_table(6, 10).unwrap().get(1).unwrap(),
            12
        );
        let tables = CountTables::new(6, 10).unwrap();
        assert_eq!(tables.count_n(3, 1, 2).unwrap(), 12);
        assert_eq!(tables.count_n(3, 0, 2).unwrap(), 1);
        assert_eq!(tables.count_n(2, 5, 1).unwrap(), 8);
    }

    #[test]
    fn regularity_examples() {
        let tables = CountTables::new(6, 10).unwrap();
        let r = tables.regularity_ratio(3, 1..=4, 2).unwrap();
        assert_eq!(r[0], (1, 12.0));
        assert_eq!(r[3].1, tables.r(6, 4).unwrap() as f64 / 16.0);
        let r = tables.regularity_ratio(2, 1..=1, 2).unwrap();
        assert_eq!(r[0].1, 8.0);
        assert!(tables.regularity_ratio(1, 1..=3, 2).is_err());
    }

    #[test]
    fn out_of_range_is_reported() {
        let tables = CountTables::new(4, 10).unwrap();
        assert!(matches!(tables.r(4, 11), Err(Error::Range { .. })));
        assert!(matches!(tables.count_n(3, 1, 2), Err(Error::Range { .. })));
    }

    #[test]
    fn overflow_is_loud() {
        // r_40(lambda) leaves u64 long before lambda = 2000.
        let err = build_representation_table(40, 2000).unwrap_err();
        assert!(matches!(err, Error::Overflow { .. }), "{err}");
    }

    #[test]
    fn csv_round_trip() {
        let t = build_representation_table(4, 25).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("lambda,count\n0,1\n1,8\n"));
        let back = RepresentationTable::read_csv(buf.as_slice(), 4).unwrap();
        assert_eq!(back, t);
        assert!(RepresentationTable::read_csv("lambda,count\n1,3\n".as_bytes(), 4).is_err());
    }

    #[test]
    fn reassembled_stack_is_checked() {
        let tables = CountTables::new(3, 20).unwrap();
        let again = CountTables::from_tables(tables.tables().to_vec()).unwrap();
        assert_eq!(again.r(3, 2).unwrap(), 12);
        let mut shuffled = tables.tables().to_vec();
        shuffled.swap(1, 2);
        assert!(CountTables::from_tables(shuffled).is_err());
        assert!(CountTables::from_tables(tables.tables()[1..].to_vec()).is_err());
    }
}
