//! CSV, JSON and SVG output for experiment records.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::harness::record::ExperimentRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    Csv,
    Json,
    Svg,
}

/// One parsed CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub experiment: String,
    pub param_json: String,
    pub abscissa: f64,
    pub value: f64,
}

impl CsvRow {
    pub fn params(&self) -> Result<Value> {
        Ok(serde_json::from_str(&self.param_json)?)
    }
}

fn check(records: &[ExperimentRecord]) -> Result<()> {
    if records.is_empty() {
        return Err(Error::Empty("no records to report".into()));
    }
    if let Some(r) = records.iter().find(|r| r.measurements.is_empty()) {
        return Err(Error::Empty(format!(
            "record '{}' has no measurements",
            r.experiment
        )));
    }
    Ok(())
}

/// One row per measurement; `param_json` is the parameter map plus the series name.
pub fn write_csv<W: Write>(records: &[ExperimentRecord], writer: W) -> Result<()> {
    check(records)?;
    let mut w = csv::Writer::from_writer(writer);
    for rec in records {
        for m in &rec.measurements {
            let mut params = rec.params.clone();
            params.insert("series".into(), Value::String(m.series.clone()));
            w.serialize(CsvRow {
                experiment: rec.experiment.clone(),
                param_json: serde_json::to_string(&params)?,
                abscissa: m.abscissa,
                value: m.value,
            })?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(reader: R) -> Result<Vec<CsvRow>> {
    let mut r = csv::Reader::from_reader(reader);
    let headers = r.headers()?.clone();
    if headers != vec!["experiment", "param_json", "abscissa", "value"] {
        return Err(Error::Parse(format!("unexpected CSV header {headers:?}")));
    }
    r.deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

pub fn write_json<W: Write>(records: &[ExperimentRecord], mut writer: W) -> Result<()> {
    check(records)?;
    serde_json::to_writer_pretty(&mut writer, records)?;
    writer.write_all(b"\n")?;
    Ok(())
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#7f7f7f",
];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Log-log plot of every series with positive data, with fitted lines dashed.
pub fn render_svg(record: &ExperimentRecord) -> Result<String> {
    check(std::slice::from_ref(record))?;
    let mut names: Vec<&str> = Vec::new();
    for m in &record.measurements {
        if !names.contains(&m.series.as_str()) {
            names.push(&m.series);
        }
    }
    let series: Vec<(&str, Vec<(f64, f64)>)> = names
        .into_iter()
        .map(|n| {
            let pts = record
                .series(n)
                .into_iter()
                .filter(|p| p.0 > 0.0 && p.1 > 0.0)
                .map(|p| (p.0.log10(), p.1.log10()))
                .collect::<Vec<_>>();
            (n, pts)
        })
        .filter(|s| !s.1.is_empty())
        .collect();
    let all = series.iter().flat_map(|s| s.1.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 - x0 < 1e-9 {
        x1 = x0 + 1.0;
    }
    if y1 - y0 < 1e-9 {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">"#
    )
    .expect("string write");
    writeln!(
        out,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    )
    .expect("string write");
    writeln!(
        out,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    )
    .expect("string write");
    writeln!(
        out,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{} (log10 axes)</text>"#,
        WIDTH / 2.0,
        escape(&record.experiment)
    )
    .expect("string write");
    for (label, v, x, y, anchor) in [
        ("x", x0, MARGIN, HEIGHT - MARGIN + 16.0, "start"),
        ("x", x1, WIDTH - MARGIN, HEIGHT - MARGIN + 16.0, "end"),
        ("y", y0, MARGIN - 6.0, HEIGHT - MARGIN, "end"),
        ("y", y1, MARGIN - 6.0, MARGIN + 10.0, "end"),
    ] {
        writeln!(
            out,
            r#"<text x="{x:.2}" y="{y:.2}" text-anchor="{anchor}">{label}={v:.3}</text>"#
        )
        .expect("string write");
    }
    for (i, (name, pts)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let path: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            path.join(" ")
        )
        .expect("string write");
        for &(x, y) in pts {
            writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{color}"/>"#,
                sx(x),
                sy(y)
            )
            .expect("string write");
        }
        let mut legend = escape(name);
        if let Some(fit) = record.fits.get(*name) {
            // ln y = b ln x + a is the same line in log10 coordinates with intercept a / ln 10
            let a = fit.intercept / std::f64::consts::LN_10;
            let line = |x: f64| a + fit.exponent * x;
            writeln!(
                out,
                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-dasharray="5,4"/>"#,
                sx(x0),
                sy(line(x0)),
                sx(x1),
                sy(line(x1))
            )
            .expect("string write");
            write!(
                legend,
                " slope {:.3} (residual {:.3})",
                fit.exponent, fit.residual
            )
            .expect("string write");
        }
        writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" fill="{color}">{legend}</text>"#,
            MARGIN + 8.0,
            MARGIN + 14.0 * (i as f64 + 1.0)
        )
        .expect("string write");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Writes `<stem>.csv`, `<stem>.json` and one `<stem>-<i>.svg` per record as requested,
/// returning the paths written.
pub fn emit_report(
    records: &[ExperimentRecord],
    formats: &[ReportFormat],
    dir: &Path,
    stem: &str,
) -> Result<Vec<PathBuf>> {
    check(records)?;
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for format in formats {
        match format {
            ReportFormat::Csv => {
                let path = dir.join(format!("{stem}.csv"));
                write_csv(records, BufWriter::new(File::create(&path)?))?;
                written.push(path);
            }
            ReportFormat::Json => {
                let path = dir.join(format!("{stem}.json"));
                let mut w = BufWriter::new(File::create(&path)?);
                write_json(records, &mut w)?;
                w.flush()?;
                written.push(path);
            }
            ReportFormat::Svg => {
                for (i, rec) in records.iter().enumerate() {
                    let path = if records.len() == 1 {
                        dir.join(format!("{stem}.svg"))
                    } else {
                        dir.join(format!("{stem}-{i}.svg"))
                    };
                    std::fs::write(&path, render_svg(rec)?)?;
                    written.push(path);
                }
            }
        }
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ExperimentRecord {
        let mut rec = ExperimentRecord::new("demo", 7);
        rec.param("d", 3).param("note", "a,\"quoted\" value");
        for x in [2.0, 4.0, 8.0, 16.0f64] {
            rec.push("cube", x, x.powi(3));
            rec.push("flat", x, 0.1);
        }
        rec.fit("cube").unwrap();
        rec
    }

    #[test]
    fn refuses_empty_input() {
        assert!(write_csv(&[], Vec::new()).is_err());
        let empty = ExperimentRecord::new("empty", 0);
        assert!(write_json(&[empty.clone()], Vec::new()).is_err());
        assert!(render_svg(&empty).is_err());
    }

    #[test]
    fn csv_parses_back() {
        let rec = sample();
        let mut buf = Vec::new();
        write_csv(&[rec.clone()], &mut buf).unwrap();
        let rows = read_csv(buf.as_slice()).unwrap();
        assert_eq!(rows.len(), rec.measurements.len());
        for (row, m) in rows.iter().zip(&rec.measurements) {
            assert_eq!(row.experiment, "demo");
            assert_eq!(row.abscissa, m.abscissa);
            assert_eq!(row.value, m.value);
            let params = row.params().unwrap();
            assert_eq!(params["series"], m.series.as_str());
            assert_eq!(params["d"], 3);
            assert_eq!(params["note"], "a,\"quoted\" value");
        }
    }

    #[test]
    fn output_is_byte_stable() {
        let rec = sample();
        let render = || {
            let mut csv = Vec::new();
            write_csv(&[rec.clone()], &mut csv).unwrap();
            let mut json = Vec::new();
            write_json(&[rec.clone()], &mut json).unwrap();
            (csv, json, render_svg(&rec).unwrap())
        };
        assert_eq!(render(), render());
    }

    #[test]
    fn json_round_trips() {
        let rec = sample();
        let mut buf = Vec::new();
        write_json(&[rec.clone()], &mut buf).unwrap();
        let back: Vec<ExperimentRecord> = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, vec![rec]);
    }

    #[test]
    fn svg_is_self_contained() {
        let svg = render_svg(&sample()).unwrap();
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert!(!svg.contains("href"));
        assert!(svg.contains("slope 3.000"));
    }
}
