use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use spherelab::harness::{
    cube_grid, emit_report, run_error_decay_experiment, run_holder_sweep,
    run_multiplier_comparison, run_scaling_experiment, run_sharpness_experiment,
    run_weyl_experiment, ExperimentRecord, Family, ReportFormat, SweepGrid,
};
use spherelab::lattice::{sphere_points, LatticePoint};
use spherelab::numeric::isqrt;
use spherelab::operator::{maximal_operator, multilinear_average, LatticeFunction};
use spherelab::spectral::multiplier::write_multiplier_csv;
use spherelab::spectral::{
    farey_major_arcs, gauss_sum, multiplier_a, multiplier_b, multiplier_m, sigma_hat_exact,
    weyl_sum, MainTermForm, MultiplierSample, WeylSup,
};
use spherelab::Error;

use crate::args::*;
use crate::cache;
use crate::error::CliError;

const EXPERIMENT_OUT: &str = "results";

fn domain(msg: impl Into<String>) -> CliError {
    CliError::Core(Error::Domain(msg.into()))
}

/// `1.0`, or `re+imi` when the imaginary part is nonzero.
pub fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:?}", z.re)
    } else {
        format!("{:?}{:+?}i", z.re, z.im)
    }
}

fn check_dim(dim: usize) -> Result<(), CliError> {
    if dim == 0 {
        return Err(domain("dimension must be at least 1"));
    }
    Ok(())
}

fn write_file<F>(dir: &Path, name: &str, body: F) -> Result<PathBuf, CliError>
where
    F: FnOnce(&mut BufWriter<File>) -> spherelab::Result<()>,
{
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let mut w = BufWriter::new(File::create(&path)?);
    body(&mut w)?;
    w.flush()?;
    Ok(path)
}

/// `delta`, `const:<v>`, `box:<L>`, or a `.json` / CSV file.
pub fn parse_function(input: &str, dim: usize) -> Result<LatticeFunction, CliError> {
    let f = if input == "delta" {
        LatticeFunction::delta(dim)
    } else if let Some(v) = input.strip_prefix("const:") {
        let v: f64 = v
            .parse()
            .map_err(|_| domain(format!("bad constant in '{input}'")))?;
        LatticeFunction::constant(dim, v)
    } else if let Some(l) = input.strip_prefix("box:") {
        let l: u64 = l
            .parse()
            .map_err(|_| domain(format!("bad box side in '{input}'")))?;
        LatticeFunction::box_indicator(dim, l)
    } else if input.ends_with(".json") {
        LatticeFunction::from_json(&std::fs::read_to_string(input)?)?
    } else {
        LatticeFunction::read_csv(File::open(input)?)?
    };
    if f.dim() != dim {
        return Err(domain(format!(
            "input '{input}' has dimension {}, expected {dim}",
            f.dim()
        )));
    }
    Ok(f)
}

fn inputs(specs: &[String], dim: usize) -> Result<Vec<LatticeFunction>, CliError> {
    specs.iter().map(|s| parse_function(s, dim)).collect()
}

fn describe(f: &LatticeFunction) -> String {
    match f {
        LatticeFunction::Constant { value, .. } => format!("constant {value:?}"),
        _ => format!(
            "support {} points, sup {:?}",
            f.support_size().unwrap_or(0),
            f.sup_norm()
        ),
    }
}

fn write_function(dir: &Path, stem: &str, f: &LatticeFunction) -> Result<(), CliError> {
    let json = f.to_json()?;
    write_file(dir, &format!("{stem}.json"), |w| {
        Ok(w.write_all(json.as_bytes())?)
    })?;
    if !f.is_constant() {
        write_file(dir, &format!("{stem}.csv"), |w| f.write_csv(w))?;
    }
    Ok(())
}

pub fn count(a: &CountArgs) -> Result<String, CliError> {
    check_dim(a.dim)?;
    let arity = a.arity.unwrap_or(1);
    if arity == 0 {
        return Err(domain("arity must be at least 1"));
    }
    let k = a.dim * arity;
    let range = a.lambda.max(a.lambda_max.unwrap_or(0));
    let tables = cache::tables(a.common.table_cache.as_deref(), k, range)?;
    let value = tables.r(k, a.lambda)?;
    if let (Some(dir), Some(_)) = (&a.common.out, a.lambda_max) {
        write_file(dir, &format!("r{k}.csv"), |w| tables.table(k)?.write_csv(w))?;
    }
    Ok(value.to_string())
}

pub fn sphere(a: &SphereArgs) -> Result<String, CliError> {
    check_dim(a.dim)?;
    let points = sphere_points(a.dim, a.lambda)?;
    if let Some(dir) = &a.common.out {
        let f = LatticeFunction::sparse(a.dim, points.iter().map(|p| (p.clone(), 1.0)))?;
        write_file(dir, "sphere.csv", |w| f.write_csv(w))?;
    }
    Ok(format!(
        "{} points with |u|^2 = {} in Z^{}",
        points.len(),
        a.lambda,
        a.dim
    ))
}

pub fn sigma_hat(a: &SigmaHatArgs) -> Result<String, CliError> {
    check_dim(a.dim)?;
    if a.xi.len() != a.dim {
        return Err(domain(format!(
            "--xi has {} entries, expected {}",
            a.xi.len(),
            a.dim
        )));
    }
    let tables = cache::tables(a.common.table_cache.as_deref(), 2 * a.dim, a.lambda)?;
    Ok(fmt_complex(sigma_hat_exact(
        &tables, a.dim, a.lambda, &a.xi,
    )?))
}

pub fn arcs(a: &ArcsArgs) -> Result<String, CliError> {
    let set = farey_major_arcs(a.n)?;
    if let Some(dir) = &a.common.out {
        write_file(dir, "arcs.csv", |w| set.write_csv(w))?;
    }
    let status = match set.verify_disjoint() {
        Ok(()) => "disjoint".to_string(),
        Err(o) => format!("overlap {o:?}"),
    };
    Ok(format!(
        "{} arcs, measure {:?}, {status}",
        set.len(),
        set.measure()
    ))
}

pub fn gauss(a: &GaussArgs) -> Result<String, CliError> {
    let g = gauss_sum(&a.l, a.a, a.q)?;
    Ok(format!("{} |G| = {:?}", fmt_complex(g), g.norm()))
}

pub fn weyl(a: &WeylArgs) -> Result<String, CliError> {
    if a.n == 0 {
        return Err(domain("N must be at least 1"));
    }
    Ok(match a.xi {
        Some(xi) => fmt_complex(weyl_sum(a.n, a.theta, xi)),
        None => {
            let s = WeylSup::new(a.n).evaluate(a.theta);
            format!("sup {:?} at xi {:?}", s.sup, s.xi)
        }
    })
}

pub fn average(a: &AverageArgs) -> Result<String, CliError> {
    check_dim(a.dim)?;
    let fs = inputs(&a.input, a.dim)?;
    let tables = cache::tables(a.common.table_cache.as_deref(), a.dim * fs.len(), a.lambda)?;
    let result = multilinear_average(&tables, &fs, a.lambda)?;
    if let Some(dir) = &a.common.out {
        write_function(dir, "average", &result.values)?;
    }
    Ok(describe(&result.values))
}

pub fn maximal(a: &MaximalArgs) -> Result<String, CliError> {
    check_dim(a.dim)?;
    let fs = inputs(&a.input, a.dim)?;
    let tables = cache::tables(
        a.common.table_cache.as_deref(),
        a.dim * fs.len(),
        a.lambda_max,
    )?;
    let lambdas: Vec<u64> = (1..=a.lambda_max).collect();
    let result = maximal_operator(&tables, &fs, &lambdas)?;
    if let Some(dir) = &a.common.out {
        write_function(dir, "maximal", &result.values)?;
        let argmax = LatticeFunction::sparse(
            a.dim,
            result
                .argmax
                .iter()
                .map(|(x, &l): (&LatticePoint, &u64)| (x.clone(), l as f64)),
        )?;
        write_file(dir, "argmax.csv", |w| argmax.write_csv(w))?;
    }
    Ok(format!(
        "{}, {} radii skipped",
        describe(&result.values),
        result.skipped.len()
    ))
}

pub fn multiplier(a: &MultiplierArgs) -> Result<String, CliError> {
    let d = a.xi.len();
    check_dim(d)?;
    let n =
        a.n.unwrap_or_else(|| isqrt(a.lambda).max(a.q_max).max(a.q).max(1));
    let tables = cache::tables(a.common.table_cache.as_deref(), 2 * d, a.lambda)?;
    let sample = |value: Complex64, layer_q: u64| MultiplierSample {
        lambda: a.lambda,
        xi: a.xi.clone(),
        value,
        layer_q,
    };
    let (value, samples) = match a.kind {
        MultiplierKind::Sigma => {
            let v = sigma_hat_exact(&tables, d, a.lambda, &a.xi)?;
            (v, vec![sample(v, 0)])
        }
        MultiplierKind::A | MultiplierKind::B => {
            let v = if a.kind == MultiplierKind::A {
                multiplier_a(&tables, a.a, a.q, a.lambda, n, &a.xi)?
            } else {
                multiplier_b(&tables, a.a, a.q, a.lambda, n, &a.xi)?
            };
            (v, vec![sample(v, a.q)])
        }
        MultiplierKind::M => {
            let form = match a.form {
                Form::Literal => MainTermForm::Literal,
                Form::Normalized => MainTermForm::Normalized,
            };
            let m = multiplier_m(&tables, a.lambda, n, &a.xi, a.q_max, form)?;
            let mut samples: Vec<MultiplierSample> =
                m.layers.iter().map(|l| sample(l.value, l.q)).collect();
            samples.push(sample(m.total, 0));
            (m.total, samples)
        }
    };
    if let Some(dir) = &a.common.out {
        write_file(dir, "multiplier.csv", |w| write_multiplier_csv(&samples, w))?;
    }
    Ok(fmt_complex(value))
}

fn report(records: &[ExperimentRecord], common: &Common, stem: &str) -> Result<PathBuf, CliError> {
    let dir = common
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(EXPERIMENT_OUT));
    emit_report(
        records,
        &[ReportFormat::Csv, ReportFormat::Json, ReportFormat::Svg],
        &dir,
        stem,
    )?;
    Ok(dir.join(format!("{stem}.csv")))
}

fn num(rec: &ExperimentRecord, key: &str) -> f64 {
    rec.summary_f64(key).unwrap_or(f64::NAN)
}

/// `p,q,r;p,q,r;...` with `inf` allowed.
pub fn parse_triples(text: &str) -> Result<Vec<(f64, f64, f64)>, CliError> {
    text.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let parts: Vec<f64> = t
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::Usage(format!("bad triple '{t}': {e}")))?;
            match parts[..] {
                [p, q, r] => Ok((p, q, r)),
                _ => Err(CliError::Usage(format!(
                    "triple '{t}' needs three exponents"
                ))),
            }
        })
        .collect()
}

pub fn experiment(e: &Experiment) -> Result<String, CliError> {
    match e {
        Experiment::Scaling(a) => {
            let rec = run_scaling_experiment(a.dim, &a.sizes, a.p, a.q_exp, a.r)?;
            let path = report(std::slice::from_ref(&rec), &a.common, "scaling")?;
            Ok(format!(
                "t_star slope {:.4} (d/r = {}), norm product slope {:.4}, wrote {}",
                num(&rec, "t_star_slope"),
                num(&rec, "expected_t_star_slope"),
                num(&rec, "norm_product_slope"),
                path.display()
            ))
        }
        Experiment::Sharpness(a) => {
            let rec = run_sharpness_experiment(a.dim, a.n, a.r_max, a.p)?;
            let path = report(std::slice::from_ref(&rec), &a.common, "sharpness")?;
            Ok(format!(
                "{}: S({}) = {:.6}, tail slope {:.3}, wrote {}",
                rec.summary["classification"].as_str().unwrap_or("?"),
                a.r_max,
                num(&rec, "final_sum"),
                num(&rec, "tail_slope"),
                path.display()
            ))
        }
        Experiment::Holder(a) => {
            let family = match a.family {
                FamilyArg::Random => Family::RandomSparse {
                    seed: a.common.seed,
                },
                FamilyArg::Box => Family::Box,
                FamilyArg::DeltaConstant => Family::DeltaConstant,
            };
            let grid = SweepGrid {
                triples: parse_triples(&a.triples)?,
                family,
                sizes: a.sizes.clone(),
            };
            let records = run_holder_sweep(&grid, a.dim)?;
            let path = report(&records, &a.common, "holder")?;
            let parts: Vec<String> = grid
                .triples
                .iter()
                .zip(&records)
                .map(|(t, r)| format!("({},{},{}) slope {:.3}", t.0, t.1, t.2, num(r, "slope")))
                .collect();
            Ok(format!("{}, wrote {}", parts.join("; "), path.display()))
        }
        Experiment::Weyl(a) => {
            let rec = run_weyl_experiment(&a.sizes)?;
            let path = report(std::slice::from_ref(&rec), &a.common, "weyl")?;
            Ok(format!(
                "minor-arc exponent {:.4} (bound 0.65), wrote {}",
                num(&rec, "exponent"),
                path.display()
            ))
        }
        Experiment::ErrorDecay(a) => {
            let rec = run_error_decay_experiment(a.dim, &a.sizes)?;
            let path = report(std::slice::from_ref(&rec), &a.common, "error_decay")?;
            Ok(format!(
                "delta_fit {:.4}, p threshold {:.4}, raw exponent {:.4}, wrote {}",
                num(&rec, "delta_fit"),
                num(&rec, "p_threshold"),
                num(&rec, "raw_exponent"),
                path.display()
            ))
        }
        Experiment::Multiplier(a) => {
            if a.grid_steps == 0 {
                return Err(domain("grid steps must be at least 1"));
            }
            let grid = cube_grid(a.dim, a.grid_steps);
            let rec = run_multiplier_comparison(a.dim, &a.lambda, &grid, a.q_max)?;
            let path = report(std::slice::from_ref(&rec), &a.common, "multiplier")?;
            Ok(format!(
                "normalized main-term error decreasing: {}, wrote {}",
                rec.summary["normalized_decreasing"],
                path.display()
            ))
        }
    }
}
