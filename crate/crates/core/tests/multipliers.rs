use num_complex::Complex64;
use spherelab::lattice::CountTables;
use spherelab::numeric::e;
use spherelab::spectral::multiplier::{major_arc_multiplier, multiplier_m, Cutoff, MainTermForm};
use spherelab::spectral::quad::QuadOptions;
use spherelab::spectral::{multiplier_a, multiplier_b, plateau, reduced_residues, sphere_ft};

/// Composite Simpson on `[lo, hi]` with `n` (even) intervals.
fn simpson<F: Fn(f64) -> Complex64>(f: F, lo: f64, hi: f64, n: usize) -> Complex64 {
    let h = (hi - lo) / n as f64;
    let mut s = f(lo) + f(hi);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += f(lo + i as f64 * h) * w;
    }
    s * (h / 3.0)
}

#[test]
fn b_at_origin_matches_simpson_double_integral() {
    let (d, n, lambda) = (3usize, 4u64, 16u64);
    let tables = CountTables::new(2 * d, 64).unwrap();
    let b = multiplier_b(&tables, 1, 1, lambda, n, &[0.0; 3]).unwrap();
    let nf = n as f64;
    let b0 = |beta: f64| {
        simpson(
            |t| e(beta * t * t) * plateau(t / nf),
            -2.0 * nf,
            2.0 * nf,
            4000,
        )
    };
    let w = 1.0 / (8.0 * nf);
    let integral = simpson(
        |beta| e(-(lambda as f64) * beta) * b0(beta).powi(2 * d as i32),
        -w,
        w,
        400,
    );
    let expect = integral / tables.count_n(d, lambda, 2).unwrap() as f64;
    assert!(
        (b - expect).norm() < 1e-7 * expect.norm(),
        "{b} vs {expect}"
    );
}

#[test]
fn cutoff_gap_shrinks_with_scale() {
    let (n, lambda) = (4u64, 16u64);
    let tables = CountTables::new(6, 64).unwrap();
    // q xi_1 - l sits at 0.4, inside the A window but only partly inside Psi at scale 1/4.
    let xi = [0.2, 0.05, 0.0];
    let a = multiplier_a(&tables, 1, 2, lambda, n, &xi).unwrap();
    let gaps: Vec<f64> = [0.25, 0.5, 1.0]
        .iter()
        .map(|&s| {
            let b = major_arc_multiplier(
                &tables,
                1,
                2,
                lambda,
                n,
                &xi,
                Cutoff::Bump(s),
                QuadOptions::default(),
            )
            .unwrap();
            (a - b).norm()
        })
        .collect();
    assert!(gaps[0] >= gaps[1] && gaps[1] >= gaps[2], "{gaps:?}");
    assert!(gaps[2] < gaps[0]);
}

#[test]
fn main_term_layers_obey_gauss_bound() {
    let tables = CountTables::new(6, 100).unwrap();
    let d = 3;
    for xi in [[0.0, 0.0, 0.0], [0.26, 0.1, 0.49], [0.5, 0.5, 0.0]] {
        let m = multiplier_m(&tables, 100, 10, &xi, 10, MainTermForm::Literal).unwrap();
        for layer in &m.layers {
            let bound = 2f64.sqrt().powi(d) * (layer.q as f64).powf(-(d as f64) / 2.0);
            assert!(
                layer.max_term <= bound * (1.0 + 1e-12),
                "q {} {}",
                layer.q,
                layer.max_term
            );
            let phi = reduced_residues(layer.q).count() as f64;
            assert!(layer.value.norm() <= phi * bound * (1.0 + 1e-12));
        }
        let sum: Complex64 = m.layers.iter().map(|l| l.value).sum();
        assert!((sum - m.total).norm() < 1e-12);
    }
}

#[test]
fn main_term_at_origin_is_one_plus_higher_layers() {
    let tables = CountTables::new(6, 100).unwrap();
    let m = multiplier_m(&tables, 50, 8, &[0.0; 3], 8, MainTermForm::Literal).unwrap();
    assert!((m.layers[0].value - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    let rest: Complex64 = m.layers[1..].iter().map(|l| l.value).sum();
    assert!((m.total - 1.0 - rest).norm() < 1e-12);
    assert_eq!(sphere_ft(6, 50f64.sqrt(), 0.0), 1.0);
}
