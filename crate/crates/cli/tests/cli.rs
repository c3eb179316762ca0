use std::path::Path;
use std::process::{Command, Output};

fn spherelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spherelab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .trim()
        .to_string()
}

fn ok(args: &[&str]) -> String {
    let o = spherelab(args);
    assert!(
        o.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

#[test]
fn count_prints_bare_number() {
    assert_eq!(ok(&["count", "--dim", "6", "--lambda", "1"]), "12");
    assert_eq!(ok(&["count", "-d", "3", "--lambda", "3"]), "8");
    // N_2(5) in d = 2 is r_4(5)
    assert_eq!(
        ok(&["count", "--d", "2", "--lambda", "5", "--arity", "2"]),
        "48"
    );
}

#[test]
fn sigma_hat_at_origin_is_one() {
    assert_eq!(
        ok(&["sigma-hat", "--d", "3", "--lambda", "1", "--xi", "0,0,0"]),
        "1.0"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(spherelab(&["count"]).status.code(), Some(2));
    assert_eq!(spherelab(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        spherelab(&["sphere", "--lambda", "-1"]).status.code(),
        Some(3)
    );
    assert_eq!(
        spherelab(&["sigma-hat", "--lambda", "1", "--xi", "0,0"])
            .status
            .code(),
        Some(3)
    );
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain-file");
    std::fs::write(&file, "").unwrap();
    let o = spherelab(&["arcs", "--N", "5", "--out", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5));
    let o = spherelab(&["average", "--lambda", "2", "--input", "missing.csv,delta"]);
    assert_eq!(o.status.code(), Some(5));
    assert_eq!(spherelab(&["--help"]).status.code(), Some(0));
}

#[test]
fn help_lists_defaults() {
    let o = spherelab(&["experiment", "scaling", "--help"]);
    let text = stdout(&o);
    assert!(text.contains("[default: 2,4,8,16]"), "{text}");
    assert!(text.contains("[default: 3]"), "{text}");
    let o = spherelab(&["multiplier", "--help"]);
    let text = stdout(&o);
    assert!(text.contains("[default: literal]"), "{text}");
    assert!(text.contains("[default: m]"), "{text}");
    let o = spherelab(&["multiplier", "-h"]);
    assert!(stdout(&o).contains("[possible values: sigma, m, a, b]"));
}

#[test]
fn scaling_experiment_reports_slope_near_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let line = ok(&[
        "experiment",
        "scaling",
        "--d",
        "3",
        "--r",
        "1",
        "--sizes",
        "2,4,8,16",
        "--out",
        out,
    ]);
    let slope: f64 = line
        .strip_prefix("t_star slope ")
        .and_then(|s| s.split_whitespace().next())
        .unwrap()
        .parse()
        .unwrap();
    assert!((slope - 3.0).abs() < 0.3, "{line}");
    let csv = std::fs::read_to_string(dir.path().join("scaling.csv")).unwrap();
    assert!(csv.starts_with("experiment,param_json,abscissa,value\n"));
    assert!(dir.path().join("scaling.json").exists());
    assert!(dir.path().join("scaling.svg").exists());
}

fn read_all(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().into_string().unwrap(),
                std::fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let runs: Vec<_> = (0..2)
        .map(|i| {
            let dir = tempfile::tempdir().unwrap();
            let out = dir.path().to_str().unwrap();
            let threads = if i == 0 { "1" } else { "0" };
            ok(&[
                "experiment",
                "holder",
                "--family",
                "random",
                "--seed",
                "7",
                "--sizes",
                "2,3,4",
                "--threads",
                threads,
                "--out",
                out,
            ]);
            ok(&["experiment", "sharpness", "--r-max", "20", "--out", out]);
            ok(&[
                "maximal",
                "--lambda-max",
                "12",
                "--input",
                "box:2,delta",
                "--out",
                out,
            ]);
            ok(&[
                "multiplier",
                "--lambda",
                "30",
                "--xi",
                "0.1,0.2,0.3",
                "--q-max",
                "3",
                "--out",
                out,
            ]);
            let files = read_all(dir.path());
            assert!(files.len() >= 9);
            files
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn config_sits_between_flags_and_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        "[count]\ndim = 4\nlambda = 2\n\n[experiment.sharpness]\nr_max = 10\n",
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();

    // config over the default dimension: r_4(2) = 24
    assert_eq!(ok(&["count", "--config", cfg]), "24");
    // flag over config: r_3(2) = 12
    assert_eq!(ok(&["count", "--config", cfg, "--dim", "3"]), "12");
    assert_eq!(ok(&["count", "--config", cfg, "--lambda", "1"]), "8");

    let out = dir.path().join("o");
    let line = ok(&[
        "experiment",
        "sharpness",
        "--config",
        cfg,
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(line.contains("S(10)"), "{line}");

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "[count]\nnot_a_flag = 1\n").unwrap();
    assert_eq!(
        spherelab(&["count", "--config", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn table_cache_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let first = ok(&[
        "count",
        "--dim",
        "5",
        "--lambda",
        "40",
        "--table-cache",
        cache,
    ]);
    assert!(dir.path().join("tables-d5-l40.json").exists());
    let second = ok(&[
        "count",
        "--dim",
        "5",
        "--lambda",
        "40",
        "--table-cache",
        cache,
    ]);
    assert_eq!(first, second);
}

#[test]
fn count_writes_table_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    ok(&[
        "count",
        "--dim",
        "2",
        "--lambda",
        "1",
        "--lambda-max",
        "5",
        "--out",
        out,
    ]);
    let text = std::fs::read_to_string(dir.path().join("r2.csv")).unwrap();
    // r_2: 1, 4, 4, 0, 4, 8
    let last = text.lines().last().unwrap();
    assert!(last.ends_with(",8") || last.ends_with(" 8"), "{text}");
}
