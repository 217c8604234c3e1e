use std::path::Path;

use circlefit::algebraic::fit_af2;
use circlefit::cli::run_with;
use circlefit::geometric::{FitOptions, IterativeMethod};
use circlefit::io::{format_dataset, read_dataset, write_atomic};
use circlefit::synthetic::{gen_arc, ArcSpec, Seed};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("circlefit").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn field(out: &str, key: &str) -> String {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("no {key} in {out}"))
        .to_string()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn kasa_on_exact_unit_circle() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("circle4.txt");
    std::fs::write(&file, "1 0\n0 1\n-1 0\n0 -1\n").unwrap();
    let (code, out, _) = run(&["fit", "--method", "af1", path_str(&file)]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "a").parse::<f64>().unwrap(), 0.0);
    assert_eq!(field(&out, "b").parse::<f64>().unwrap(), 0.0);
    assert_eq!(field(&out, "R").parse::<f64>().unwrap(), 1.0);
    assert_eq!(field(&out, "F").parse::<f64>().unwrap(), 0.0);
}

#[test]
fn fit_output_equals_library_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("arc.txt");
    let data = gen_arc(&ArcSpec::new(75.0, 0.02, 30), Seed(12)).unwrap();
    write_atomic(&file, &format_dataset(&data, &[])).unwrap();
    let trace = dir.path().join("trace.csv");
    let (code, out, _) = run(&["fit", "--method", "lma", "--prefit", "af2", "--trace", path_str(&trace), path_str(&file)]);
    assert_eq!(code, 0);

    let data = read_dataset(&file).unwrap();
    let pre = fit_af2(&data).unwrap();
    let lib = IterativeMethod::Lma.run(&data, &pre.estimate, &FitOptions::default()).unwrap();
    let c = lib.result.as_circle().unwrap();
    assert_eq!(field(&out, "status"), "Converged");
    assert_eq!(field(&out, "method"), "AF2+LMA");
    assert_eq!(field(&out, "a").parse::<f64>().unwrap().to_bits(), c.a.to_bits());
    assert_eq!(field(&out, "b").parse::<f64>().unwrap().to_bits(), c.b.to_bits());
    assert_eq!(field(&out, "R").parse::<f64>().unwrap().to_bits(), c.r.to_bits());
    assert_eq!(field(&out, "F").parse::<f64>().unwrap().to_bits(), lib.objective.to_bits());
    assert_eq!(field(&out, "iterations").parse::<usize>().unwrap(), lib.iterations);
    let pre_f = circlefit::geometry::objective(&pre.estimate, &data);
    assert!(lib.objective <= pre_f);
    assert_eq!(std::fs::read_to_string(&trace).unwrap(), lib.trace_csv());

    // Default method is the same pair.
    let (_, default_out, _) = run(&["fit", path_str(&file)]);
    assert_eq!(default_out, out);
}

#[test]
fn bench_table1_is_reproducible() {
    let args = ["bench", "table1", "--n", "25", "--samples", "40", "--starts", "20", "--seed", "7"];
    let (code, first, _) = run(&args);
    assert_eq!(code, 0);
    let (_, second, _) = run(&args);
    assert_eq!(first, second);
    assert!(first.lines().any(|l| l == "# seed = 7"));

    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("reports");
    let (code, _, _) = run(&["bench", "arcs", "--arc", "90", "--samples", "4", "--starts", "5", "--seed", "1", "--out", path_str(&out_dir)]);
    assert_eq!(code, 0);
    let csv = std::fs::read_to_string(out_dir.join("arcs.csv")).unwrap();
    assert!(csv.contains("90,LMA,") || csv.contains("9.0000000000000000e1,LMA,"), "{csv}");
    assert!(out_dir.join("arcs.json").exists());
}

#[test]
fn generate_then_fit_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("gen.txt");
    let (code, _, _) = run(&["generate", "arc", "--arc", "120", "--n", "25", "--sigma", "0.01", "--seed", "4", "--out", path_str(&file)]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(text.contains("# seed = 4"));
    let data = read_dataset(&file).unwrap();
    assert_eq!(data, gen_arc(&ArcSpec::new(120.0, 0.01, 25), Seed(4)).unwrap());
    let (code, out, _) = run(&["fit", "--method", "lmc", "--prefit", "af3", path_str(&file)]);
    assert_eq!(code, 0);
    assert!((field(&out, "R").parse::<f64>().unwrap() - 1.0).abs() < 0.05);
}

#[test]
fn contour_grid_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("c.txt");
    std::fs::write(&input, "1 0\n0 1\n-1 0\n0 -1\n").unwrap();
    let out = dir.path().join("grid.csv");
    let (code, _, _) = run(&["contour", path_str(&input), "--window=-1,1,-1,1", "--res", "5,3", "--out", path_str(&out)]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "a,b,F");
    assert_eq!(rows.len(), 1 + 15);
    let center: Vec<f64> = rows[1 + 5 + 2].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(center, vec![0.0, 0.0, 0.0]);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("pts.txt");
    std::fs::write(&file, "1 0\n0 1\n-1 0\n0 -1\n0.7 0.7\n").unwrap();
    let f = path_str(&file);

    assert_eq!(run(&[]).0, 1);
    assert_eq!(run(&["fit", "--method", "nope", f]).0, 1);
    assert_eq!(run(&["fit", "--method", "af2", "--prefit", "af1", f]).0, 1);
    assert_eq!(run(&["contour", f, "--res", "1,5"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);

    let (code, _, err) = run(&["fit", path_str(&dir.path().join("missing.txt"))]);
    assert_eq!(code, 2);
    assert!(err.contains("missing.txt"));
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1 0\n2 x\n").unwrap();
    assert_eq!(run(&["fit", path_str(&bad)]).0, 2);
    let same = dir.path().join("same.txt");
    std::fs::write(&same, "1 1\n1 1\n1 1\n").unwrap();
    assert_eq!(run(&["fit", path_str(&same)]).0, 2);

    let cfg = dir.path().join("opts.cfg");
    std::fs::write(&cfg, "max_iterations = 1\n").unwrap();
    let far = dir.path().join("arc.txt");
    let data = gen_arc(&ArcSpec::new(40.0, 0.05, 20), Seed(1)).unwrap();
    write_atomic(&far, &format_dataset(&data, &[])).unwrap();
    let (code, out, err) = run(&["fit", "--method", "landau", "--prefit", "cen", "--config", path_str(&cfg), path_str(&far)]);
    assert_eq!(code, 3, "{out}{err}");
    assert!(err.contains("MaxIterations"));
    assert_eq!(field(&out, "status"), "MaxIterations");

    std::fs::write(&cfg, "bogus = 2\n").unwrap();
    assert_eq!(run(&["fit", "--config", path_str(&cfg), f]).0, 1);
}
