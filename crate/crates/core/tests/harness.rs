use circlefit::geometric::{fit_lma, FitOptions};
use circlefit::geometry::{DataSet, Point};
use circlefit::harness::{
    census_local_minima, classify_outcome, find_global_minimum, run_convergence_experiment, ConvergenceConfig,
    DataFamily, Outcome, THREADS_ENV,
};
use circlefit::synthetic::{gen_multi_minima, ArcSpec, Seed};

#[test]
fn shallower_basin_of_perturbed_cross_is_a_local_minimum() {
    let base = gen_multi_minima(4).unwrap();
    let mut pts: Vec<Point> = base.points().to_vec();
    pts[0] = Point::new(1.001, 0.0);
    let data = DataSet::new(pts).unwrap();
    let g = find_global_minimum(&data, 300, Seed(2)).unwrap();
    let shallow: Vec<_> = g.basins.iter().filter(|b| b.value > g.value + 1e-6 && b.value < 2.0 - 1e-6).collect();
    assert!(!shallow.is_empty(), "minima did not split: {:?}", g.basins.iter().map(|b| b.value).collect::<Vec<_>>());
    for b in shallow {
        let o = fit_lma(&data, &b.params, &FitOptions::default()).unwrap();
        assert_eq!(classify_outcome(&o, &g), Outcome::LocalMinimum);
    }
    let top = fit_lma(&data, &g.params, &FitOptions::default()).unwrap();
    assert_eq!(classify_outcome(&top, &g), Outcome::Success);
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let mut cfg = ConvergenceConfig::new(DataFamily::Arc(ArcSpec::new(90.0, 0.01, 15)), 12, 8, Seed(5));
    cfg.x = 90.0;
    let census = || census_local_minima(12, 16, 10, Seed(3)).unwrap().to_csv();
    let a = (run_convergence_experiment(&cfg).unwrap().to_csv(), census());
    std::env::set_var(THREADS_ENV, "1");
    let b = (run_convergence_experiment(&cfg).unwrap().to_csv(), census());
    std::env::set_var(THREADS_ENV, "3");
    let c = (run_convergence_experiment(&cfg).unwrap().to_csv(), census());
    std::env::remove_var(THREADS_ENV);
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn report_csv_echoes_configuration() {
    let mut cfg = ConvergenceConfig::new(DataFamily::UniformSquare { n: 10 }, 6, 5, Seed(77));
    cfg.x = 10.0;
    let report = run_convergence_experiment(&cfg).unwrap();
    let csv = report.to_csv();
    assert!(csv.lines().any(|l| l == "# seed = 77"), "{csv}");
    let header = csv.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "x,method,probability,mean_iterations,flops_per_point");
    assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 1 + 4);
    let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(json["seed"], 77);
    for cell in &report.cells {
        assert_eq!(cell.runs, cell.successes + cell.local_minima + cell.diverged + cell.stalled);
        assert!(cell.ci_low <= cell.probability && cell.probability <= cell.ci_high);
    }
}
