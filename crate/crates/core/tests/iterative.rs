use circlefit::algebraic::fit_af2;
use circlefit::geometric::{fit_landau, fit_lma, fit_spath, FitOptions, FitStatus, IterativeMethod};
use circlefit::geometry::{objective, DataSet, GeneralizedCircle, NaturalCircle, Point};
use circlefit::synthetic::{gen_arc, gen_initial_guess, ArcSpec, Seed};

fn arc(deg: f64, seed: u64) -> DataSet {
    gen_arc(&ArcSpec::new(deg, 0.05, 25), Seed(seed)).unwrap()
}

#[test]
fn trace_is_consistent_with_the_outcome() {
    let data = arc(120.0, 3);
    let init: GeneralizedCircle = gen_initial_guess(&data, Seed(8)).into();
    for method in IterativeMethod::ALL {
        let o = method.run(&data, &init, &FitOptions::default()).unwrap();
        assert_eq!(o.trace.len(), o.iterations + 1, "{}", method.label());
        assert_eq!(o.trace.last().unwrap().objective, o.objective);
        for t in &o.trace {
            let c = t.algebraic.to_natural().unwrap();
            let f = objective(&c, &data);
            assert!((f - t.objective).abs() <= 1e-9 * (1.0 + f), "{} {f} vs {}", method.label(), t.objective);
        }
        if method != IterativeMethod::Landau {
            // Landau replaces the initial radius by the mean distance.
            let c0 = o.trace[0].natural().unwrap();
            let i = init.as_circle().unwrap();
            assert!((c0.a - i.a).abs() < 1e-12 && (c0.b - i.b).abs() < 1e-12 && (c0.r - i.r).abs() < 1e-12);
        }
        let csv = o.trace_csv();
        assert_eq!(csv.lines().count(), o.trace.len() + 1);
    }
}

#[test]
fn spath_never_increases_the_objective() {
    for seed in 0..20 {
        let data = arc(90.0, seed);
        let init = gen_initial_guess(&data, Seed(seed + 50));
        let o = fit_spath(&data, &init, &FitOptions::default()).unwrap();
        for w in o.trace.windows(2) {
            assert!(w[1].objective <= w[0].objective * (1.0 + 1e-12), "seed {seed}: {} -> {}", w[0].objective, w[1].objective);
        }
    }
}

#[test]
fn landau_stops_at_a_stationary_point() {
    for seed in 0..10 {
        let data = arc(180.0, seed);
        let start = *fit_af2(&data).unwrap().estimate.as_circle().unwrap();
        let o = fit_landau(&data, &start, &FitOptions::default()).unwrap();
        assert_eq!(o.status, FitStatus::Converged);
        let c = *o.result.as_circle().unwrap();
        let (mut ga, mut gb, mut norm) = (0.0, 0.0, 0.0);
        for p in data.points() {
            let r = (p.x - c.a).hypot(p.y - c.b);
            ga += (r - c.r) * (c.a - p.x) / r;
            gb += (r - c.r) * (c.b - p.y) / r;
            norm += (r - c.r).abs();
        }
        assert!(ga.hypot(gb) <= 1e-6 * norm, "seed {seed}: gradient ({ga}, {gb})");
    }
}

#[test]
fn fixed_point_schemes_are_slower_than_lm() {
    let data = arc(120.0, 3);
    let start = fit_af2(&data).unwrap().estimate;
    let opts = FitOptions::default();
    let run = |m: IterativeMethod| m.run(&data, &start, &opts).unwrap();
    let (lmc, spa, lan) = (run(IterativeMethod::Lmc), run(IterativeMethod::Spath), run(IterativeMethod::Landau));
    for o in [&lmc, &spa, &lan] {
        assert_eq!(o.status, FitStatus::Converged);
        assert!((o.objective - lmc.objective).abs() <= 1e-9 * lmc.objective);
    }
    assert!(lan.iterations >= 50, "Landau took {}", lan.iterations);
    assert!(spa.iterations > lmc.iterations, "Spath {} vs LMC {}", spa.iterations, lmc.iterations);
}

#[test]
fn lma_fits_collinear_data_with_a_line() {
    let data = DataSet::from_xy(&[(0.0, 1.0), (1.0, 3.0), (2.0, 5.0), (3.0, 7.0), (-1.5, -2.0)]).unwrap();
    let init = NaturalCircle::new(3.0, -1.0, 3.0).unwrap();
    let o = fit_lma(&data, &init.into(), &FitOptions::default()).unwrap();
    assert_eq!(o.status, FitStatus::Converged);
    assert!(o.objective < 1e-18, "{}", o.objective);
    if let GeneralizedCircle::Circle(c) = o.result {
        assert!(c.r > 1e6, "expected a line or a huge circle, got {c:?}");
    }
}

#[test]
fn lma_accepts_a_line_as_initial_guess() {
    let data = arc(60.0, 1);
    let line = circlefit::geometry::Line::new(0.0, 1.0, -1.0).unwrap();
    let o = fit_lma(&data, &line.into(), &FitOptions::default()).unwrap();
    assert_eq!(o.status, FitStatus::Converged);
    let c = o.result.as_circle().unwrap();
    assert!((c.r - 1.0).abs() < 0.2 && c.b.abs() < 0.2, "{c:?}");
    assert!(IterativeMethod::Lmc.run(&data, &line.into(), &FitOptions::default()).is_err());
}

#[test]
fn half_circle_lmc_escapes_along_the_axis() {
    let data = gen_arc(&ArcSpec::new(180.0, 0.01, 50), Seed(0)).unwrap();
    let mut diverged = 0;
    for j in 0..40 {
        let init = gen_initial_guess(&data, Seed(j));
        let o = IterativeMethod::Lmc.run(&data, &init.into(), &FitOptions::default()).unwrap();
        if o.status == FitStatus::Diverged {
            diverged += 1;
            let c = o.trace.last().unwrap().natural().unwrap();
            assert!(c.a.abs() < 1e-2 * c.b.abs(), "escape off axis: {c:?}");
            let far = Point::new(c.a, c.b);
            assert!(far.distance(&data.centroid()) > 1e5);
        }
    }
    assert!(diverged > 0);
}
