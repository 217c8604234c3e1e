//! Iteration paths from a poor initial guess, written as CSV traces.
//!
//! cargo run --example fit_paths -- [OUT_DIR]

use std::path::PathBuf;

use circlefit::geometric::{FitOptions, IterativeMethod};
use circlefit::geometry::{optimal_radius, GeneralizedCircle, NaturalCircle};
use circlefit::io::write_atomic;
use circlefit::synthetic::{gen_arc, ArcSpec, Seed};

fn main() -> circlefit::Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&out)?;
    let data = gen_arc(&ArcSpec::new(180.0, 0.05, 20), Seed(7))?;
    let (a, b) = (1.5, 1.5);
    let init = GeneralizedCircle::Circle(NaturalCircle::new(a, b, optimal_radius(&data, a, b))?);
    for method in IterativeMethod::ALL {
        let fit = method.run(&data, &init, &FitOptions::default())?;
        let path = out.join(format!("path_{}.csv", method.label().to_lowercase()));
        write_atomic(&path, &fit.trace_csv())?;
        println!(
            "{} {} after {} iterations, F={:.6e} -> {}",
            method.label(),
            fit.status.label(),
            fit.iterations,
            fit.objective,
            path.display()
        );
    }
    Ok(())
}
