//! The four iterative schemes started from the Pratt fit.
//!
//! cargo run --example geometric_fits

use circlefit::algebraic::fit_af2;
use circlefit::geometric::{FitOptions, IterativeMethod};
use circlefit::synthetic::{gen_arc, ArcSpec, Seed};

fn main() -> circlefit::Result<()> {
    let data = gen_arc(&ArcSpec::new(120.0, 0.05, 25), Seed(3))?;
    let start = fit_af2(&data)?.estimate;
    let opts = FitOptions::default();
    for method in IterativeMethod::ALL {
        let fit = method.run(&data, &start, &opts)?;
        let c = fit.result.as_circle().copied();
        println!(
            "{} {:<10} iterations={:<5} F={:.12e} circle={:?} flops/pt={:.0}",
            method.label(),
            fit.status.label(),
            fit.iterations,
            fit.objective,
            c.map(|c| (c.a, c.b, c.r)),
            fit.flops(data.len()) / data.len() as f64
        );
    }
    Ok(())
}
