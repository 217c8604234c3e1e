//! Random-start convergence of the four iterative schemes across arc sizes.
//!
//! cargo run --release --example convergence

use circlefit::harness::{run_convergence_experiment, ConvergenceConfig, DataFamily};
use circlefit::synthetic::{ArcSpec, Seed};

fn main() -> circlefit::Result<()> {
    println!("{:>5} {:<4} {:>6} {:>8} {:>9} {:>9}", "arc", "meth", "p", "iters", "flops/pt", "diverged");
    for arc in [20.0, 60.0, 120.0, 180.0, 360.0] {
        let mut cfg = ConvergenceConfig::new(DataFamily::Arc(ArcSpec::new(arc, 0.01, 20)), 40, 20, Seed(5));
        cfg.x = arc;
        let report = run_convergence_experiment(&cfg)?;
        for c in &report.cells {
            println!(
                "{:>5} {:<4} {:>6.3} {:>8.1} {:>9.0} {:>9}",
                arc,
                c.method,
                c.probability,
                c.mean_iterations.unwrap_or(f64::NAN),
                c.flops_per_point.unwrap_or(f64::NAN),
                c.diverged
            );
        }
    }
    Ok(())
}
