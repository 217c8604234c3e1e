//! Every prefit feeding every iterative scheme on one arc size.
//!
//! cargo run --release --example pairing -- [ARC_DEGREES]

use circlefit::harness::{run_pairing_experiment, DataFamily, PairingConfig};
use circlefit::synthetic::{ArcSpec, Seed};

fn main() -> circlefit::Result<()> {
    let arc = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(90.0);
    let mut cfg = PairingConfig::new(DataFamily::Arc(ArcSpec::new(arc, 0.01, 20)), 100, 50, Seed(9));
    cfg.x = arc;
    let report = run_pairing_experiment(&cfg)?;
    let mut cells: Vec<_> = report.cells.iter().collect();
    cells.sort_by(|a, b| b.probability.total_cmp(&a.probability));
    for c in cells {
        println!(
            "{:<8} p={:.3} flops/pt={:>7.1}",
            c.method,
            c.probability,
            c.flops_per_point.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
