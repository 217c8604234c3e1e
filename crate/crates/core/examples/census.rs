//! How often random point sets have local minima.
//!
//! cargo run --release --example census -- [SAMPLES]

use circlefit::harness::census_local_minima;
use circlefit::synthetic::Seed;

fn main() -> circlefit::Result<()> {
    let samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    for n in [5, 10, 25, 100] {
        let r = census_local_minima(n, samples, 100, Seed(1))?;
        let p = r.probabilities();
        let ci = r.intervals();
        println!(
            "n={n:<4} P(0)={:.3} [{:.3}, {:.3}]  P(1)={:.3}  P(>=2)={:.3}",
            p[0], ci[0].0, ci[0].1, p[1], p[2]
        );
    }
    Ok(())
}
