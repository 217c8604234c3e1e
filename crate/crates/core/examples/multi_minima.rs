//! Four symmetric global minima: the unit-cross data with four points at the
//! origin, and the basins found by multi-start LMA.
//!
//! cargo run --example multi_minima

use circlefit::geometry::{objective, reduced_objective, GeneralizedCircle, Line};
use circlefit::harness::find_global_minimum;
use circlefit::synthetic::{gen_multi_minima, Seed};

fn main() -> circlefit::Result<()> {
    let data = gen_multi_minima(4)?;
    println!("F at the origin-centered circle: {}", reduced_objective(&data, 0.0, 0.0));
    let axis = GeneralizedCircle::Line(Line::new(0.0, 1.0, 0.0)?);
    println!("F at the x axis: {}", objective(&axis, &data));

    let g = find_global_minimum(&data, 200, Seed(1))?;
    println!("{} basins, {} failed starts", g.basin_count, g.failed_starts);
    for b in g.basins.iter().filter(|b| b.value < 2.0 - 1e-9) {
        if let Some(c) = b.params.as_circle() {
            println!("  F={:.12} hits={:>3} center=({:+.6}, {:+.6}) R={:.6}", b.value, b.hits, c.a, c.b, c.r);
        }
    }
    // Every line through the origin has F = 2, so starts that reach this
    // flat family stop at scattered near-line circles.
    let flat: Vec<_> = g.basins.iter().filter(|b| (b.value - 2.0).abs() <= 1e-9).collect();
    println!("  F=2 (near-line): {} basins, {} hits", flat.len(), flat.iter().map(|b| b.hits).sum::<usize>());
    Ok(())
}
