//! Synthetic datasets and the plain-text file format.
//!
//! cargo run --example generate -- [OUT.txt]

use circlefit::io::{format_dataset, read_dataset, write_atomic};
use circlefit::synthetic::{gen_arc, gen_initial_guess, gen_uniform_square, ArcSpec, NoiseModel, Seed};

fn main() -> circlefit::Result<()> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| std::env::temp_dir().join("arc.txt").display().to_string());

    let square = gen_uniform_square(10, Seed(1))?;
    println!("square: centroid {:?}, d_max {:.4}", square.centroid(), square.d_max());

    let mut spec = ArcSpec::new(90.0, 0.05, 12);
    spec.noise = NoiseModel::Isotropic;
    let arc = gen_arc(&spec, Seed(2))?;
    write_atomic(&out, &format_dataset(&arc, &["arc 90 deg, isotropic noise".into(), "seed = 2".into()]))?;
    assert_eq!(read_dataset(&out)?, arc);
    println!("arc: {} points written to {out} and read back exactly", arc.len());

    for i in 0..3 {
        let g = gen_initial_guess(&arc, Seed(100 + i));
        println!("random start {i}: center ({:+.3}, {:+.3}) R={:.3}", g.a, g.b, g.r);
    }
    Ok(())
}
