//! Noniterative fits on a noisy 60 degree arc.
//!
//! cargo run --example algebraic_fits

use circlefit::algebraic::PrefitMethod;
use circlefit::geometry::{objective, GeneralizedCircle};
use circlefit::synthetic::{gen_arc, ArcSpec, Seed};

fn main() -> circlefit::Result<()> {
    let data = gen_arc(&ArcSpec::new(60.0, 0.02, 30), Seed(11))?;
    println!("{:<4} {:>10} {:>10} {:>10} {:>12} {:>6}", "fit", "a", "b", "R", "F", "steps");
    for method in PrefitMethod::ALL {
        let fit = method.run(&data)?;
        let f = objective(&fit.estimate, &data);
        match fit.estimate {
            GeneralizedCircle::Circle(c) => println!(
                "{:<4} {:>10.5} {:>10.5} {:>10.5} {:>12.4e} {:>6}",
                method.label(),
                c.a,
                c.b,
                c.r,
                f,
                fit.newton_steps
            ),
            GeneralizedCircle::Line(l) => println!("{:<4} line {l:?} F={f:.4e}", method.label()),
        }
    }
    Ok(())
}
