//! Newton iterates on the Pratt and Taubin characteristic polynomials.
//!
//! cargo run --example newton

use circlefit::algebraic::{build_pratt_poly, build_taubin_poly, moments, newton_smallest_root};
use circlefit::synthetic::{gen_uniform_square, Seed};

fn main() -> circlefit::Result<()> {
    let data = gen_uniform_square(30, Seed(4))?;
    let m = moments(&data);
    for (name, poly) in [("Pratt", build_pratt_poly(&m)), ("Taubin", build_taubin_poly(&m))] {
        let root = newton_smallest_root(&poly)?;
        println!("{name}: eta*={:.15e} in {} steps", root.eta, root.steps);
        for (eta, q) in &root.iterates {
            println!("  eta={eta:.15e} Q={q:+.3e}");
        }
    }
    Ok(())
}
