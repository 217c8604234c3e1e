//! Reduced objective F(a, b) on a grid, as CSV for an external plotter.
//!
//! cargo run --example contour -- [OUT.csv]

use std::fmt::Write;

use circlefit::geometry::{contour_grid, Window};
use circlefit::io::write_atomic;
use circlefit::synthetic::{gen_arc, ArcSpec, Seed};

fn main() -> circlefit::Result<()> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| std::env::temp_dir().join("contour.csv").display().to_string());
    let data = gen_arc(&ArcSpec::new(180.0, 0.01, 50), Seed(2))?;
    let grid = contour_grid(&data, Window::new(-3.0, 3.0, -3.0, 3.0)?, 121, 121)?;

    let (row, col) = grid.argmin();
    println!(
        "grid minimum F={:.6e} at a={:.3} b={:.3}",
        grid.get(row, col),
        grid.a_at(col),
        grid.b_at(row)
    );
    // Along the symmetry axis F flattens out as b -> -inf: the escape valley.
    for row in (0..grid.ny).step_by(20) {
        println!("  a=0 b={:+.2} F={:.5}", grid.b_at(row), grid.get(row, grid.nx / 2));
    }

    let mut csv = String::from("a,b,F\n");
    for row in 0..grid.ny {
        for col in 0..grid.nx {
            let _ = writeln!(csv, "{:.16e},{:.16e},{:.16e}", grid.a_at(col), grid.b_at(row), grid.get(row, col));
        }
    }
    write_atomic(&out, &csv)?;
    println!("wrote {out}");
    Ok(())
}
