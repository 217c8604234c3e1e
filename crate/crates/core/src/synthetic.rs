//! Seeded generators for the benchmark data families.
//!
//! Every generator is a pure function of its arguments and a [`Seed`]. Seeds
//! key a ChaCha8 stream, and [`Seed::derive`] splits one seed into
//! independent child seeds so parallel tasks never share a stream.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{optimal_radius, DataSet, NaturalCircle, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Seed(pub u64);

impl Seed {
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Child seed for `(tag, index)`. Distinct inputs give unrelated seeds.
    pub fn derive(self, tag: u64, index: u64) -> Seed {
        let mut h = splitmix64(self.0 ^ 0x243f_6a88_85a3_08d3);
        h = splitmix64(h ^ tag);
        Seed(splitmix64(h ^ index))
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Uniform deviate in the open interval `(0, 1)`.
fn open_unit(rng: &mut impl Rng) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return u;
        }
    }
}

/// Standard normal deviate by the Box-Muller transform.
pub fn standard_normal(rng: &mut impl Rng) -> f64 {
    let u1 = open_unit(rng);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NoiseModel {
    /// Displacement along the radius through the true point.
    Radial,
    /// Independent displacement in `x` and `y`.
    Isotropic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Placement {
    /// Equally spaced angles; a full circle omits the repeated endpoint.
    Equal,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArcSpec {
    pub radius: f64,
    pub arc_degrees: f64,
    pub sigma: f64,
    pub n: usize,
    pub center: Point,
    /// Angle (radians) of the first point; `None` centers the arc on the top.
    pub start_angle: Option<f64>,
    pub noise: NoiseModel,
    pub placement: Placement,
}

impl ArcSpec {
    /// Unit circle at the origin, radial noise, equal spacing.
    pub fn new(arc_degrees: f64, sigma: f64, n: usize) -> Self {
        Self {
            radius: 1.0,
            arc_degrees,
            sigma,
            n,
            center: Point::new(0.0, 0.0),
            start_angle: None,
            noise: NoiseModel::Radial,
            placement: Placement::Equal,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::TooFewPoints {
                required: 3,
                got: self.n,
            });
        }
        if !(self.arc_degrees > 0.0 && self.arc_degrees <= 360.0) {
            return Err(Error::InvalidParameter(format!(
                "arc must lie in (0, 360] degrees, got {}",
                self.arc_degrees
            )));
        }
        if !(self.sigma >= 0.0 && self.sigma.is_finite()) {
            return Err(Error::InvalidParameter(format!("sigma must be >= 0, got {}", self.sigma)));
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::InvalidParameter(format!("radius must be > 0, got {}", self.radius)));
        }
        if !(self.center.x.is_finite() && self.center.y.is_finite()) {
            return Err(Error::InvalidParameter("center must be finite".into()));
        }
        Ok(())
    }

    fn angles(&self, rng: &mut impl Rng) -> Vec<f64> {
        let span = self.arc_degrees.to_radians();
        let start = self.start_angle.unwrap_or(PI / 2.0 - span / 2.0);
        match self.placement {
            Placement::Equal => {
                let full = self.arc_degrees >= 360.0;
                let gaps = if full { self.n } else { self.n - 1 } as f64;
                (0..self.n).map(|i| start + span * i as f64 / gaps).collect()
            }
            Placement::Random => (0..self.n).map(|_| start + span * rng.random::<f64>()).collect(),
        }
    }
}

/// `n` i.i.d. points uniform in the open unit square.
pub fn gen_uniform_square(n: usize, seed: Seed) -> Result<DataSet> {
    if n < 3 {
        return Err(Error::TooFewPoints { required: 3, got: n });
    }
    let mut rng = seed.rng();
    let points = (0..n)
        .map(|_| {
            let x = open_unit(&mut rng);
            let y = open_unit(&mut rng);
            Point::new(x, y)
        })
        .collect();
    DataSet::new(points)
}

pub fn gen_arc(spec: &ArcSpec, seed: Seed) -> Result<DataSet> {
    spec.validate()?;
    let mut rng = seed.rng();
    let angles = spec.angles(&mut rng);
    let points = angles
        .into_iter()
        .map(|t| {
            let (sin, cos) = t.sin_cos();
            match spec.noise {
                NoiseModel::Radial => {
                    let r = spec.radius + spec.sigma * standard_normal(&mut rng);
                    Point::new(spec.center.x + r * cos, spec.center.y + r * sin)
                }
                NoiseModel::Isotropic => {
                    let dx = spec.sigma * standard_normal(&mut rng);
                    let dy = spec.sigma * standard_normal(&mut rng);
                    Point::new(
                        spec.center.x + spec.radius * cos + dx,
                        spec.center.y + spec.radius * sin + dy,
                    )
                }
            }
        })
        .collect();
    DataSet::new(points)
}

/// `(±1, 0)`, `(0, ±1)` and `k` copies of the origin.
pub fn gen_multi_minima(k: usize) -> Result<DataSet> {
    if k < 4 {
        return Err(Error::InvalidParameter(format!("need k >= 4 origin points, got {k}")));
    }
    let mut points = vec![
        Point::new(1.0, 0.0),
        Point::new(0.0, 1.0),
        Point::new(-1.0, 0.0),
        Point::new(0.0, -1.0),
    ];
    points.extend(std::iter::repeat_n(Point::new(0.0, 0.0), k));
    DataSet::new(points)
}

/// Center uniform in the 5×5 square around the centroid, radius optimal for
/// that center.
pub fn gen_initial_guess(data: &DataSet, seed: Seed) -> NaturalCircle {
    let mut rng = seed.rng();
    let c = data.centroid();
    let a = c.x + 5.0 * (rng.random::<f64>() - 0.5);
    let b = c.y + 5.0 * (rng.random::<f64>() - 0.5);
    NaturalCircle {
        a,
        b,
        r: optimal_radius(data, a, b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::reduced_objective;

    #[test]
    fn square_is_deterministic_and_open() {
        let a = gen_uniform_square(5, Seed(42)).unwrap();
        let b = gen_uniform_square(5, Seed(42)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, gen_uniform_square(5, Seed(43)).unwrap());
        let big = gen_uniform_square(100_000, Seed(1)).unwrap();
        for p in big.points() {
            assert!(p.x > 0.0 && p.x < 1.0 && p.y > 0.0 && p.y < 1.0);
        }
        // uniform variance 1/12, so 6σ of the mean is 6/√(12·10⁵) ≈ 0.0055
        let c = big.centroid();
        assert!((c.x - 0.5).abs() < 0.0055 && (c.y - 0.5).abs() < 0.0055);
    }

    #[test]
    fn exact_full_circle() {
        let d = gen_arc(&ArcSpec::new(360.0, 0.0, 4), Seed(0)).unwrap();
        for p in d.points() {
            assert!((p.x.hypot(p.y) - 1.0).abs() < 1e-15);
        }
        // top-centered: first point at 90° - 180° = -90°
        assert!((d.points()[0].y + 1.0).abs() < 1e-15);
    }

    #[test]
    fn arc_endpoints_symmetric_about_top() {
        let d = gen_arc(&ArcSpec::new(90.0, 0.0, 3), Seed(0)).unwrap();
        let p = d.points();
        assert!((p[1].x).abs() < 1e-15 && (p[1].y - 1.0).abs() < 1e-15);
        assert!((p[0].x + p[2].x).abs() < 1e-15);
        assert!((p[2].x.atan2(p[2].y) + PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn normal_moments() {
        let mut rng = Seed(9).rng();
        let n = 100_000;
        let xs: Vec<f64> = (0..n).map(|_| standard_normal(&mut rng)).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        // sd of the mean 1/√n, of the variance √(2/n)
        assert!(mean.abs() < 6.0 / (n as f64).sqrt());
        assert!((var - 1.0).abs() < 6.0 * (2.0 / n as f64).sqrt());
    }

    #[test]
    fn radial_noise_half_normal_mean() {
        let spec = ArcSpec::new(90.0, 0.01, 10);
        let mut devs = Vec::new();
        for s in 0..1000 {
            let d = gen_arc(&spec, Seed(s)).unwrap();
            devs.extend(d.points().iter().map(|p| (p.x.hypot(p.y) - 1.0).abs()));
        }
        let m = devs.len() as f64;
        let mean = devs.iter().sum::<f64>() / m;
        let want = 0.01 * (2.0 / PI).sqrt();
        // variance of |N(0, σ²)| is σ²(1 - 2/π)
        let se = 0.01 * (1.0 - 2.0 / PI).sqrt() / m.sqrt();
        assert!((mean - want).abs() < 3.0 * se, "{mean} vs {want}");
    }

    #[test]
    fn multi_minima_layout() {
        let d = gen_multi_minima(4).unwrap();
        assert_eq!(d.len(), 8);
        assert_eq!(reduced_objective(&d, 0.0, 0.0), 2.0);
        let mut rotated: Vec<(f64, f64)> = d.points().iter().map(|p| (-p.y, p.x)).collect();
        let mut orig: Vec<(f64, f64)> = d.points().iter().map(|p| (p.x + 0.0, p.y + 0.0)).collect();
        for v in rotated.iter_mut() {
            *v = (v.0 + 0.0, v.1 + 0.0);
        }
        rotated.sort_by(|a, b| a.partial_cmp(b).unwrap());
        orig.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(rotated, orig);
        assert!(gen_multi_minima(3).is_err());
    }

    #[test]
    fn initial_guess_in_square() {
        let d = gen_arc(&ArcSpec::new(120.0, 0.01, 20), Seed(3)).unwrap();
        let c = d.centroid();
        for s in 0..200 {
            let g = gen_initial_guess(&d, Seed(s));
            assert!((g.a - c.x).abs() <= 2.5 && (g.b - c.y).abs() <= 2.5);
            assert!((g.r - optimal_radius(&d, g.a, g.b)).abs() <= 1e-14);
            assert_eq!(g, gen_initial_guess(&d, Seed(s)));
        }
    }

    #[test]
    fn derived_seeds_differ() {
        let s = Seed(7);
        assert_ne!(s.derive(0, 0), s.derive(0, 1));
        assert_ne!(s.derive(0, 1), s.derive(1, 0));
        assert_eq!(s.derive(3, 4), Seed(7).derive(3, 4));
    }
}
