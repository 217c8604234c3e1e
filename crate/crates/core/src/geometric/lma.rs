//! Levenberg-Marquardt in the `(A, D, θ)` parametrization, where
//! `B = E cos θ`, `C = E sin θ` and `E = √(1 + 4AD)`. Circles and lines are
//! covered uniformly and the parameter space has no escape to infinity.
//!
//! The scheme is singular where `1 + 4AD = 0`, i.e. when the circle center
//! sits at the coordinate origin. A step that would cross into
//! `1 + 4AD < 0` triggers an origin shift: the data are translated by a
//! random vector of length `d_max / √n` and the parameters recomputed for
//! the same circle.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::lm::{self, Linearization, LmModel, Trial};
use super::{FitOptions, FitOutcome, IterativeMethod, TracePoint};
use crate::error::{Error, Result};
use crate::geometry::{AlgebraicCircle, DataSet, Frame, GeneralizedCircle, Point};

/// Smallest `1 + 4AP_i` a trial point may have.
const MIN_SQRT_ARG: f64 = 1e-14;
/// Below this `E²` the θ direction is lost and the origin must move.
const MIN_E_SQUARED: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdtParams {
    pub a: f64,
    pub d: f64,
    /// Radians in `(-π, π]`.
    pub theta: f64,
}

impl AdtParams {
    pub fn new(a: f64, d: f64, theta: f64) -> Self {
        Self {
            a,
            d,
            theta: wrap_angle(theta),
        }
    }

    /// Parameters of a circle or line; the coefficients are normalized first.
    pub fn from_algebraic(c: &AlgebraicCircle) -> Result<Self> {
        let n = c.normalize()?;
        Ok(Self::new(n.a, n.d, n.c.atan2(n.b)))
    }

    /// `1 + 4AD`
    pub fn e_squared(&self) -> f64 {
        1.0 + 4.0 * self.a * self.d
    }

    pub fn to_algebraic(&self) -> AlgebraicCircle {
        let e = self.e_squared().max(0.0).sqrt();
        AlgebraicCircle::new(self.a, e * self.theta.cos(), e * self.theta.sin(), self.d)
    }
}

fn wrap_angle(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(TAU);
    if t > PI {
        t -= TAU;
    }
    t
}

/// Signed distance and its partial derivatives with respect to `(A, D, θ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LmaPartials {
    pub d: f64,
    pub d_a: f64,
    pub d_d: f64,
    pub d_theta: f64,
}

/// Distance `d = 2P / (1 + Q)` with `P = Az + Eu + D`, `Q = √(1 + 4AP)`,
/// and its analytic gradient
///
/// ```text
/// ∂d/∂A = (z + 2Du/E)·R - d²/Q
/// ∂d/∂D = (2Au/E + 1)·R
/// ∂d/∂θ = (-x sin θ + y cos θ)·E·R
/// R     = 2(1 - Ad/Q) / (Q + 1)
/// ```
pub fn lma_distance_and_jacobian(p: &AdtParams, point: &Point) -> Result<LmaPartials> {
    let e2 = p.e_squared();
    if !(e2 > 0.0) {
        return Err(Error::SingularConfiguration("1 + 4AD <= 0"));
    }
    let e = e2.sqrt();
    let (sin, cos) = p.theta.sin_cos();
    let (x, y) = (point.x, point.y);
    let z = x * x + y * y;
    let u = x * cos + y * sin;
    let big_p = p.a * z + e * u + p.d;
    let arg = 1.0 + 4.0 * p.a * big_p;
    if !(arg > 0.0) {
        return Err(Error::SingularConfiguration("1 + 4AP <= 0: point at the center"));
    }
    let q = arg.sqrt();
    let d = 2.0 * big_p / (1.0 + q);
    let r = 2.0 * (1.0 - p.a * d / q) / (q + 1.0);
    Ok(LmaPartials {
        d,
        d_a: (z + 2.0 * p.d * u / e) * r - d * d / q,
        d_d: (2.0 * p.a * u / e + 1.0) * r,
        d_theta: (-x * sin + y * cos) * e * r,
    })
}

fn adt_objective(points: &[Point], p: &AdtParams) -> Option<f64> {
    let e = p.e_squared().max(0.0).sqrt();
    let (sin, cos) = p.theta.sin_cos();
    let mut f = 0.0;
    for pt in points {
        let big_p = p.a * pt.z() + e * (pt.x * cos + pt.y * sin) + p.d;
        let arg = 1.0 + 4.0 * p.a * big_p;
        if !(arg >= MIN_SQRT_ARG) {
            return None;
        }
        let d = 2.0 * big_p / (1.0 + arg.sqrt());
        f += d * d;
    }
    f.is_finite().then_some(f)
}

struct AdtModel {
    /// Frame points plus the accumulated origin shift.
    points: Vec<Point>,
    frame: Frame,
    shift: (f64, f64),
    params: AdtParams,
    f: f64,
    shifts: usize,
    max_shifts: usize,
    shift_length: f64,
    rng: ChaCha8Rng,
}

impl AdtModel {
    fn caller_algebraic(&self) -> AlgebraicCircle {
        let local = self
            .params
            .to_algebraic()
            .translated(-self.shift.0, -self.shift.1);
        self.frame.algebraic_back(&local)
    }
}

impl LmModel for AdtModel {
    fn objective(&self) -> f64 {
        self.f
    }

    fn linearize(&self) -> Option<Linearization> {
        if self.params.e_squared() < MIN_E_SQUARED {
            return None;
        }
        let mut rows = Vec::with_capacity(self.points.len());
        let mut residuals = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let part = lma_distance_and_jacobian(&self.params, p).ok()?;
            rows.push([part.d_a, part.d_d, part.d_theta]);
            residuals.push(part.d);
        }
        Some(Linearization { rows, residuals })
    }

    fn try_step(&self, step: &[f64; 3]) -> Trial {
        let next = AdtParams::new(
            self.params.a + step[0],
            self.params.d + step[1],
            self.params.theta + step[2],
        );
        if !(next.a.is_finite() && next.d.is_finite() && next.theta.is_finite()) {
            return Trial::Infeasible;
        }
        if next.e_squared() < 0.0 {
            return Trial::Reparametrize;
        }
        match adt_objective(&self.points, &next) {
            Some(f) => Trial::Value(f),
            None => Trial::Infeasible,
        }
    }

    fn accept(&mut self, step: &[f64; 3], f_new: f64) {
        self.params = AdtParams::new(
            self.params.a + step[0],
            self.params.d + step[1],
            self.params.theta + step[2],
        );
        self.f = f_new;
    }

    fn reparametrize(&mut self) -> bool {
        if self.shifts >= self.max_shifts {
            return false;
        }
        self.shifts += 1;
        let phi = self.rng.random::<f64>() * TAU;
        let (u, v) = (self.shift_length * phi.cos(), self.shift_length * phi.sin());
        let moved = self.params.to_algebraic().translated(u, v);
        for p in &mut self.points {
            p.x += u;
            p.y += v;
        }
        self.shift.0 += u;
        self.shift.1 += v;
        let Ok(params) = AdtParams::from_algebraic(&moved) else {
            return false;
        };
        self.params = params;
        match adt_objective(&self.points, &self.params) {
            Some(f) => {
                self.f = f;
                true
            }
            None => false,
        }
    }

    fn diverged(&self) -> bool {
        false
    }

    fn snapshot(&self) -> TracePoint {
        TracePoint {
            algebraic: self.caller_algebraic(),
            objective: self.f * self.frame.scale * self.frame.scale,
        }
    }
}

/// Levenberg-Marquardt over `(A, D, θ)`. Accepts lines as initial guesses
/// and may return a line.
pub fn fit_lma(data: &DataSet, init: &GeneralizedCircle, opts: &FitOptions) -> Result<FitOutcome> {
    opts.validate()?;
    data.require_points(3)?;
    let frame = Frame::of(data);
    let points = data.normalized_points();
    let local = frame.algebraic_forward(&init.to_algebraic());
    let params = AdtParams::from_algebraic(&local)?;
    let f = adt_objective(&points, &params).ok_or(Error::SingularConfiguration(
        "initial guess centered on a data point",
    ))?;
    let mut model = AdtModel {
        shift_length: 1.0 / (data.len() as f64).sqrt(),
        points,
        frame,
        shift: (0.0, 0.0),
        params,
        f,
        shifts: 0,
        max_shifts: opts.max_origin_shifts,
        rng: ChaCha8Rng::seed_from_u64(opts.rng_seed),
    };
    let run = lm::run(&mut model, opts, opts.iteration_cap(IterativeMethod::Lma));
    let result = model.caller_algebraic().normalize()?.to_natural()?;
    Ok(FitOutcome {
        method: IterativeMethod::Lma,
        result,
        objective: model.f * frame.scale * frame.scale,
        status: run.status,
        iterations: run.iterations,
        trace: run.trace,
        origin_shifts: model.shifts,
    })
}
