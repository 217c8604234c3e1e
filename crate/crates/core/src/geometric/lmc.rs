use super::lm::{self, Linearization, LmModel, Trial};
use super::{natural_objective, natural_trace_point, FitOptions, FitOutcome, IterativeMethod, TracePoint};
use crate::error::Result;
use crate::geometry::{DataSet, Frame, GeneralizedCircle, NaturalCircle, Point};

struct NaturalModel {
    points: Vec<Point>,
    frame: Frame,
    circle: NaturalCircle,
    f: f64,
    divergence_radius: f64,
}

impl LmModel for NaturalModel {
    fn objective(&self) -> f64 {
        self.f
    }

    fn linearize(&self) -> Option<Linearization> {
        let c = &self.circle;
        let mut rows = Vec::with_capacity(self.points.len());
        let mut residuals = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let (dx, dy) = (p.x - c.a, p.y - c.b);
            let r = dx.hypot(dy);
            // a point at the center has no defined direction; its row only moves R
            let row = if r > 0.0 {
                [-dx / r, -dy / r, -1.0]
            } else {
                [0.0, 0.0, -1.0]
            };
            rows.push(row);
            residuals.push(r - c.r);
        }
        Some(Linearization { rows, residuals })
    }

    fn try_step(&self, step: &[f64; 3]) -> Trial {
        let next = NaturalCircle {
            a: self.circle.a + step[0],
            b: self.circle.b + step[1],
            r: self.circle.r + step[2],
        };
        if !(next.r > 0.0) || !next.a.is_finite() || !next.b.is_finite() {
            return Trial::Infeasible;
        }
        Trial::Value(natural_objective(&self.points, &next))
    }

    fn accept(&mut self, step: &[f64; 3], f_new: f64) {
        self.circle.a += step[0];
        self.circle.b += step[1];
        self.circle.r += step[2];
        self.f = f_new;
    }

    fn reparametrize(&mut self) -> bool {
        false
    }

    fn diverged(&self) -> bool {
        self.circle.a.hypot(self.circle.b) > self.divergence_radius
    }

    fn snapshot(&self) -> TracePoint {
        natural_trace_point(&self.frame, &self.circle, self.f)
    }
}

/// Levenberg-Marquardt on `(a, b, R)` with residuals `r_i - R`.
pub fn fit_lmc(data: &DataSet, init: &NaturalCircle, opts: &FitOptions) -> Result<FitOutcome> {
    opts.validate()?;
    data.require_points(3)?;
    let init = NaturalCircle::new(init.a, init.b, init.r)?;
    let frame = Frame::of(data);
    let points = data.normalized_points();
    let circle = frame.natural_forward(&init);
    let mut model = NaturalModel {
        f: natural_objective(&points, &circle),
        points,
        frame,
        circle,
        divergence_radius: opts.divergence_radius_factor,
    };
    let run = lm::run(&mut model, opts, opts.iteration_cap(IterativeMethod::Lmc));
    let result = frame.natural_back(&model.circle);
    Ok(FitOutcome {
        method: IterativeMethod::Lmc,
        result: GeneralizedCircle::Circle(result),
        objective: model.f * frame.scale * frame.scale,
        status: run.status,
        iterations: run.iterations,
        trace: run.trace,
        origin_shifts: 0,
    })
}
