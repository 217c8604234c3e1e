use super::{is_converged, natural_objective, natural_trace_point, FitOptions, FitOutcome, FitStatus, IterativeMethod};
use crate::error::Result;
use crate::geometry::{mean_distance, DataSet, Frame, GeneralizedCircle, NaturalCircle};

/// Landau's fixed-point scheme.
///
/// Setting `∂F/∂a = ∂F/∂b = ∂F/∂R = 0` gives `R = mean(r_i)` and
/// `a = x̄ + R·mean((a - x_i)/r_i)`, `b = ȳ + R·mean((b - y_i)/r_i)`; the
/// iteration evaluates the right-hand sides at the current center. The
/// radius of each iterate is the mean distance to its center, so the
/// initial radius is ignored.
pub fn fit_landau(data: &DataSet, init: &NaturalCircle, opts: &FitOptions) -> Result<FitOutcome> {
    opts.validate()?;
    data.require_points(3)?;
    let init = NaturalCircle::new(init.a, init.b, init.r)?;
    let frame = Frame::of(data);
    let points = data.normalized_points();
    let n = points.len() as f64;
    let x_bar = points.iter().map(|p| p.x).sum::<f64>() / n;
    let y_bar = points.iter().map(|p| p.y).sum::<f64>() / n;

    let start = frame.natural_forward(&init);
    let mut circle = NaturalCircle {
        r: mean_distance(&points, start.a, start.b),
        ..start
    };
    let mut f = natural_objective(&points, &circle);
    let mut trace = vec![natural_trace_point(&frame, &circle, f)];
    let cap = opts.iteration_cap(IterativeMethod::Landau);
    let mut iterations = 0;

    let status = loop {
        if iterations >= cap {
            break FitStatus::MaxIterations;
        }
        let (mut sum_cos, mut sum_sin) = (0.0, 0.0);
        for p in &points {
            let (dx, dy) = (circle.a - p.x, circle.b - p.y);
            let r = dx.hypot(dy);
            if r > 0.0 {
                sum_cos += dx / r;
                sum_sin += dy / r;
            }
        }
        let a = x_bar + circle.r * sum_cos / n;
        let b = y_bar + circle.r * sum_sin / n;
        let next = NaturalCircle {
            a,
            b,
            r: mean_distance(&points, a, b),
        };
        if !(next.a.is_finite() && next.b.is_finite() && next.r > 0.0) {
            break FitStatus::Stalled;
        }
        let f_new = natural_objective(&points, &next);
        let step = (next.a - circle.a)
            .hypot(next.b - circle.b)
            .hypot(next.r - circle.r);
        let f_old = f;
        circle = next;
        f = f_new;
        iterations += 1;
        trace.push(natural_trace_point(&frame, &circle, f));
        if circle.a.hypot(circle.b) > opts.divergence_radius_factor {
            break FitStatus::Diverged;
        }
        if is_converged(step, f_old, f_new, opts) {
            break FitStatus::Converged;
        }
    };

    Ok(FitOutcome {
        method: IterativeMethod::Landau,
        result: GeneralizedCircle::Circle(frame.natural_back(&circle)),
        objective: f * frame.scale * frame.scale,
        status,
        iterations,
        trace,
        origin_shifts: 0,
    })
}
