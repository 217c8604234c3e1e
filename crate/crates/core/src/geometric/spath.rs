use super::{is_converged, natural_objective, natural_trace_point, FitOptions, FitOutcome, FitStatus, IterativeMethod};
use crate::error::{Error, Result};
use crate::geometry::{DataSet, Frame, GeneralizedCircle, NaturalCircle};
use crate::linalg;

/// Späth's alternating minimization.
///
/// With foot angles `φ_i` fixed, `Σ |p_i - (a, b) - R(cos φ_i, sin φ_i)|²`
/// is linear least squares in `(a, b, R)`; since `|u_i| = 1` its normal
/// equations are
///
/// ```text
/// | n    0    Σcx | |a|   | Σx     |
/// | 0    n    Σcy | |b| = | Σy     |
/// | Σcx  Σcy  n   | |R|   | Σ p·u  |
/// ```
///
/// Re-choosing `φ_i` as the direction from the center to `p_i` then gives the
/// nearest point on the circle, so `F` never increases.
pub fn fit_spath(data: &DataSet, init: &NaturalCircle, opts: &FitOptions) -> Result<FitOutcome> {
    opts.validate()?;
    data.require_points(3)?;
    let init = NaturalCircle::new(init.a, init.b, init.r)?;
    let frame = Frame::of(data);
    let points = data.normalized_points();
    let n = points.len() as f64;
    let sum_x: f64 = points.iter().map(|p| p.x).sum();
    let sum_y: f64 = points.iter().map(|p| p.y).sum();

    let mut circle = frame.natural_forward(&init);
    let mut f = natural_objective(&points, &circle);
    let mut trace = vec![natural_trace_point(&frame, &circle, f)];
    let cap = opts.iteration_cap(IterativeMethod::Spath);
    let mut iterations = 0;

    let status = loop {
        if iterations >= cap {
            break FitStatus::MaxIterations;
        }
        // A point sitting on the center has no foot direction: nudge the center.
        if points
            .iter()
            .any(|p| (p.x - circle.a).hypot(p.y - circle.b) == 0.0)
        {
            circle.a += 1e-9;
            circle.b += 1e-9;
        }
        let (mut scx, mut scy, mut spu) = (0.0, 0.0, 0.0);
        for p in &points {
            let (dx, dy) = (p.x - circle.a, p.y - circle.b);
            let r = dx.hypot(dy);
            let (cx, cy) = (dx / r, dy / r);
            scx += cx;
            scy += cy;
            spu += p.x * cx + p.y * cy;
        }
        let normal = [[n, 0.0, scx], [0.0, n, scy], [scx, scy, n]];
        let Some([a, b, r]) = linalg::solve(normal, [sum_x, sum_y, spu], 1e-14) else {
            // feet all on one ray: the data are seen as a single direction
            break FitStatus::Stalled;
        };
        // |R| keeps the feet on the circle of that radius, so F still drops.
        let next = NaturalCircle { a, b, r: r.abs() };
        if !(next.r > 0.0) {
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

    let result = NaturalCircle::new(circle.a, circle.b, circle.r).map_err(|_| Error::SingularSystem)?;
    Ok(FitOutcome {
        method: IterativeMethod::Spath,
        result: GeneralizedCircle::Circle(frame.natural_back(&result)),
        objective: f * frame.scale * frame.scale,
        status,
        iterations,
        trace,
        origin_shifts: 0,
    })
}
