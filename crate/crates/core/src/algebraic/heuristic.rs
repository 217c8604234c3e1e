//! Quick non-algebraic prefits: the max-area triangle (TRI) and the
//! centroid-centered circle (CEN).

use super::{PrefitMethod, PrefitResult};
use crate::error::{Error, Result};
use crate::geometry::{optimal_radius, DataSet, Frame, GeneralizedCircle, NaturalCircle, Point};

/// Above this size TRI switches from the exhaustive triple scan to the
/// farthest-pair heuristic.
pub const TRI_EXACT_LIMIT: usize = 50;

fn doubled_area(p: &Point, q: &Point, r: &Point) -> f64 {
    ((q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)).abs()
}

/// Circle through three points, `None` when they are collinear.
pub(crate) fn circumcircle(p: &Point, q: &Point, r: &Point) -> Option<NaturalCircle> {
    let (bx, by) = (q.x - p.x, q.y - p.y);
    let (cx, cy) = (r.x - p.x, r.y - p.y);
    let d = 2.0 * (bx * cy - by * cx);
    if d == 0.0 {
        return None;
    }
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let ux = (cy * b2 - by * c2) / d;
    let uy = (bx * c2 - cx * b2) / d;
    let circle = NaturalCircle {
        a: p.x + ux,
        b: p.y + uy,
        r: ux.hypot(uy),
    };
    (circle.r.is_finite() && circle.r > 0.0).then_some(circle)
}

fn max_area_triple(pts: &[Point]) -> (usize, usize, usize, f64) {
    if pts.len() <= TRI_EXACT_LIMIT {
        let mut best = (0, 1, 2, -1.0);
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    let area = doubled_area(&pts[i], &pts[j], &pts[k]);
                    if area > best.3 {
                        best = (i, j, k, area);
                    }
                }
            }
        }
        return best;
    }
    // farthest pair, then the point farthest from the line through it
    let mut pair = (0, 1, -1.0);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = pts[i].distance(&pts[j]);
            if d > pair.2 {
                pair = (i, j, d);
            }
        }
    }
    let (i, j, _) = pair;
    let (k, area) = (0..pts.len())
        .map(|k| (k, doubled_area(&pts[i], &pts[j], &pts[k])))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    (i, j, k, area)
}

/// Interpolating circle of the three points spanning the largest triangle.
pub fn prefit_tri(data: &DataSet) -> Result<PrefitResult> {
    data.require_points(3)?;
    let frame = Frame::of(data);
    let pts = data.normalized_points();
    let (i, j, k, doubled) = max_area_triple(&pts);
    // frame coordinates have d_max = 1
    if doubled / 2.0 < 1e-12 {
        return Err(Error::CollinearData);
    }
    let local = circumcircle(&pts[i], &pts[j], &pts[k]).ok_or(Error::CollinearData)?;
    Ok(PrefitResult {
        estimate: GeneralizedCircle::Circle(frame.natural_back(&local)),
        method: PrefitMethod::Tri,
        newton_steps: 0,
    })
}

/// Center at the centroid, radius the mean distance to it.
pub fn prefit_cen(data: &DataSet) -> Result<PrefitResult> {
    let c = data.centroid();
    let r = optimal_radius(data, c.x, c.y);
    Ok(PrefitResult {
        estimate: GeneralizedCircle::Circle(NaturalCircle::new(c.x, c.y, r)?),
        method: PrefitMethod::Cen,
        newton_steps: 0,
    })
}
