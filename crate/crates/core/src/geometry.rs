//! Domain types for circles and lines, the conversions between the natural
//! `(a, b, R)` and algebraic `(A, B, C, D)` parametrizations, and the
//! least-squares objective `F = Σ d_i²`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative threshold on `|A| / (B² + C²)` below which an algebraic circle
/// is reported as a line.
pub const LINE_THRESHOLD: f64 = 1e-12;

/// Slack allowed on `1 + 4AP` before the algebraic distance is declared
/// singular. Values in `[-SLACK, 0]` are clamped to zero.
pub const SQRT_ARG_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// `x² + y²`
    pub fn z(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Self { x, y }
    }
}

/// An ordered sample of points with its centroid and diameter cached.
#[derive(Clone, Debug, PartialEq)]
pub struct DataSet {
    points: Vec<Point>,
    centroid: Point,
    d_max: f64,
}

impl DataSet {
    /// Rejects empty input, non-finite coordinates and fully coincident points.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::TooFewPoints {
                required: 1,
                got: 0,
            });
        }
        if let Some(index) = points
            .iter()
            .position(|p| !(p.x.is_finite() && p.y.is_finite()))
        {
            return Err(Error::NonFinite { index });
        }
        let n = points.len() as f64;
        let centroid = Point::new(
            points.iter().map(|p| p.x).sum::<f64>() / n,
            points.iter().map(|p| p.y).sum::<f64>() / n,
        );
        let d_max = diameter(&points);
        if d_max == 0.0 {
            return Err(Error::CoincidentPoints);
        }
        Ok(Self {
            points,
            centroid,
            d_max,
        })
    }

    pub fn from_xy(coords: &[(f64, f64)]) -> Result<Self> {
        Self::new(coords.iter().copied().map(Point::from).collect())
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn centroid(&self) -> Point {
        self.centroid
    }

    /// Largest pairwise distance between data points.
    pub fn d_max(&self) -> f64 {
        self.d_max
    }

    pub(crate) fn require_points(&self, required: usize) -> Result<()> {
        if self.len() < required {
            return Err(Error::TooFewPoints {
                required,
                got: self.len(),
            });
        }
        Ok(())
    }

    /// Points mapped into the frame centered at the centroid and scaled by
    /// `1 / d_max`. All fitters work in this frame.
    pub(crate) fn normalized_points(&self) -> Vec<Point> {
        let frame = Frame::of(self);
        self.points.iter().map(|p| frame.forward(p)).collect()
    }
}

/// Largest pairwise distance. The farthest pair lies on the convex hull, so
/// only hull vertices are compared.
fn diameter(points: &[Point]) -> f64 {
    let hull = convex_hull(points);
    let mut best = 0.0_f64;
    for (i, p) in hull.iter().enumerate() {
        for q in &hull[i + 1..] {
            best = best.max(p.distance(q));
        }
    }
    best
}

/// Andrew's monotone chain; collinear points are dropped.
fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_by(|p, q| p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: &Point, a: &Point, b: &Point| (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for p in iter {
            while hull.len() >= start + 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(*p);
        }
        hull.pop();
    }
    hull
}

/// Similarity transform `p' = (p - origin) / scale`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Frame {
    pub origin: Point,
    pub scale: f64,
}

impl Frame {
    pub fn of(data: &DataSet) -> Self {
        Self {
            origin: data.centroid(),
            scale: data.d_max(),
        }
    }

    pub fn forward(&self, p: &Point) -> Point {
        Point::new(
            (p.x - self.origin.x) / self.scale,
            (p.y - self.origin.y) / self.scale,
        )
    }

    pub fn natural_forward(&self, c: &NaturalCircle) -> NaturalCircle {
        NaturalCircle {
            a: (c.a - self.origin.x) / self.scale,
            b: (c.b - self.origin.y) / self.scale,
            r: c.r / self.scale,
        }
    }

    pub fn natural_back(&self, c: &NaturalCircle) -> NaturalCircle {
        NaturalCircle {
            a: c.a * self.scale + self.origin.x,
            b: c.b * self.scale + self.origin.y,
            r: c.r * self.scale,
        }
    }

    /// Algebraic coefficients of the same locus expressed in frame coordinates.
    pub fn algebraic_forward(&self, c: &AlgebraicCircle) -> AlgebraicCircle {
        c.translated(-self.origin.x, -self.origin.y)
            .scaled(1.0 / self.scale)
    }

    pub fn algebraic_back(&self, c: &AlgebraicCircle) -> AlgebraicCircle {
        c.scaled(self.scale)
            .translated(self.origin.x, self.origin.y)
    }
}

/// Circle with center `(a, b)` and radius `r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NaturalCircle {
    pub a: f64,
    pub b: f64,
    pub r: f64,
}

impl NaturalCircle {
    pub fn new(a: f64, b: f64, r: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && r.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "non-finite circle ({a}, {b}, {r})"
            )));
        }
        if r <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "radius must be positive, got {r}"
            )));
        }
        Ok(Self { a, b, r })
    }

    pub fn center(&self) -> Point {
        Point::new(self.a, self.b)
    }

    /// `r_i - R`; negative inside the circle.
    pub fn signed_distance(&self, p: &Point) -> f64 {
        (p.x - self.a).hypot(p.y - self.b) - self.r
    }

    /// Algebraic coefficients with `A = sign / 2R`. Both signs describe the
    /// same circle.
    pub fn to_algebraic(&self, sign: f64) -> AlgebraicCircle {
        let a_coef = sign.signum() / (2.0 * self.r);
        let b_coef = -2.0 * a_coef * self.a;
        let c_coef = -2.0 * a_coef * self.b;
        // (B² + C² - 1) / 4A rewritten as A(a² + b² - R²) to avoid dividing by A.
        let d_coef = a_coef * ((self.a - self.r) * (self.a + self.r) + self.b * self.b);
        AlgebraicCircle {
            a: a_coef,
            b: b_coef,
            c: c_coef,
            d: d_coef,
        }
    }
}

/// Line `b x + c y + d = 0` with unit normal `(b, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Line {
    /// Normalizes `(b, c)` to unit length.
    pub fn new(b: f64, c: f64, d: f64) -> Result<Self> {
        let norm = b.hypot(c);
        if !(norm > 0.0 && norm.is_finite() && d.is_finite()) {
            return Err(Error::DegenerateCircle {
                discriminant: norm * norm,
            });
        }
        Ok(Self {
            b: b / norm,
            c: c / norm,
            d: d / norm,
        })
    }

    pub fn signed_distance(&self, p: &Point) -> f64 {
        self.b * p.x + self.c * p.y + self.d
    }

    pub fn to_algebraic(&self) -> AlgebraicCircle {
        AlgebraicCircle {
            a: 0.0,
            b: self.b,
            c: self.c,
            d: self.d,
        }
    }
}

/// Coefficients of `A(x² + y²) + Bx + Cy + D = 0`, stored lowercase.
///
/// The locus is a circle when `A ≠ 0` and a line when `A = 0`; it is
/// nonempty iff `B² + C² - 4AD > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraicCircle {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl AlgebraicCircle {
    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn from_array(v: [f64; 4]) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }

    /// `B² + C² - 4AD`
    pub fn discriminant(&self) -> f64 {
        self.b * self.b + self.c * self.c - 4.0 * self.a * self.d
    }

    /// `P = A z + B x + C y + D`
    pub fn value_at(&self, p: &Point) -> f64 {
        self.a * p.z() + self.b * p.x + self.c * p.y + self.d
    }

    /// Scales all coefficients so that `B² + C² - 4AD = 1`.
    pub fn normalize(&self) -> Result<Self> {
        let disc = self.discriminant();
        if !(disc > 0.0) || !disc.is_finite() {
            return Err(Error::DegenerateCircle { discriminant: disc });
        }
        let s = disc.sqrt();
        Ok(Self::new(self.a / s, self.b / s, self.c / s, self.d / s))
    }

    /// Signed distance `2P / (1 + √(1 + 4AP))`, assuming the coefficients
    /// are normalized.
    ///
    /// For `A < 0` the sign is opposite to that of the `A > 0` twin; the
    /// magnitude is the geometric distance either way.
    pub fn signed_distance(&self, p: &Point) -> Result<f64> {
        let big_p = self.value_at(p);
        let arg = 1.0 + 4.0 * self.a * big_p;
        if arg < -SQRT_ARG_SLACK {
            return Err(Error::SingularPoint { value: arg });
        }
        Ok(2.0 * big_p / (1.0 + arg.max(0.0).sqrt()))
    }

    /// Whether `|A|` is negligible against `B² + C²`.
    pub fn is_line(&self) -> bool {
        self.a.abs() < LINE_THRESHOLD * (self.b * self.b + self.c * self.c)
    }

    /// Natural parameters, or a line when `A` is negligible.
    pub fn to_natural(&self) -> Result<GeneralizedCircle> {
        let n = self.normalize()?;
        if n.is_line() {
            return Ok(GeneralizedCircle::Line(Line::new(n.b, n.c, n.d)?));
        }
        Ok(GeneralizedCircle::Circle(NaturalCircle {
            a: -n.b / (2.0 * n.a),
            b: -n.c / (2.0 * n.a),
            r: 1.0 / (2.0 * n.a.abs()),
        }))
    }

    /// Coefficients of the same locus after moving the coordinate origin to
    /// `(-dx, -dy)`, i.e. for points `p + (dx, dy)`.
    pub(crate) fn translated(&self, dx: f64, dy: f64) -> Self {
        // P(x - dx, y - dy) expanded.
        Self {
            a: self.a,
            b: self.b - 2.0 * self.a * dx,
            c: self.c - 2.0 * self.a * dy,
            d: self.a * (dx * dx + dy * dy) - self.b * dx - self.c * dy + self.d,
        }
    }

    /// Coefficients of the same locus for points `s·p`, normalized the same
    /// way (the discriminant is unchanged).
    pub(crate) fn scaled(&self, s: f64) -> Self {
        Self {
            a: self.a / s,
            b: self.b,
            c: self.c,
            d: self.d * s,
        }
    }

    /// Sign-canonical representative: `A > 0`, or for lines the first
    /// nonzero of `(B, C)` positive.
    pub(crate) fn canonical(&self) -> Self {
        let flip = if self.a != 0.0 {
            self.a < 0.0
        } else if self.b != 0.0 {
            self.b < 0.0
        } else {
            self.c < 0.0
        };
        if flip {
            Self::new(-self.a, -self.b, -self.c, -self.d)
        } else {
            *self
        }
    }
}

/// Fit result model: either a proper circle or a line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum GeneralizedCircle {
    Circle(NaturalCircle),
    Line(Line),
}

impl GeneralizedCircle {
    pub fn signed_distance(&self, p: &Point) -> f64 {
        match self {
            Self::Circle(c) => c.signed_distance(p),
            Self::Line(l) => l.signed_distance(p),
        }
    }

    /// Normalized algebraic coefficients; circles get `A > 0`.
    pub fn to_algebraic(&self) -> AlgebraicCircle {
        match self {
            Self::Circle(c) => c.to_algebraic(1.0),
            Self::Line(l) => l.to_algebraic(),
        }
    }

    pub fn as_circle(&self) -> Option<&NaturalCircle> {
        match self {
            Self::Circle(c) => Some(c),
            Self::Line(_) => None,
        }
    }

    pub fn is_line(&self) -> bool {
        matches!(self, Self::Line(_))
    }
}

impl From<NaturalCircle> for GeneralizedCircle {
    fn from(c: NaturalCircle) -> Self {
        Self::Circle(c)
    }
}

impl From<Line> for GeneralizedCircle {
    fn from(l: Line) -> Self {
        Self::Line(l)
    }
}

/// `F = Σ d_i²` over the data.
pub fn objective(c: &GeneralizedCircle, data: &DataSet) -> f64 {
    data.points()
        .iter()
        .map(|p| {
            let d = c.signed_distance(p);
            d * d
        })
        .sum()
}

/// Mean distance from `(a, b)` to the data: the radius minimizing `F` for
/// that center.
pub fn optimal_radius(data: &DataSet, a: f64, b: f64) -> f64 {
    mean_distance(data.points(), a, b)
}

pub(crate) fn mean_distance(points: &[Point], a: f64, b: f64) -> f64 {
    points
        .iter()
        .map(|p| (p.x - a).hypot(p.y - b))
        .sum::<f64>()
        / points.len() as f64
}

/// `F` with the radius eliminated: `Σ (r_i - r̄)²`.
pub fn reduced_objective(data: &DataSet, a: f64, b: f64) -> f64 {
    reduced_objective_points(data.points(), a, b)
}

pub(crate) fn reduced_objective_points(points: &[Point], a: f64, b: f64) -> f64 {
    let r_bar = mean_distance(points, a, b);
    points
        .iter()
        .map(|p| {
            let d = (p.x - a).hypot(p.y - b) - r_bar;
            d * d
        })
        .sum()
}

/// Axis-aligned rectangle in the `(a, b)` plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub a_min: f64,
    pub a_max: f64,
    pub b_min: f64,
    pub b_max: f64,
}

impl Window {
    pub fn new(a_min: f64, a_max: f64, b_min: f64, b_max: f64) -> Result<Self> {
        let finite = [a_min, a_max, b_min, b_max].iter().all(|v| v.is_finite());
        if !finite || a_min >= a_max || b_min >= b_max {
            return Err(Error::InvalidParameter(format!(
                "bad window [{a_min}, {a_max}] x [{b_min}, {b_max}]"
            )));
        }
        Ok(Self {
            a_min,
            a_max,
            b_min,
            b_max,
        })
    }
}

/// Values of the reduced objective on a regular grid, row-major with rows
/// running along `b` and columns along `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContourGrid {
    pub window: Window,
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<f64>,
}

impl ContourGrid {
    pub fn a_at(&self, col: usize) -> f64 {
        lerp(self.window.a_min, self.window.a_max, col, self.nx)
    }

    pub fn b_at(&self, row: usize) -> f64 {
        lerp(self.window.b_min, self.window.b_max, row, self.ny)
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.nx + col]
    }

    /// `(row, col)` of the smallest value.
    pub fn argmin(&self) -> (usize, usize) {
        let idx = self
            .values
            .iter()
            .enumerate()
            .min_by(|x, y| x.1.total_cmp(y.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        (idx / self.nx, idx % self.nx)
    }
}

fn lerp(lo: f64, hi: f64, i: usize, count: usize) -> f64 {
    lo + (hi - lo) * i as f64 / (count - 1) as f64
}

/// Samples [`reduced_objective`] on an `nx × ny` grid spanning `window`.
pub fn contour_grid(data: &DataSet, window: Window, nx: usize, ny: usize) -> Result<ContourGrid> {
    if nx < 2 || ny < 2 {
        return Err(Error::InvalidParameter(format!(
            "grid resolution must be at least 2x2, got {nx}x{ny}"
        )));
    }
    let mut grid = ContourGrid {
        window,
        nx,
        ny,
        values: Vec::with_capacity(nx * ny),
    };
    for row in 0..ny {
        let b = grid.b_at(row);
        for col in 0..nx {
            let a = grid.a_at(col);
            grid.values.push(reduced_objective(data, a, b));
        }
    }
    Ok(grid)
}

/// Bounds on the algebraic parameters of the best fit, expressed for the
/// data centered at its centroid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParameterBox {
    pub a_max: f64,
    pub b_max: f64,
    pub c_max: f64,
    pub d_max: f64,
}

impl ParameterBox {
    /// Whether the normalized coefficients of `c`, re-expressed relative to
    /// the data centroid, fall inside the box.
    pub fn contains(&self, data: &DataSet, c: &GeneralizedCircle) -> bool {
        let centroid = data.centroid();
        let centered = c.to_algebraic().translated(-centroid.x, -centroid.y);
        centered.a.abs() <= self.a_max
            && centered.b.abs() <= self.b_max
            && centered.c.abs() <= self.c_max
            && centered.d.abs() <= self.d_max
    }
}

/// Explicit box for the best-fitting circle or line.
///
/// The radius bound `R ≥ d_max / n` gives `|A| ≤ n / 2d_max`; the center
/// condition gives `|B|, |C| ≤ 2n` and `|D| ≤ (B_max² + C_max² + 1)·d_max / 2`.
pub fn parameter_box(data: &DataSet) -> ParameterBox {
    let n = data.len() as f64;
    let d_max = data.d_max();
    let a_max = n / (2.0 * d_max);
    let bc_max = 2.0 * n;
    ParameterBox {
        a_max,
        b_max: bc_max,
        c_max: bc_max,
        d_max: (2.0 * bc_max * bc_max + 1.0) * d_max / 2.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diameter_matches_pairwise_scan() {
        let mut state = 12345_u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64 * 8.0).round() / 4.0
        };
        for n in [2, 3, 5, 17, 60] {
            let pts: Vec<Point> = (0..n).map(|_| Point::new(next(), next())).collect();
            let mut brute = 0.0_f64;
            for p in &pts {
                for q in &pts {
                    brute = brute.max(p.distance(q));
                }
            }
            assert_eq!(diameter(&pts), brute);
        }
        let collinear: Vec<Point> = (0..7).map(|i| Point::new(i as f64, 2.0 * i as f64)).collect();
        assert_eq!(diameter(&collinear), collinear[0].distance(&collinear[6]));
    }

    fn unit4() -> DataSet {
        DataSet::from_xy(&[(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)]).unwrap()
    }

    fn square_plus_origin(k: usize) -> DataSet {
        let mut pts = vec![(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)];
        pts.extend(std::iter::repeat_n((0.0, 0.0), k));
        DataSet::from_xy(&pts).unwrap()
    }

    #[test]
    fn natural_distance_examples() {
        let c = NaturalCircle::new(0.0, 0.0, 1.0).unwrap();
        assert_eq!(c.signed_distance(&Point::new(2.0, 0.0)), 1.0);
        assert_eq!(c.signed_distance(&Point::new(0.0, 0.0)), -1.0);
        let c = NaturalCircle::new(0.5, 0.5, 0.5_f64.sqrt()).unwrap();
        assert!(c.signed_distance(&Point::new(0.0, 0.0)).abs() < 1e-15);
    }

    #[test]
    fn algebraic_distance_examples() {
        let unit = AlgebraicCircle::new(0.5, 0.0, 0.0, -0.5);
        assert!((unit.signed_distance(&Point::new(2.0, 0.0)).unwrap() - 1.0).abs() < 1e-15);
        let line = AlgebraicCircle::new(0.0, 1.0, 0.0, -3.0);
        assert_eq!(line.signed_distance(&Point::new(1.0, 0.0)).unwrap(), -2.0);
        let twin = AlgebraicCircle::new(-0.5, 0.0, 0.0, 0.5);
        assert!((twin.signed_distance(&Point::new(2.0, 0.0)).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn algebraic_distance_rejects_inconsistent_center() {
        // Unnormalized unit circle scaled by 10: at the center 1 + 4AP = 1 - 4·5·5 < 0.
        let bad = AlgebraicCircle::new(5.0, 0.0, 0.0, -5.0);
        assert!(matches!(
            bad.signed_distance(&Point::new(0.0, 0.0)),
            Err(Error::SingularPoint { .. })
        ));
        // Normalized unit circle at its center: 1 + 4AP = 0 exactly, clamped.
        let unit = AlgebraicCircle::new(0.5, 0.0, 0.0, -0.5);
        assert_eq!(unit.signed_distance(&Point::new(0.0, 0.0)).unwrap(), -1.0);
    }

    #[test]
    fn objective_examples() {
        let data = unit4();
        let c = GeneralizedCircle::Circle(NaturalCircle::new(0.0, 0.0, 1.0).unwrap());
        assert_eq!(objective(&c, &data), 0.0);

        for k in [4usize, 6, 10] {
            let data = square_plus_origin(k);
            let kf = k as f64;
            for r in [0.25, 0.5, 0.9] {
                let c = GeneralizedCircle::Circle(NaturalCircle::new(0.0, 0.0, r).unwrap());
                let want = 4.0 * (1.0 - r) * (1.0 - r) + kf * r * r;
                assert!((objective(&c, &data) - want).abs() < 1e-13);
            }
            for angle in [0.0_f64, 0.3, std::f64::consts::FRAC_PI_4] {
                let line = Line::new(angle.cos(), angle.sin(), 0.0).unwrap();
                let f = objective(&line.into(), &data);
                assert!((f - 2.0).abs() < 1e-14, "{f}");
            }
        }
    }

    #[test]
    fn optimal_radius_examples() {
        assert_eq!(optimal_radius(&square_plus_origin(4), 0.0, 0.0), 0.5);
        assert_eq!(optimal_radius(&unit4(), 0.0, 0.0), 1.0);
    }

    #[test]
    fn reduced_objective_examples() {
        for k in [4usize, 5, 8] {
            let kf = k as f64;
            let f = reduced_objective(&square_plus_origin(k), 0.0, 0.0);
            assert!((f - 4.0 * kf / (kf + 4.0)).abs() < 1e-14);
        }
        assert_eq!(reduced_objective(&unit4(), 0.0, 0.0), 0.0);
    }

    #[test]
    fn contour_grid_center_cell() {
        let data = square_plus_origin(4);
        let w = Window::new(-2.0, 2.0, -2.0, 2.0).unwrap();
        let grid = contour_grid(&data, w, 3, 3).unwrap();
        assert!((grid.get(1, 1) - 2.0).abs() < 1e-15);
        assert!(grid.values.iter().all(|v| *v >= 0.0));
        assert!(contour_grid(&data, w, 1, 3).is_err());
    }

    #[test]
    fn conversions() {
        let g = AlgebraicCircle::new(0.5, 0.0, 0.0, -0.5).to_natural().unwrap();
        assert_eq!(g, GeneralizedCircle::Circle(NaturalCircle { a: 0.0, b: 0.0, r: 1.0 }));

        let g = AlgebraicCircle::new(0.0, 1.0, 0.0, -3.0).to_natural().unwrap();
        assert_eq!(g, GeneralizedCircle::Line(Line { b: 1.0, c: 0.0, d: -3.0 }));

        // (x-1)² + (y-1)² = 3, discriminant 3
        let g = AlgebraicCircle::new(-0.5, 1.0, 1.0, 0.5).to_natural().unwrap();
        let c = g.as_circle().unwrap();
        assert!((c.a - 1.0).abs() < 1e-15 && (c.b - 1.0).abs() < 1e-15);
        assert!((c.r - 3f64.sqrt()).abs() < 1e-15);

        let alg = NaturalCircle::new(1.0, 1.0, 2.0).unwrap().to_algebraic(1.0);
        assert_eq!(alg.as_array(), [0.25, -0.5, -0.5, -0.5]);
        assert!((alg.discriminant() - 1.0).abs() < 1e-15);

        let twin = NaturalCircle::new(0.0, 0.0, 1.0).unwrap().to_algebraic(-1.0);
        assert_eq!(twin.as_array(), [-0.5, 0.0, 0.0, 0.5]);
        assert_eq!(
            twin.to_natural().unwrap(),
            GeneralizedCircle::Circle(NaturalCircle { a: 0.0, b: 0.0, r: 1.0 })
        );
    }

    #[test]
    fn normalize_examples() {
        let n = AlgebraicCircle::new(1.0, 0.0, 0.0, -1.0).normalize().unwrap();
        assert_eq!(n.as_array(), [0.5, 0.0, 0.0, -0.5]);
        let n = AlgebraicCircle::new(0.0, 2.0, 0.0, -6.0).normalize().unwrap();
        assert_eq!(n.as_array(), [0.0, 1.0, 0.0, -3.0]);
        assert!(matches!(
            AlgebraicCircle::new(1.0, 0.0, 0.0, 1.0).normalize(),
            Err(Error::DegenerateCircle { .. })
        ));
    }

    #[test]
    fn parameter_box_examples() {
        // 10 points with diameter 2
        let pts: Vec<(f64, f64)> = (0..10).map(|i| (i as f64 * 2.0 / 9.0, 0.0)).collect();
        let data = DataSet::from_xy(&pts).unwrap();
        assert!((parameter_box(&data).a_max - 2.5).abs() < 1e-15);
        let doubled: Vec<(f64, f64)> = pts.iter().map(|(x, y)| (2.0 * x, 2.0 * y)).collect();
        let data2 = DataSet::from_xy(&doubled).unwrap();
        assert!((parameter_box(&data2).a_max - 1.25).abs() < 1e-15);
    }

    #[test]
    fn frame_round_trip() {
        let data = DataSet::from_xy(&[(3.0, 4.0), (5.0, -1.0), (7.0, 2.0)]).unwrap();
        let frame = Frame::of(&data);
        let c = NaturalCircle::new(4.0, 1.0, 3.0).unwrap();
        let alg = c.to_algebraic(1.0);
        let back = frame.algebraic_back(&frame.algebraic_forward(&alg));
        for (x, y) in back.as_array().iter().zip(alg.as_array()) {
            assert!((x - y).abs() < 1e-13);
        }
        let p = Point::new(2.0, 2.0);
        let local = frame.algebraic_forward(&alg);
        let d_local = local.signed_distance(&frame.forward(&p)).unwrap() * frame.scale;
        assert!((d_local - c.signed_distance(&p)).abs() < 1e-13);
    }

    #[test]
    fn dataset_validation() {
        assert!(matches!(DataSet::new(vec![]), Err(Error::TooFewPoints { .. })));
        assert!(matches!(
            DataSet::from_xy(&[(1.0, 1.0), (1.0, 1.0)]),
            Err(Error::CoincidentPoints)
        ));
        assert!(matches!(
            DataSet::from_xy(&[(1.0, f64::NAN), (0.0, 1.0)]),
            Err(Error::NonFinite { index: 0 })
        ));
        let data = DataSet::from_xy(&[(0.0, 0.0), (3.0, 0.0), (0.0, 4.0)]).unwrap();
        assert_eq!(data.d_max(), 5.0);
        assert!((data.centroid().x - 1.0).abs() < 1e-15);
    }
}
