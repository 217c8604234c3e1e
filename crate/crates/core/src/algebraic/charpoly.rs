//! Characteristic polynomials `Q(η) = det(M - ηN)` for the Pratt and Taubin
//! constraints, the Newton solver for their smallest nonnegative root, and
//! extraction of the corresponding generalized eigenvector.

use serde::{Deserialize, Serialize};

use super::moments::MomentMatrix;
use crate::error::{Error, Result};
use crate::geometry::AlgebraicCircle;
use crate::linalg::{self, Mat4};

/// Newton iterations allowed before giving up.
pub const NEWTON_MAX_STEPS: usize = 50;
/// Relative step size `|Δη| ≤ tol·(1 + η)` at which Newton stops.
pub const NEWTON_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConstraintKind {
    Pratt,
    Taubin,
}

/// Quadratic form `N` of the normalization `vᵀ N v = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstraintMatrix {
    pub kind: ConstraintKind,
    pub matrix: Mat4,
}

impl ConstraintMatrix {
    /// `B² + C² - 4AD`.
    pub fn pratt() -> Self {
        Self {
            kind: ConstraintKind::Pratt,
            matrix: [
                [0.0, 0.0, 0.0, -2.0],
                [0.0, 1.0, 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0],
                [-2.0, 0.0, 0.0, 0.0],
            ],
        }
    }

    /// `4A² Mz + 4AB Mx + 4AC My + n(B² + C²)`, the data-averaged squared
    /// gradient norm.
    pub fn taubin(m: &MomentMatrix) -> Self {
        Self {
            kind: ConstraintKind::Taubin,
            matrix: [
                [4.0 * m.z, 2.0 * m.x, 2.0 * m.y, 0.0],
                [2.0 * m.x, m.n, 0.0, 0.0],
                [2.0 * m.y, 0.0, m.n, 0.0],
                [0.0, 0.0, 0.0, 0.0],
            ],
        }
    }

    pub fn quad_form(&self, v: &[f64; 4]) -> f64 {
        linalg::quad_form4(&self.matrix, v)
    }
}

/// Polynomial with coefficients stored highest degree first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharPoly {
    pub coeffs: Vec<f64>,
}

impl CharPoly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.first().copied().unwrap_or(0.0)
    }

    pub fn eval(&self, eta: f64) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, c| acc * eta + c)
    }

    /// Value and first derivative by Horner's scheme.
    pub fn eval_with_derivative(&self, eta: f64) -> (f64, f64) {
        let mut q = 0.0;
        let mut dq = 0.0;
        for c in &self.coeffs {
            dq = dq * eta + q;
            q = q * eta + c;
        }
        (q, dq)
    }
}

/// `det(M)` expanded in the ten moment entries.
fn det_moments(m: &MomentMatrix) -> f64 {
    let MomentMatrix {
        zz,
        xz,
        yz,
        z,
        xx,
        xy,
        x,
        yy,
        y,
        n,
    } = *m;
    n * (xx * yy * zz - xx * yz * yz - xy * xy * zz + 2.0 * xy * xz * yz - xz * xz * yy)
        - x * x * (yy * zz - yz * yz)
        + 2.0 * x * y * (xy * zz - xz * yz)
        - y * y * (xx * zz - xz * xz)
        - z * z * (xx * yy - xy * xy)
        + 2.0 * x * z * (xz * yy - xy * yz)
        + 2.0 * y * z * (xx * yz - xy * xz)
}

/// Coefficient of `η` in `det(M - ηB)`; the Taubin one is `n` times this.
fn linear_coefficient(m: &MomentMatrix) -> f64 {
    let MomentMatrix {
        zz,
        xz,
        yz,
        z,
        xx,
        xy,
        x,
        yy,
        y,
        n,
    } = *m;
    n * (xz * xz + yz * yz - (xx + yy) * zz) + (x * x + y * y) * zz
        - 4.0 * xy * (x * yz + y * xz)
        + 4.0 * (x * xz * yy + xx * y * yz)
        - 2.0 * z * (x * xz + y * yz)
        + (xx + yy) * z * z
        + 4.0 * z * (xy * xy - xx * yy)
}

/// Quartic `Q₄(η) = det(M - ηB)` for the constraint `B² + C² - 4AD = 1`.
pub fn build_pratt_poly(m: &MomentMatrix) -> CharPoly {
    let MomentMatrix {
        zz,
        xz,
        z,
        xx,
        xy,
        x,
        yy,
        y,
        yz,
        n,
    } = *m;
    let c4 = -4.0;
    let c3 = 4.0 * (xx + yy - z);
    let c2 = n * zz - 4.0 * (x * xz + y * yz) + 4.0 * (xx + yy) * z
        + 4.0 * (xy * xy - xx * yy)
        - z * z;
    CharPoly::new(vec![c4, c3, c2, linear_coefficient(m), det_moments(m)])
}

/// Cubic `Q₃(η) = det(M - ηC)` for the Taubin constraint.
pub fn build_taubin_poly(m: &MomentMatrix) -> CharPoly {
    let MomentMatrix {
        zz,
        xz,
        yz,
        z,
        xx,
        xy,
        x,
        yy,
        y,
        n,
    } = *m;
    let c3 = 4.0 * n * n * (x * x + y * y - n * z);
    let c2 = n
        * (n * n * zz - 4.0 * n * (x * xz + y * yz) + 4.0 * n * (xx + yy) * z
            - n * z * z
            - 4.0 * (x * x * yy - 2.0 * x * xy * y + xx * y * y));
    CharPoly::new(vec![c3, c2, n * linear_coefficient(m), det_moments(m)])
}

/// Outcome of [`newton_smallest_root`].
#[derive(Clone, Debug, PartialEq)]
pub struct NewtonRoot {
    pub eta: f64,
    /// Newton updates taken from `η = 0`.
    pub steps: usize,
    /// `(η_k, Q(η_k))` for `k = 0..=steps`.
    pub iterates: Vec<(f64, f64)>,
    /// Whether the round-off bisection fallback was used.
    pub bisected: bool,
}

/// Smallest nonnegative root of a characteristic polynomial whose leading
/// coefficient is negative and `Q(0) ≥ 0`.
///
/// Newton from `η = 0` increases monotonically to the root because `Q` is
/// decreasing and convex on `[0, η*]`. If round-off makes an iterate land
/// past the root, the last bracket is bisected instead.
pub fn newton_smallest_root(q: &CharPoly) -> Result<NewtonRoot> {
    let (mut q_val, mut dq) = q.eval_with_derivative(0.0);
    let mut eta = 0.0;
    let mut iterates = vec![(0.0, q_val)];
    if q_val <= 0.0 {
        return Ok(NewtonRoot {
            eta: 0.0,
            steps: 0,
            iterates,
            bisected: false,
        });
    }

    for step in 1..=NEWTON_MAX_STEPS {
        if !(dq < 0.0) {
            return Err(Error::NoConvergence { steps: step - 1 });
        }
        let next = eta - q_val / dq;
        let (q_next, dq_next) = q.eval_with_derivative(next);
        if q_next < 0.0 {
            let root = bisect(q, eta, next);
            iterates.push((root, q.eval(root)));
            return Ok(NewtonRoot {
                eta: root,
                steps: step,
                iterates,
                bisected: true,
            });
        }
        let done = (next - eta).abs() <= NEWTON_TOLERANCE * (1.0 + next) || q_next == 0.0;
        eta = next;
        q_val = q_next;
        dq = dq_next;
        iterates.push((eta, q_val));
        if done {
            return Ok(NewtonRoot {
                eta,
                steps: step,
                iterates,
                bisected: false,
            });
        }
    }
    Err(Error::NoConvergence {
        steps: NEWTON_MAX_STEPS,
    })
}

/// `Q(lo) > 0 > Q(hi)`.
fn bisect(q: &CharPoly, mut lo: f64, mut hi: f64) -> f64 {
    while hi - lo > NEWTON_TOLERANCE * (1.0 + hi.abs()) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if q.eval(mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `vᵀ M v / vᵀ N v`: the constrained algebraic objective at `v`.
pub fn constrained_objective(m: &MomentMatrix, constraint: &ConstraintMatrix, v: &AlgebraicCircle) -> f64 {
    let arr = v.as_array();
    linalg::quad_form4(&m.matrix(), &arr) / constraint.quad_form(&arr)
}

/// Null direction of `M - η N`, scaled so that `vᵀ N v = 1` and then
/// renormalized to `B² + C² - 4AD = 1`.
///
/// The direction is the largest column of the adjugate of `M - ηN`, refined
/// by two steps of inverse iteration with a shift of `1e-12·trace`.
pub fn recover_parameters(
    m: &MomentMatrix,
    constraint: &ConstraintMatrix,
    eta: f64,
) -> Result<AlgebraicCircle> {
    let mm = m.matrix();
    let mut k = mm;
    for (i, row) in k.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v -= eta * constraint.matrix[i][j];
        }
    }
    let k_norm = linalg::frobenius4(&k);
    if !(k_norm > 0.0) || !k_norm.is_finite() {
        return Err(Error::IllConditioned);
    }

    let mut v = (0..4)
        .map(|j| linalg::adjugate_column(&k, j))
        .max_by(|a, b| linalg::norm4(a).total_cmp(&linalg::norm4(b)))
        .unwrap();
    let adj_norm = linalg::norm4(&v);
    if !(adj_norm > 1e-15 * k_norm.powi(3)) {
        return Err(Error::IllConditioned);
    }
    v.iter_mut().for_each(|c| *c /= adj_norm);

    let shift = 1e-12 * k.iter().enumerate().map(|(i, r)| r[i].abs()).sum::<f64>();
    let mut shifted = k;
    for (i, row) in shifted.iter_mut().enumerate() {
        row[i] += shift;
    }
    for _ in 0..2 {
        let Some(w) = linalg::solve(shifted, v, 0.0) else {
            break;
        };
        let w_norm = linalg::norm4(&w);
        if !(w_norm > 0.0 && w_norm.is_finite()) {
            break;
        }
        let candidate = w.map(|c| c / w_norm);
        if residual(&k, &candidate) <= residual(&k, &v) {
            v = candidate;
        } else {
            break;
        }
    }

    if residual(&k, &v) > 1e-8 * linalg::frobenius4(&mm) {
        return Err(Error::IllConditioned);
    }
    let norm_sq = constraint.quad_form(&v);
    if !(norm_sq > 0.0) {
        return Err(Error::IllConditioned);
    }
    let scaled = v.map(|c| c / norm_sq.sqrt());
    AlgebraicCircle::from_array(scaled).normalize()
}

fn residual(k: &Mat4, v: &[f64; 4]) -> f64 {
    linalg::norm4(&linalg::mat_vec4(k, v))
}
