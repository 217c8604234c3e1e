//! Noniterative fits: Kåsa (AF1), Pratt (AF2), Taubin (AF3), and the TRI and
//! CEN heuristics used as prefits for the iterative schemes.
//!
//! All fits work on the data mapped to its centroid frame scaled by `d_max`
//! and map the result back.

mod charpoly;
mod heuristic;
mod moments;

use serde::{Deserialize, Serialize};

pub use charpoly::{
    build_pratt_poly, build_taubin_poly, constrained_objective, newton_smallest_root,
    recover_parameters, CharPoly, ConstraintKind, ConstraintMatrix, NewtonRoot,
    NEWTON_MAX_STEPS, NEWTON_TOLERANCE,
};
pub use heuristic::{prefit_cen, prefit_tri, TRI_EXACT_LIMIT};
pub use moments::{moments, MomentMatrix};

use crate::error::{Error, Result};
use crate::geometry::{DataSet, Frame, GeneralizedCircle, NaturalCircle};
use crate::linalg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PrefitMethod {
    Af1,
    Af2,
    Af3,
    Tri,
    Cen,
}

impl PrefitMethod {
    pub const ALL: [PrefitMethod; 5] = [Self::Af1, Self::Af2, Self::Af3, Self::Tri, Self::Cen];

    pub fn label(&self) -> &'static str {
        match self {
            Self::Af1 => "AF1",
            Self::Af2 => "AF2",
            Self::Af3 => "AF3",
            Self::Tri => "TRI",
            Self::Cen => "CEN",
        }
    }

    /// Analytic flop count for `n` points and `steps` Newton steps.
    ///
    /// AF1/AF2/AF3 use the published constants. TRI counts six flops per
    /// candidate triangle (or per farthest-pair/third-point candidate above
    /// [`TRI_EXACT_LIMIT`]) plus 30 for the interpolating circle; CEN counts
    /// two flops per point for the centroid and seven for the mean radius.
    pub fn flops(&self, n: usize, steps: usize) -> f64 {
        let n_f = n as f64;
        let m = steps as f64;
        match self {
            Self::Af1 => 13.0 * n_f + 31.0,
            Self::Af2 => 16.0 * n_f + 16.0 * m + 80.0,
            Self::Af3 => 16.0 * n_f + 14.0 * m + 40.0,
            Self::Tri => {
                let candidates = if n <= TRI_EXACT_LIMIT {
                    n_f * (n_f - 1.0) * (n_f - 2.0) / 6.0
                } else {
                    n_f * (n_f - 1.0) / 2.0 + n_f
                };
                6.0 * candidates + 30.0
            }
            Self::Cen => 9.0 * n_f + 3.0,
        }
    }

    pub fn run(&self, data: &DataSet) -> Result<PrefitResult> {
        match self {
            Self::Af1 => fit_af1(data),
            Self::Af2 => fit_af2(data),
            Self::Af3 => fit_af3(data),
            Self::Tri => prefit_tri(data),
            Self::Cen => prefit_cen(data),
        }
    }
}

impl std::str::FromStr for PrefitMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown prefit method {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrefitResult {
    pub estimate: GeneralizedCircle,
    pub method: PrefitMethod,
    pub newton_steps: usize,
}

impl PrefitResult {
    pub fn flops(&self, n: usize) -> f64 {
        self.method.flops(n, self.newton_steps)
    }
}

/// Kåsa fit: minimizes `Σ (z_i + B x_i + C y_i + D)²`, a linear problem.
///
/// Cannot represent lines; collinear data give [`Error::SingularSystem`].
pub fn fit_af1(data: &DataSet) -> Result<PrefitResult> {
    data.require_points(3)?;
    let frame = Frame::of(data);
    let m = MomentMatrix::from_points(&data.normalized_points());
    let normal = [[m.xx, m.xy, m.x], [m.xy, m.yy, m.y], [m.x, m.y, m.n]];
    let [b, c, d] =
        linalg::solve(normal, [-m.xz, -m.yz, -m.z], 1e-12).ok_or(Error::SingularSystem)?;
    let a = -b / 2.0;
    let bb = -c / 2.0;
    let r2 = a * a + bb * bb - d;
    if !(r2 > 0.0) {
        return Err(Error::SingularSystem);
    }
    let local = NaturalCircle { a, b: bb, r: r2.sqrt() };
    Ok(PrefitResult {
        estimate: GeneralizedCircle::Circle(frame.natural_back(&local)),
        method: PrefitMethod::Af1,
        newton_steps: 0,
    })
}

fn constrained_fit(data: &DataSet, kind: ConstraintKind) -> Result<PrefitResult> {
    data.require_points(3)?;
    let frame = Frame::of(data);
    let m = MomentMatrix::from_points(&data.normalized_points());
    let (poly, constraint, method) = match kind {
        ConstraintKind::Pratt => (build_pratt_poly(&m), ConstraintMatrix::pratt(), PrefitMethod::Af2),
        ConstraintKind::Taubin => (build_taubin_poly(&m), ConstraintMatrix::taubin(&m), PrefitMethod::Af3),
    };
    let root = newton_smallest_root(&poly)?;
    let local = recover_parameters(&m, &constraint, root.eta)?;
    let estimate = frame.algebraic_back(&local).normalize()?.to_natural()?;
    Ok(PrefitResult {
        estimate,
        method,
        newton_steps: root.steps,
    })
}

/// Pratt fit: minimizes `Σ P_i²` subject to `B² + C² - 4AD = 1`.
pub fn fit_af2(data: &DataSet) -> Result<PrefitResult> {
    constrained_fit(data, ConstraintKind::Pratt)
}

/// Taubin fit: minimizes `Σ P_i²` subject to the averaged gradient
/// normalization.
pub fn fit_af3(data: &DataSet) -> Result<PrefitResult> {
    constrained_fit(data, ConstraintKind::Taubin)
}
