use serde::{Deserialize, Serialize};

use crate::geometry::{DataSet, Point};
use crate::linalg::Mat4;

/// Power sums of the data, the ten distinct entries of the symmetric matrix
///
/// ```text
/// | Mzz Mxz Myz Mz |
/// | Mxz Mxx Mxy Mx |
/// | Myz Mxy Myy My |
/// | Mz  Mx  My  n  |
/// ```
///
/// with `z = x² + y²`, so that `Σ (A z + B x + C y + D)² = vᵀ M v`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MomentMatrix {
    pub zz: f64,
    pub xz: f64,
    pub yz: f64,
    pub z: f64,
    pub xx: f64,
    pub xy: f64,
    pub x: f64,
    pub yy: f64,
    pub y: f64,
    pub n: f64,
}

impl MomentMatrix {
    pub fn from_points(points: &[Point]) -> Self {
        let mut m = Self::default();
        for p in points {
            let z = p.z();
            m.zz += z * z;
            m.xz += p.x * z;
            m.yz += p.y * z;
            m.z += z;
            m.xx += p.x * p.x;
            m.xy += p.x * p.y;
            m.x += p.x;
            m.yy += p.y * p.y;
            m.y += p.y;
        }
        m.n = points.len() as f64;
        m
    }

    pub fn matrix(&self) -> Mat4 {
        [
            [self.zz, self.xz, self.yz, self.z],
            [self.xz, self.xx, self.xy, self.x],
            [self.yz, self.xy, self.yy, self.y],
            [self.z, self.x, self.y, self.n],
        ]
    }
}

/// Moments of the data in its own coordinates (no centering).
pub fn moments(data: &DataSet) -> MomentMatrix {
    MomentMatrix::from_points(data.points())
}
