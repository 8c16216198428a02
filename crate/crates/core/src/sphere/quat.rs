use super::RotMat;
use crate::error::{LcError, Result};
use nalgebra::{Quaternion, Rotation3, UnitQuaternion};
use serde::{Deserialize, Serialize};

/// Unit quaternion w + x i + y j + z k.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitQuat {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl UnitQuat {
    pub const ONE: UnitQuat = UnitQuat { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        let n = (w * w + x * x + y * y + z * z).sqrt();
        UnitQuat { w: w / n, x: x / n, y: y / n, z: z / n }
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn neg(&self) -> UnitQuat {
        UnitQuat { w: -self.w, x: -self.x, y: -self.y, z: -self.z }
    }

    pub fn conj(&self) -> UnitQuat {
        UnitQuat { w: self.w, x: -self.x, y: -self.y, z: -self.z }
    }

    pub fn dot(&self, o: &UnitQuat) -> f64 {
        self.w * o.w + self.x * o.x + self.y * o.y + self.z * o.z
    }

    /// Euclidean distance in ℝ⁴.
    pub fn dist(&self, o: &UnitQuat) -> f64 {
        let d = [self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z];
        d.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn mul(&self, o: &UnitQuat) -> UnitQuat {
        let (a, b) = (self.to_na(), o.to_na());
        UnitQuat::from_na(&(a * b))
    }

    /// The covering projection Π: S³ → SO(3).
    pub fn to_rot(&self) -> RotMat {
        UnitQuaternion::new_unchecked(self.to_na()).to_rotation_matrix().into_inner()
    }

    fn to_na(self) -> Quaternion<f64> {
        Quaternion::new(self.w, self.x, self.y, self.z)
    }

    fn from_na(q: &Quaternion<f64>) -> UnitQuat {
        UnitQuat { w: q.w, x: q.i, y: q.j, z: q.k }
    }
}

/// Preimage of R under Π with w ≥ 0; when w = 0 the first nonzero of (x, y, z) is positive.
pub fn rot_to_quat(r: &RotMat) -> Result<UnitQuat> {
    let residual = (r.transpose() * r - RotMat::identity()).abs().max();
    if !(residual <= 1e-6) || r.determinant() < 0.0 {
        return Err(LcError::NotARotation { residual: residual.max((r.determinant() - 1.0).abs()) });
    }
    let uq = UnitQuaternion::from_rotation_matrix(&Rotation3::from_matrix_unchecked(*r));
    let q = UnitQuat::from_na(uq.quaternion());
    let flip = if q.w.abs() > 1e-14 {
        q.w < 0.0
    } else {
        let lead = [q.x, q.y, q.z].into_iter().find(|c| c.abs() > 1e-14).unwrap_or(1.0);
        lead < 0.0
    };
    Ok(if flip { q.neg() } else { q })
}
