//! Elementary spherical geometry: jets, Frenet frames, quaternions and lifts.

mod curve;
mod lift;
mod quat;
pub mod sampled;

pub use curve::{local_convexity_margin, local_convexity_margin_at, Curve, CurveMeta, Source};
pub use lift::{lift_auto, lift_frames, SampledLift, DEFAULT_SAMPLES, MAX_SAMPLES};
pub use quat::{rot_to_quat, UnitQuat};

use crate::error::{LcError, Result};
use nalgebra::{Matrix3, Unit, Vector3};

pub type Vec3 = Vector3<f64>;
pub type UnitVec3 = Unit<Vector3<f64>>;
pub type RotMat = Matrix3<f64>;

pub fn e1() -> Vec3 {
    Vec3::new(1.0, 0.0, 0.0)
}
pub fn e2() -> Vec3 {
    Vec3::new(0.0, 1.0, 0.0)
}
pub fn e3() -> Vec3 {
    Vec3::new(0.0, 0.0, 1.0)
}

/// Position, velocity and acceleration of a spherical curve at one parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveJet {
    pub p: Vec3,
    pub v: Vec3,
    pub a: Vec3,
}

impl CurveJet {
    pub fn new(p: Vec3, v: Vec3, a: Vec3) -> Self {
        CurveJet { p, v, a }
    }

    pub fn det(&self) -> f64 {
        self.p.dot(&self.v.cross(&self.a))
    }

    pub fn rotate(&self, r: &RotMat) -> CurveJet {
        CurveJet { p: r * self.p, v: r * self.v, a: r * self.a }
    }

    /// Jet of t ↦ γ(k t + c) given the jet of γ at k t + c.
    pub fn rescale(&self, k: f64) -> CurveJet {
        CurveJet { p: self.p, v: self.v * k, a: self.a * (k * k) }
    }

    pub fn matrix(&self) -> RotMat {
        RotMat::from_columns(&[self.p, self.v, self.a])
    }
}

/// Orthonormal factor Q of (p|v|a) = Q·R with R upper triangular and positive diagonal.
pub fn frenet_frame(jet: &CurveJet) -> Result<RotMat> {
    let m = jet.matrix();
    let sigma = m.singular_values().min();
    if !(sigma >= 1e-10) {
        return Err(LcError::DegenerateJet { sigma });
    }
    let q1 = jet.p.normalize();
    let q2 = (jet.v - q1 * q1.dot(&jet.v)).normalize();
    let w = jet.a - q1 * q1.dot(&jet.a) - q2 * q2.dot(&jet.a);
    let q3 = w.normalize();
    Ok(RotMat::from_columns(&[q1, q2, q3]))
}

/// Frame (p, v̂, p × v̂) of an immersion; agrees with `frenet_frame` when det(p, v, a) > 0.
pub fn immersion_frame(jet: &CurveJet) -> Result<RotMat> {
    let q1 = jet.p.normalize();
    let vp = jet.v - q1 * q1.dot(&jet.v);
    let n = vp.norm();
    if !(n > 1e-12) {
        return Err(LcError::DegenerateJet { sigma: n });
    }
    let q2 = vp / n;
    Ok(RotMat::from_columns(&[q1, q2, q1.cross(&q2)]))
}

/// Upper triangular factor of (p|v|a) with respect to a given orthonormal frame.
pub fn triangular_factor(jet: &CurveJet, q: &RotMat) -> RotMat {
    q.transpose() * jet.matrix()
}

pub fn rotation_about(axis: &Vec3, angle: f64) -> RotMat {
    nalgebra::Rotation3::from_axis_angle(&Unit::new_normalize(*axis), angle).into_inner()
}

/// Jet of α/|α| for a curve α in ℝ³∖{0} given its jet.
pub fn normalize_jet(al: &CurveJet) -> CurveJet {
    let r = al.p.norm();
    let u = al.p / r;
    let r1 = al.p.dot(&al.v) / r;
    let u1 = (al.v - u * r1) / r;
    let r2 = (al.v.norm_squared() + al.p.dot(&al.a) - r1 * r1) / r;
    let u2 = (al.a - u1 * (2.0 * r1) - u * r2) / r;
    CurveJet { p: u, v: u1, a: u2 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jet() -> CurveJet {
        CurveJet::new(e1(), Vec3::new(0.0, 3.0, 0.5), Vec3::new(-2.0, 1.0, 4.0))
    }

    #[test]
    fn frenet_factor_is_upper_triangular() {
        let j = jet();
        let q = frenet_frame(&j).unwrap();
        let r = triangular_factor(&j, &q);
        assert!(r[(1, 0)].abs() < 1e-12 && r[(2, 0)].abs() < 1e-12 && r[(2, 1)].abs() < 1e-12);
        assert!(r[(0, 0)] > 0.0 && r[(1, 1)] > 0.0 && r[(2, 2)] > 0.0);
        assert!((q * r - j.matrix()).abs().max() < 1e-12);
    }

    #[test]
    fn immersion_frame_matches_frenet_when_convex() {
        let j = jet();
        assert!(j.det() > 0.0);
        let d = frenet_frame(&j).unwrap() - immersion_frame(&j).unwrap();
        assert!(d.abs().max() < 1e-12);
    }

    #[test]
    fn great_circle_jet_is_degenerate() {
        let w = 2.0 * std::f64::consts::PI;
        let j = CurveJet::new(e1(), e2() * w, -e1() * w * w);
        assert!(matches!(frenet_frame(&j), Err(LcError::DegenerateJet { .. })));
        assert!(immersion_frame(&j).is_ok());
    }

    #[test]
    fn normalized_jet_matches_finite_differences() {
        let f = |t: f64| Vec3::new(2.0 + t, t * t - 0.5, 1.0 + t.sin());
        let t = 0.3;
        let h = 1e-4;
        let al = CurveJet::new(f(t), (f(t + h) - f(t - h)) / (2.0 * h), (f(t + h) - f(t) * 2.0 + f(t - h)) / (h * h));
        let j = normalize_jet(&al);
        let g = |t: f64| f(t).normalize();
        let v = (g(t + h) - g(t - h)) / (2.0 * h);
        let a = (g(t + h) - g(t) * 2.0 + g(t - h)) / (h * h);
        assert!((j.v - v).norm() < 1e-6);
        assert!((j.a - a).norm() < 1e-5);
    }
}
