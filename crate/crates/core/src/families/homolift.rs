use super::basic::{nu, nu_jet};
use super::plus2::{disk_wrap, g_plus_2};
use crate::error::{LcError, Result};
use crate::sphere::{lift_auto, Curve, RotMat, UnitQuat, DEFAULT_SAMPLES};
use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

/// Closed form of the Frenet frame 𝔉_{ν₁}(c).
pub fn nu1_frame(c: f64) -> RotMat {
    let (s, co) = (2.0 * PI * c).sin_cos();
    RotMat::new(
        1.0 + co, -SQRT_2 * s, 1.0 - co,
        SQRT_2 * s, 2.0 * co, -SQRT_2 * s,
        1.0 - co, SQRT_2 * s, 1.0 + co,
    ) * 0.5
}

/// Continuous lift of c ↦ 𝔉_{ν₁}(c): rotation by 2πc about (e₁ + e₃)/√2.
pub fn nu1_frame_lift(c: f64) -> UnitQuat {
    let (s, co) = (PI * c).sin_cos();
    UnitQuat::new(co, s * FRAC_1_SQRT_2, 0.0, s * FRAC_1_SQRT_2)
}

/// A point of the closed unit disk in polar coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint {
    pub r: f64,
    pub theta: f64,
}

/// 𝐡(p, s) = φ(ν_{4−2s}); independent of p.
pub fn h_map(_p: DiskPoint, s: f64) -> UnitQuat {
    nu1_frame_lift(4.0 - 2.0 * s)
}

/// 𝐡̃₀ on X₂ = 𝔻² × {0} ∪ 𝕊¹ × [0,1].
pub fn h0_lift(p: DiskPoint, s: f64) -> Result<Curve> {
    if s == 0.0 {
        let (s1, s2) = disk_wrap(p.r, p.theta);
        return Ok(g_plus_2(s1, s2));
    }
    if (p.r - 1.0).abs() < 1e-12 && (0.0..=1.0).contains(&s) {
        return nu(4.0 - 2.0 * s);
    }
    Err(LcError::DomainError(format!("(r = {}, s = {}) is not in X2", p.r, s)))
}

/// Completes c by a ν₄ tail: c(t/(1 − s/2)) then ν₄(t) for t ≥ 1 − s/2.
pub fn complete_with_arc(c: &Curve, s: f64) -> Result<Curve> {
    let end = lift_auto(c, DEFAULT_SAMPLES)?.endpoint();
    let target = nu1_frame_lift(4.0 - 2.0 * s);
    let distance = end.dist(&target);
    if !(distance < 1e-4) {
        return Err(LcError::IncompatibleEndpoint { distance });
    }
    let head = c.clone();
    let cut = 1.0 - s / 2.0;
    let mut out = Curve::new("complete_with_arc", &[("s", s)], move |t| {
        if t <= cut {
            head.eval(t / cut).rescale(1.0 / cut)
        } else {
            nu_jet(4.0, t)
        }
    });
    out.meta.source.tag = format!("complete_with_arc({})", c.source());
    Ok(out)
}
