use super::basic::{concat, nu};
use crate::error::{LcError, Result};
use crate::sphere::{immersion_frame, Curve, CurveJet, RotMat, Vec3};
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::sync::OnceLock;

/// The rotation α(s, t).
pub fn alpha_rot(s: f64, t: f64) -> RotMat {
    let (ss, cs) = (PI * s).sin_cos();
    let (sn, c) = (2.0 * PI * t).sin_cos();
    RotMat::new(ss * c, -sn, -cs * c, ss * sn, c, -cs * sn, cs, 0.0, ss)
}

/// Jet of γ_s(t) = (√2/2) α(s,t) (1, cos 6πt, sin 6πt)ᵀ.
#[inline]
pub fn gamma_s_jet(s: f64, t: f64) -> CurveJet {
    let (ss, cs) = (PI * s).sin_cos();
    let w = 2.0 * PI;
    let (sn, c) = (w * t).sin_cos();
    let a0 = RotMat::new(ss * c, -sn, -cs * c, ss * sn, c, -cs * sn, cs, 0.0, ss);
    let a1 = RotMat::new(-ss * sn, -c, cs * sn, ss * c, -sn, -cs * c, 0.0, 0.0, 0.0) * w;
    let a2 = RotMat::new(-ss * c, sn, cs * c, -ss * sn, -c, cs * sn, 0.0, 0.0, 0.0) * (w * w);
    let u = 6.0 * PI;
    let (su, cu) = (u * t).sin_cos();
    let x0 = Vec3::new(1.0, cu, su);
    let x1 = Vec3::new(0.0, -su, cu) * u;
    let x2 = Vec3::new(0.0, -cu, -su) * (u * u);
    let k = FRAC_1_SQRT_2;
    CurveJet::new(a0 * x0 * k, (a1 * x0 + a0 * x1) * k, (a2 * x0 + a1 * x1 * 2.0 + a0 * x2) * k)
}

pub fn gamma_s(s: f64) -> Curve {
    Curve::new("gamma_s", &[("s", s)], move |t| gamma_s_jet(s, t))
}

/// Γ(s, t), the Frenet frame of γ_s at t.
pub fn big_gamma(s: f64, t: f64) -> RotMat {
    immersion_frame(&gamma_s_jet(s, t)).expect("gamma_s is immersed")
}

/// Rotation by 2π/3 about e₃ relating Γ(s, t + 1/3) and Γ(s, t).
pub fn third_turn() -> RotMat {
    let h = 3f64.sqrt() / 2.0;
    RotMat::new(-0.5, -h, 0.0, h, -0.5, 0.0, 0.0, 0.0, 1.0)
}

#[inline]
pub fn g_plus_2_jet(base: &RotMat, s1: f64, s2: f64, t: f64) -> CurveJet {
    gamma_s_jet(s2, t + s1 / 3.0).rotate(base)
}

/// 𝐠₊,₂(s1, s2)(t) = Γ(s2, s1/3)⁻¹ Γ(s2, t + s1/3) e₁.
pub fn g_plus_2(s1: f64, s2: f64) -> Curve {
    let base = big_gamma(s2, s1 / 3.0).transpose();
    Curve::new("g_plus_2", &[("s1", s1), ("s2", s2)], move |t| g_plus_2_jet(&base, s1, s2, t))
}

/// Chart point of 𝐠₊,₂ for a point of the unit square, boundary sent to the ν₂ pole.
pub fn square_chart(u: f64, v: f64) -> (f64, f64) {
    let (x, y) = (2.0 * u - 1.0, 2.0 * v - 1.0);
    let rho = x.abs().max(y.abs()).min(1.0);
    if rho == 0.0 {
        return (0.0, 0.0);
    }
    let th = y.atan2(x);
    ((-th / (2.0 * PI)).rem_euclid(1.0), rho)
}

/// Inverse of `square_chart` away from the poles.
pub fn square_chart_inverse(s1: f64, s2: f64) -> (f64, f64) {
    let th = -2.0 * PI * s1;
    let (s, c) = th.sin_cos();
    let m = c.abs().max(s.abs());
    ((1.0 + s2 * c / m) / 2.0, (1.0 + s2 * s / m) / 2.0)
}

/// 𝐠₊,₂ on [0,1]², equal to ν₂ on the boundary.
pub fn g_square(u: f64, v: f64) -> Curve {
    let (s1, s2) = square_chart(u, v);
    let mut c = g_plus_2(s1, s2);
    c.meta.source.tag = "g_square".into();
    c.meta.source.params = vec![("u".into(), u), ("v".into(), v)];
    c
}

/// (s1, s2) of the 𝐠₊,₂ chart for a disk point in polar coordinates; r = 1 goes to the ν₄ pole.
pub fn disk_wrap(r: f64, theta: f64) -> (f64, f64) {
    ((theta / (2.0 * PI)).rem_euclid(1.0), 1.0 - r)
}

/// Analytic flower parameter of 𝐠₊,₂: the curve through e₁ at t = 1/3 and 2/3.
pub const G_PLUS_2_FLOWER: (f64, f64) = (0.75, 0.75);

static PATH_LONGITUDE: OnceLock<f64> = OnceLock::new();

/// Longitude s1* = s1(flower) + 1/2 used by `path_alpha`.
pub fn path_longitude() -> f64 {
    *PATH_LONGITUDE.get_or_init(|| {
        let (s1, _) = crate::invariants::locate_g_plus_2_flower().unwrap_or(G_PLUS_2_FLOWER);
        (s1 + 0.5).rem_euclid(1.0)
    })
}

/// Path from ν₂ (u = 0) to ν₄ (u = 1) along one longitude of 𝐠₊,₂.
pub fn path_alpha(u: f64) -> Curve {
    let s1 = path_longitude();
    let mut c = g_plus_2(s1, 1.0 - u);
    c.meta.source.tag = "path_alpha".into();
    c.meta.source.params = vec![("u".into(), u)];
    c
}

/// Checks that `path_alpha` stays away from the flower set on `samples + 1` points.
pub fn check_path_alpha(samples: usize) -> Result<f64> {
    let mut worst = (f64::INFINITY, 0.0);
    for i in 0..=samples {
        let u = i as f64 / samples as f64;
        if let Some(m) = crate::invariants::chart_psi_norm(&path_alpha(u)) {
            if m < worst.0 {
                worst = (m, u);
            }
        }
    }
    if worst.0 < 1e-3 {
        return Err(LcError::FlowerOnPath { u: worst.1, min_psi: worst.0 });
    }
    Ok(worst.0)
}

/// Max-metric radius of the collar around the inner square of 𝐠₂.
fn collar_radius(x: f64, y: f64) -> f64 {
    (2.0 * (x - 0.75).abs()).max((y - 0.5).abs())
}

/// 𝐠₂ = 𝐠₊,₂ − ν₂ ∗ 𝐠₊,₂ glued along a collar by `path_alpha`.
pub fn g_2(x: f64, y: f64) -> Curve {
    let mut c = if x <= 0.5 {
        g_square(2.0 * x, y)
    } else {
        let m = collar_radius(x, y);
        if m <= 0.25 {
            let nu2 = nu(2.0).expect("positive");
            concat(&nu2, &g_square(3.5 - 4.0 * x, 2.0 * y - 0.5)).expect("closed factors")
        } else {
            path_alpha((2.0 - 4.0 * m).clamp(0.0, 1.0))
        }
    };
    c.meta.source.tag = "g_2".into();
    c.meta.source.params = vec![("x".into(), x), ("y".into(), y)];
    c
}

/// Chart point of 𝐠₂ carrying the flower of its 𝐠₊,₂ half.
pub fn g_2_flower() -> (f64, f64) {
    let (s1, s2) = crate::invariants::locate_g_plus_2_flower().unwrap_or(G_PLUS_2_FLOWER);
    let (u, v) = square_chart_inverse(s1, s2);
    (u / 2.0, v)
}
