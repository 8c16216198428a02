//! Component, convexity and simplicity tests.

use crate::error::{LcError, Result};
use crate::sphere::{e1, frenet_frame, lift_auto, local_convexity_margin_at, Curve, UnitQuat, Vec3, DEFAULT_SAMPLES};
use serde::Serialize;

/// The three components of closed locally convex curves with base frame I.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ComponentClass {
    MinusConvex,
    Plus,
    MinusNonConvex,
}

impl std::fmt::Display for ComponentClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ComponentClass::MinusConvex => "MinusConvex",
            ComponentClass::Plus => "Plus",
            ComponentClass::MinusNonConvex => "MinusNonConvex",
        };
        f.write_str(s)
    }
}

pub(crate) fn require_closed(c: &Curve) -> Result<()> {
    if c.is_closed() {
        Ok(())
    } else {
        Err(LcError::NotClosed(c.source().to_string()))
    }
}

pub(crate) fn require_margin(c: &Curve, tol: f64) -> Result<()> {
    let (margin, index) = local_convexity_margin_at(c, DEFAULT_SAMPLES);
    if !(margin > tol) {
        return Err(LcError::NotLocallyConvex { index, margin });
    }
    Ok(())
}

/// φ(γ): endpoint of the lifted frame path.
pub fn phi(c: &Curve) -> Result<UnitQuat> {
    require_margin(c, 0.0)?;
    Ok(lift_auto(c, DEFAULT_SAMPLES)?.endpoint())
}

pub fn classify(c: &Curve) -> Result<ComponentClass> {
    require_closed(c)?;
    require_margin(c, 1e-9)?;
    let q = lift_auto(c, DEFAULT_SAMPLES)?.endpoint();
    if q.w > 0.0 {
        Ok(ComponentClass::Plus)
    } else if is_convex(c)? {
        Ok(ComponentClass::MinusConvex)
    } else {
        Ok(ComponentClass::MinusNonConvex)
    }
}

fn circular_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Supporting-plane test: every ⟨γ(t), 𝐧(t₀)⟩ is positive away from a window around t₀.
pub fn is_convex(c: &Curve) -> Result<bool> {
    require_closed(c)?;
    require_margin(c, 0.0)?;
    let fine = 4096;
    let pts = c.sample_points(fine);
    for i in 0..256 {
        let t0 = i as f64 / 256.0;
        let n = frenet_frame(&c.eval(t0))?.column(2).into_owned();
        let eta: Vec<f64> = pts.iter().map(|p| p.dot(&n)).collect();
        for j in 0..fine {
            let t = j as f64 / fine as f64;
            if eta[j] <= -1e-7 {
                return Ok(false);
            }
            if circular_gap(t, t0) < 0.01 {
                continue;
            }
            let (l, r) = (eta[(j + fine - 1) % fine], eta[(j + 1) % fine]);
            if eta[j] <= l && eta[j] <= r {
                let h = 1.0 / fine as f64;
                let f = |s: f64| c.point(s.rem_euclid(1.0)).dot(&n);
                if golden_min(f, t - h, t + h) < 1e-7 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut x1, mut x2) = (b - g * (b - a), a + g * (b - a));
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..60 {
        if f1 < f2 {
            b = x2;
            (x2, f2) = (x1, f1);
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            (x1, f1) = (x2, f2);
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    f1.min(f2)
}

/// Closest distance between segments [p0, p1] and [q0, q1].
pub fn segment_distance(p0: &Vec3, p1: &Vec3, q0: &Vec3, q1: &Vec3) -> f64 {
    let d1 = p1 - p0;
    let d2 = q1 - q0;
    let r = p0 - q0;
    let a = d1.dot(&d1);
    let e = d2.dot(&d2);
    let f = d2.dot(&r);
    let (s, t);
    if a <= f64::EPSILON && e <= f64::EPSILON {
        return r.norm();
    }
    if a <= f64::EPSILON {
        s = 0.0;
        t = (f / e).clamp(0.0, 1.0);
    } else {
        let c = d1.dot(&r);
        if e <= f64::EPSILON {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = d1.dot(&d2);
            let denom = a * e - b * b;
            let mut s0 = if denom > 0.0 { ((b * f - c * e) / denom).clamp(0.0, 1.0) } else { 0.0 };
            let mut t0 = (b * s0 + f) / e;
            if t0 < 0.0 {
                t0 = 0.0;
                s0 = (-c / a).clamp(0.0, 1.0);
            } else if t0 > 1.0 {
                t0 = 1.0;
                s0 = ((b - c) / a).clamp(0.0, 1.0);
            }
            s = s0;
            t = t0;
        }
    }
    (p0 + d1 * s - (q0 + d2 * t)).norm()
}

/// First pair of parameters, separated by more than `window` (mod 1), whose polyline segments
/// come within `tol`; segments meeting the `exclude` ball around e₁ are skipped.
pub fn self_intersection(c: &Curve, n: usize, window: f64, tol: f64, exclude: Option<f64>) -> Option<(f64, f64, f64)> {
    let pts = c.sample_points(n);
    let mids: Vec<Vec3> = (0..n).map(|k| (pts[k] + pts[k + 1]) * 0.5).collect();
    let half: Vec<f64> = (0..n).map(|k| 0.5 * (pts[k + 1] - pts[k]).norm()).collect();
    let skip: Vec<bool> = (0..n)
        .map(|k| exclude.is_some_and(|r| segment_distance(&pts[k], &pts[k + 1], &e1(), &e1()) < r))
        .collect();
    let sep = (window * n as f64).ceil() as usize;
    for i in 0..n {
        if skip[i] {
            continue;
        }
        for j in (i + sep + 1)..n {
            if n - (j - i) <= sep || skip[j] {
                continue;
            }
            if (mids[i] - mids[j]).norm() > half[i] + half[j] + tol {
                continue;
            }
            let d = segment_distance(&pts[i], &pts[i + 1], &pts[j], &pts[j + 1]);
            if d < tol {
                return Some(((i as f64 + 0.5) / n as f64, (j as f64 + 0.5) / n as f64, d));
            }
        }
    }
    None
}

pub fn is_simple(c: &Curve) -> Result<bool> {
    require_closed(c)?;
    Ok(self_intersection(c, DEFAULT_SAMPLES, 0.01, 1e-5, None).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{g_plus_2, nu};

    #[test]
    fn nu_components() {
        let want = [
            ComponentClass::MinusConvex,
            ComponentClass::Plus,
            ComponentClass::MinusNonConvex,
            ComponentClass::Plus,
        ];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(classify(&nu(n as f64 + 1.0).unwrap()).unwrap(), *w);
        }
    }

    #[test]
    fn phi_of_nu1_and_nu2() {
        assert!(phi(&nu(1.0).unwrap()).unwrap().dist(&UnitQuat::ONE.neg()) < 1e-6);
        assert!(phi(&nu(2.0).unwrap()).unwrap().dist(&UnitQuat::ONE) < 1e-6);
    }

    #[test]
    fn circle_is_simple_and_convex() {
        let c = nu(1.0).unwrap();
        assert!(is_simple(&c).unwrap());
        assert!(is_convex(&c).unwrap());
        let d = nu(2.0).unwrap();
        assert!(!is_simple(&d).unwrap());
        assert!(!is_convex(&d).unwrap());
    }

    #[test]
    fn g_plus_2_members_are_not_simple() {
        let c = g_plus_2(0.3, 0.4);
        assert!(!is_simple(&c).unwrap());
        assert!(!is_convex(&c).unwrap());
    }

    #[test]
    fn segment_distance_cases() {
        let v = |x: f64, y: f64, z: f64| Vec3::new(x, y, z);
        assert!((segment_distance(&v(0., 0., 0.), &v(1., 0., 0.), &v(0.5, 1., 0.), &v(0.5, -1., 0.))).abs() < 1e-15);
        assert!((segment_distance(&v(0., 0., 0.), &v(1., 0., 0.), &v(2., 1., 0.), &v(3., 1., 0.)) - 2f64.sqrt()).abs() < 1e-15);
        assert!((segment_distance(&v(0., 0., 0.), &v(1., 0., 0.), &v(0., 0., 1.), &v(1., 0., 1.)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn not_closed_is_rejected() {
        assert!(matches!(is_simple(&nu(1.5).unwrap()), Err(LcError::NotClosed(_))));
    }
}
