//! Returns of a closed curve to the neighbourhood of e₁.

use crate::error::{LcError, Result};
use crate::sphere::{e1, Curve, Vec3};

/// Radius of the ball around e₁ in which passages are detected.
pub const BALL_RADIUS: f64 = 0.1;
/// Uniform samples used to find visits to the ball.
pub const PASSAGE_SAMPLES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PassageKind {
    /// One transversal crossing of the plane z = 0.
    Crossing,
    /// No sign change of z; the time reported is the closest approach.
    Touch,
    /// Several crossings in one visit.
    Multiple,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Passage {
    pub kind: PassageKind,
    /// Crossing times of z = 0 inside the visit, sorted.
    pub crossings: Vec<f64>,
    /// Time of closest approach to e₁ and the distance there.
    pub t_closest: f64,
    pub distance: f64,
}

impl Passage {
    /// Crossing time, or the closest approach for a touch.
    pub fn time(&self) -> f64 {
        match self.kind {
            PassageKind::Crossing => self.crossings[0],
            _ => self.t_closest,
        }
    }
}

fn chord_distance(a: &Vec3, b: &Vec3, x: &Vec3) -> f64 {
    let d = b - a;
    let l2 = d.norm_squared();
    let s = if l2 > 0.0 { ((x - a).dot(&d) / l2).clamp(0.0, 1.0) } else { 0.0 };
    (a + d * s - x).norm()
}

fn bisect_z(c: &Curve, mut lo: f64, mut hi: f64) -> f64 {
    let zlo = c.point(lo).z;
    for _ in 0..64 {
        let mid = 0.5 * (lo + hi);
        let zm = c.point(mid).z;
        if zm == 0.0 {
            return mid;
        }
        if zm.signum() == zlo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-14 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section minimum of |γ(t) − e₁| on [lo, hi].
pub(crate) fn closest_approach(c: &Curve, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let f = |t: f64| (c.point(t) - e1()).norm();
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..100 {
        if hi - lo < 1e-15 {
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    let t = 0.5 * (lo + hi);
    (t, f(t))
}

/// Interior visits of the curve to the ball of radius `BALL_RADIUS` around e₁.
pub fn passages(c: &Curve) -> Result<Vec<Passage>> {
    passages_with(c, PASSAGE_SAMPLES)
}

pub fn passages_with(c: &Curve, n: usize) -> Result<Vec<Passage>> {
    let x = e1();
    let ts: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
    let pts: Vec<Vec3> = ts.iter().map(|&t| c.point(t)).collect();
    let inside: Vec<bool> = (0..n).map(|k| chord_distance(&pts[k], &pts[k + 1], &x) < BALL_RADIUS).collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < n {
        if !inside[k] {
            k += 1;
            continue;
        }
        let k0 = k;
        while k < n && inside[k] {
            k += 1;
        }
        let k1 = k;
        if k0 == 0 || k1 == n {
            continue;
        }
        out.push(classify_visit(c, &ts, &pts, k0, k1)?);
    }
    Ok(out)
}

/// Visit made of segments k0..k1 (samples k0..=k1).
fn classify_visit(c: &Curve, ts: &[f64], pts: &[Vec3], k0: usize, k1: usize) -> Result<Passage> {
    let mut crossings = Vec::new();
    let mut last: Option<usize> = None;
    for i in k0..=k1 {
        let z = pts[i].z;
        if z == 0.0 {
            continue;
        }
        if let Some(j) = last {
            if pts[j].z.signum() != z.signum() {
                let t = bisect_z(c, ts[j], ts[i]);
                let j = c.eval(t);
                if j.v.z.abs() < 1e-6 {
                    // A sign flip at e₁ itself is rounding noise on a touch.
                    if (j.p - e1()).norm() < 1e-6 {
                        last = Some(i);
                        continue;
                    }
                    return Err(LcError::TangentialCrossing { t });
                }
                crossings.push(t);
            }
        }
        last = Some(i);
    }
    let best = (k0..=k1).min_by(|&a, &b| (pts[a] - e1()).norm().total_cmp(&(pts[b] - e1()).norm())).unwrap_or(k0);
    let lo = ts[best.saturating_sub(1)];
    let hi = ts[(best + 1).min(ts.len() - 1)];
    let (t_closest, distance) = closest_approach(c, lo, hi);
    let kind = match crossings.len() {
        0 => PassageKind::Touch,
        1 => PassageKind::Crossing,
        _ => PassageKind::Multiple,
    };
    Ok(Passage { kind, crossings, t_closest, distance })
}

/// Interior parameters where the curve meets the plane z = 0 near e₁; touches report their closest approach.
pub fn flower_times(c: &Curve) -> Result<Vec<f64>> {
    if !c.is_closed() {
        return Err(LcError::NotClosed(c.source().to_string()));
    }
    let mut out = Vec::new();
    for p in passages(c)? {
        match p.kind {
            PassageKind::Touch => out.push(p.t_closest),
            _ => out.extend(p.crossings.iter().copied()),
        }
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{g_plus_2, nu, G_PLUS_2_FLOWER};

    #[test]
    fn nu1_has_no_interior_passage() {
        assert!(passages(&nu(1.0).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn nu2_touches_at_half() {
        let p = passages(&nu(2.0).unwrap()).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].kind, PassageKind::Touch);
        assert!((p[0].t_closest - 0.5).abs() < 1e-9);
        assert!(p[0].distance < 1e-9);
        assert_eq!(flower_times(&nu(2.0).unwrap()).unwrap().len(), 1);
    }

    #[test]
    fn flower_crosses_twice() {
        let (s1, s2) = G_PLUS_2_FLOWER;
        let t = flower_times(&g_plus_2(s1, s2)).unwrap();
        assert_eq!(t.len(), 2);
        assert!((t[0] - 1.0 / 3.0).abs() < 1e-9 && (t[1] - 2.0 / 3.0).abs() < 1e-9);
    }
}
