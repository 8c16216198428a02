use super::basic::{nu1_jet, nu};
use super::homolift::DiskPoint;
use super::plus2::{disk_wrap, g_2, g_plus_2};
use super::IntervalSupport;
use crate::error::{LcError, Result};
use crate::sphere::{local_convexity_margin_at, normalize_jet, Curve, CurveJet, RotMat, Vec3, DEFAULT_SAMPLES};
use std::f64::consts::{PI, SQRT_2};
use std::sync::Arc;

pub const I1: (f64, f64) = (1.0 / 6.0, 2.0 / 6.0);
pub const I2: (f64, f64) = (4.0 / 6.0, 5.0 / 6.0);

/// Upper triangular R(a, b) preserving the cone y² = 2xz.
pub fn r_matrix(a: f64, b: f64) -> RotMat {
    RotMat::new(1.0 / a, b / a, b * b / (2.0 * a), 0.0, 1.0, b, 0.0, 0.0, a)
}

fn linear_jet(m: &RotMat, j: &CurveJet) -> CurveJet {
    normalize_jet(&CurveJet::new(m * j.p, m * j.v, m * j.a))
}

fn require_convex(c: &Curve) -> Result<()> {
    let (margin, index) = local_convexity_margin_at(c, DEFAULT_SAMPLES);
    if !(margin > 0.0) {
        return Err(LcError::NotLocallyConvex { index, margin });
    }
    Ok(())
}

/// γ^R = R(a,b)⁻¹γ / |R(a,b)⁻¹γ|.
pub fn renorm(c: &Curve, a: f64, b: f64) -> Result<Curve> {
    if !(a > 0.0) {
        return Err(LcError::DomainError(format!("renorm needs a > 0, got {a}")));
    }
    require_convex(c)?;
    let inv = r_matrix(a, b).try_inverse().expect("a > 0");
    let base = c.clone();
    let mut out = Curve::new("renorm", &[("a", a), ("b", b)], move |t| linear_jet(&inv, &base.eval(t)));
    out.meta.source.tag = format!("renorm({})", c.source());
    Ok(out)
}

/// Gnomonic chart (y/x, z/x) around e₁ with its first two derivatives.
#[derive(Debug, Clone, Copy)]
struct ChartJet {
    p: [f64; 2],
    v: [f64; 2],
    a: [f64; 2],
}

impl ChartJet {
    fn of(j: &CurveJet) -> ChartJet {
        let q = |u: f64, u1: f64, u2: f64, x: f64, x1: f64, x2: f64| {
            let r = u / x;
            let r1 = (u1 - r * x1) / x;
            let r2 = (u2 - 2.0 * r1 * x1 - r * x2) / x;
            (r, r1, r2)
        };
        let (y, y1, y2) = q(j.p.y, j.v.y, j.a.y, j.p.x, j.v.x, j.a.x);
        let (z, z1, z2) = q(j.p.z, j.v.z, j.a.z, j.p.x, j.v.x, j.a.x);
        ChartJet { p: [y, z], v: [y1, z1], a: [y2, z2] }
    }

    /// Jet of the ray (1, Y, Z) in ℝ³.
    fn lift(&self) -> CurveJet {
        CurveJet::new(
            Vec3::new(1.0, self.p[0], self.p[1]),
            Vec3::new(0.0, self.v[0], self.v[1]),
            Vec3::new(0.0, self.a[0], self.a[1]),
        )
    }
}

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Point of Z = Y²/2 moving with dY/dt = k.
fn parabola(y: f64, k: f64) -> ChartJet {
    ChartJet { p: [y, y * y / 2.0], v: [k, y * k], a: [0.0, k * k] }
}

/// Quadratic Bézier p0 → p1 with control c, parameter u = (t − t0)·k.
#[derive(Debug, Clone, Copy)]
struct Bezier {
    p0: [f64; 2],
    c: [f64; 2],
    p1: [f64; 2],
}

impl Bezier {
    /// Bridge from (p0, direction d0) to (p1, direction d1) through the tangent intersection.
    fn bridge(p0: [f64; 2], d0: [f64; 2], p1: [f64; 2], d1: [f64; 2]) -> Option<Bezier> {
        let det = cross(d0, d1);
        if !(det > 0.0) {
            return None;
        }
        let w = [p1[0] - p0[0], p1[1] - p0[1]];
        let s = cross(w, d1) / det;
        let r = cross(d0, w) / det;
        if !(s > 0.0 && r > 0.0) {
            return None;
        }
        Some(Bezier { p0, c: [p0[0] + s * d0[0], p0[1] + s * d0[1]], p1 })
    }

    fn jet(&self, u: f64, k: f64) -> ChartJet {
        let mut out = ChartJet { p: [0.0; 2], v: [0.0; 2], a: [0.0; 2] };
        for i in 0..2 {
            let (p0, c, p1) = (self.p0[i], self.c[i], self.p1[i]);
            out.p[i] = (1.0 - u) * (1.0 - u) * p0 + 2.0 * u * (1.0 - u) * c + u * u * p1;
            out.v[i] = 2.0 * ((1.0 - u) * (c - p0) + u * (p1 - c)) * k;
            out.a[i] = 2.0 * (p1 - 2.0 * c + p0) * k * k;
        }
        out
    }
}

/// First t in (0, 1) where the chart ordinate Y of c reaches `target`, scanning from `from` towards `to`.
fn germ_time(c: &Curve, target: f64, from: f64, to: f64) -> Option<f64> {
    let steps = 8192;
    let f = |t: f64| {
        let p = c.point(t);
        (p.x > 0.2).then(|| p.y / p.x - target)
    };
    let mut prev_t = from;
    let mut prev = f(from)?;
    for i in 1..=steps {
        let t = from + (to - from) * i as f64 / steps as f64;
        let cur = f(t)?;
        if prev == 0.0 || prev.signum() != cur.signum() {
            let (mut lo, mut hi) = (prev_t, t);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid)?;
                if fm.signum() == prev.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Some(0.5 * (lo + hi));
        }
        prev_t = t;
        prev = cur;
    }
    None
}

/// Parameters of one splice.
#[derive(Debug, Clone, Copy)]
struct Plan {
    a: f64,
    b: f64,
    y1: f64,
    ya: f64,
    yb: f64,
    t_start: f64,
    t_end: f64,
    start: Bezier,
    end: Bezier,
}

/// Smallest enlargement a that admits a bridge; a large a squeezes the rest of the insert.
fn plan(insert: &Curve, iv: &IntervalSupport) -> Option<Plan> {
    let wa = SQRT_2 * (PI * iv.lo()).tan();
    let wb = SQRT_2 * (PI * iv.hi()).tan();
    let mut germs = Vec::new();
    let mut y2 = 0.8;
    while y2 >= 1e-4 {
        if let (Some(t_start), Some(t_end)) = (germ_time(insert, y2, 0.0, 0.5), germ_time(insert, -y2, 1.0, 0.5)) {
            let (ja, jb) = (ChartJet::of(&insert.eval(t_start)), ChartJet::of(&insert.eval(t_end)));
            let mut m = 2.0;
            while m <= 1024.0 {
                let y1 = y2 / m;
                let start = Bezier::bridge([y1, y1 * y1 / 2.0], [1.0, y1], ja.p, ja.v);
                let end = Bezier::bridge(jb.p, jb.v, [-y1, y1 * y1 / 2.0], [1.0, -y1]);
                if let (Some(start), Some(end)) = (start, end) {
                    germs.push((y1, t_start, t_end, start, end));
                }
                m *= 2.0;
            }
        }
        y2 /= 2.0;
    }
    for e in 1..=14 {
        let a = 2f64.powi(e);
        for &(y1, t_start, t_end, start, end) in &germs {
            for l in 0..64 {
                let b = (-8.0 + 16.0 * l as f64 / 63.0) * a;
                let ya = wa / (a - b * wa / 2.0);
                let yb = wb / (a - b * wb / 2.0);
                if 0.0 < ya && ya < y1 && -y1 < yb && yb < 0.0 {
                    return Some(Plan { a, b, y1, ya, yb, t_start, t_end, start, end });
                }
            }
        }
    }
    None
}

type Probe = (f64, Vec3, Vec3);

fn probe(insert: &Curve, r: &RotMat, t: f64) -> Probe {
    let j = linear_jet(r, &insert.eval(t));
    (t, j.p, j.v.normalize())
}

/// Arc length plus turning of the tangent between two probes.
fn measure(a: &Probe, b: &Probe) -> f64 {
    (b.1 - a.1).norm() + (b.2 - a.2).norm()
}

/// Bisects until every piece moves the image by less than `tol`; R stretches some stretches of
/// the insert by a² relative to others, so a uniform table cannot resolve them.
fn refine(insert: &Curve, r: &RotMat, a: Probe, b: Probe, tol: f64, depth: u32, out: &mut Vec<Probe>) {
    let m = probe(insert, r, 0.5 * (a.0 + b.0));
    if depth < 52 && measure(&a, &m) + measure(&m, &b) > tol {
        refine(insert, r, a, m, tol, depth + 1, out);
        refine(insert, r, m, b, tol, depth + 1, out);
    } else {
        out.push(m);
        out.push(b);
    }
}

/// Table of the middle piece: insert parameters at equal steps of image arc length and turning.
fn arc_table(insert: &Curve, r: &RotMat, t0: f64, t1: f64, n: usize) -> Vec<f64> {
    let seeds = 1024;
    let mut pts = vec![probe(insert, r, t0)];
    for i in 1..=seeds {
        let b = probe(insert, r, t0 + (t1 - t0) * i as f64 / seeds as f64);
        let a = *pts.last().expect("seeded");
        refine(insert, r, a, b, 2e-3, 0, &mut pts);
    }
    let m = pts.len() - 1;
    let mut cum = vec![0.0; m + 1];
    for i in 1..=m {
        cum[i] = cum[i - 1] + measure(&pts[i - 1], &pts[i]);
    }
    let total = cum[m];
    let mut out = Vec::with_capacity(n + 1);
    let mut k = 0;
    for i in 0..=n {
        let s = total * i as f64 / n as f64;
        while k + 1 < m && cum[k + 1] < s {
            k += 1;
        }
        let f = if cum[k + 1] > cum[k] { ((s - cum[k]) / (cum[k + 1] - cum[k])).clamp(0.0, 1.0) } else { 0.0 };
        out.push(pts[k].0 + f * (pts[k + 1].0 - pts[k].0));
    }
    out[0] = t0;
    out[n] = t1;
    out
}

/// Curve equal to ν₁ outside `iv` carrying a projectively enlarged copy of `insert` inside it.
pub fn splice(insert: &Curve, iv: IntervalSupport) -> Result<Curve> {
    if !insert.is_closed() {
        return Err(LcError::NotClosed(insert.source().to_string()));
    }
    require_convex(insert)?;
    let p = plan(insert, &iv).ok_or(LcError::GapTooWide { lo: iv.lo(), hi: iv.hi() })?;
    let r = r_matrix(p.a, p.b);
    let (ta, tb) = (iv.lo(), iv.hi());
    let d = iv.width() / 10.0;
    let (m0, m1) = (ta + 2.0 * d, tb - 2.0 * d);
    let knots = 4096;
    let table = Arc::new(arc_table(insert, &r, p.t_start, p.t_end, knots));
    let base = insert.clone();
    let eval = move |t: f64| -> CurveJet {
        let chart = |cj: ChartJet| linear_jet(&r, &cj.lift());
        if t <= ta || t >= tb {
            nu1_jet(t)
        } else if t < ta + d {
            let k = (p.y1 - p.ya) / d;
            chart(parabola(p.ya + k * (t - ta), k))
        } else if t < m0 {
            chart(p.start.jet((t - ta - d) / d, 1.0 / d))
        } else if t <= m1 {
            let x = (t - m0) / (m1 - m0) * knots as f64;
            let i = (x.floor() as usize).min(knots - 1);
            let f = x - i as f64;
            let slope = (table[i + 1] - table[i]) * knots as f64 / (m1 - m0);
            let tau = table[i] + f * (table[i + 1] - table[i]);
            linear_jet(&r, &base.eval(tau).rescale(slope))
        } else if t < tb - d {
            chart(p.end.jet((t - m1) / d, 1.0 / d))
        } else {
            let k = (p.yb + p.y1) / d;
            chart(parabola(-p.y1 + k * (t - tb + d), k))
        }
    };
    let mut out = Curve::new("splice", &[("lo", ta), ("hi", tb), ("a", p.a), ("b", p.b), ("y1", p.y1)], eval);
    out.meta.source.tag = format!("splice({})", insert.source());
    Ok(out)
}

/// 𝐠₊,₂ₖ(p₁, p₂): splice of 𝐠₊,₂ ∘ disk_wrap on I₁ and of the lower family on I₂, ν₁ elsewhere.
///
/// For k = 2, p₂ = (x, y) is a chart point of 𝐠₂. For k > 2, p₂ = (r, θ, rest) feeds the same
/// construction one level down; only the disk part of the lower family is available there.
pub fn g_plus_2k_point(k: usize, p1: DiskPoint, p2: &[f64]) -> Result<Curve> {
    if k < 2 || p2.len() != 2 * k - 2 {
        return Err(LcError::DomainError(format!("k = {k} needs {} coordinates for p2, got {}", 2 * k - 2, p2.len())));
    }
    let (s1, s2) = disk_wrap(p1.r, p1.theta);
    let g1 = splice(&g_plus_2(s1, s2), IntervalSupport::new(I1.0, I1.1)?)?;
    let lower = if k == 2 {
        g_2(p2[0], p2[1])
    } else {
        g_plus_2k_point(k - 1, DiskPoint { r: p2[0], theta: p2[1] }, &p2[2..])?
    };
    let g2 = splice(&lower, IntervalSupport::new(I2.0, I2.1)?)?;
    let n1 = nu(1.0)?;
    let mut out = Curve::new("g_plus_2k", &[("k", k as f64), ("r", p1.r), ("theta", p1.theta)], move |t| {
        if t > I1.0 && t < I1.1 {
            g1.eval(t)
        } else if t > I2.0 && t < I2.1 {
            g2.eval(t)
        } else {
            n1.eval(t)
        }
    });
    out.meta.source.params.extend(p2.iter().enumerate().map(|(i, &x)| (format!("p2_{i}"), x)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::{lift_auto, local_convexity_margin};

    fn on_c0(p: &Vec3) -> f64 {
        (p.x + p.z - 1.0).abs() + (p.y * p.y - 2.0 * p.x * p.z).abs()
    }

    #[test]
    fn r_preserves_the_cone() {
        let r = r_matrix(3.0, -1.5);
        for i in 0..20 {
            let y = -2.0 + 0.2 * i as f64;
            let q = r * Vec3::new(1.0, y, y * y / 2.0);
            assert!((q.y * q.y - 2.0 * q.x * q.z).abs() < 1e-12 * q.norm_squared());
        }
        let inv = r_matrix(3.0, -1.5).try_inverse().unwrap();
        assert!((inv - r_matrix(1.0 / 3.0, 0.5)).abs().max() < 1e-14);
    }

    #[test]
    fn identity_renorm() {
        let c = g_plus_2(0.3, 0.4);
        let d = renorm(&c, 1.0, 0.0).unwrap();
        for i in 0..=100 {
            let t = i as f64 / 100.0;
            assert!((c.point(t) - d.point(t)).norm() < 1e-14);
        }
    }

    #[test]
    fn renorm_keeps_nu1_on_c0() {
        let d = renorm(&nu(1.0).unwrap(), 5.0, 1.0).unwrap();
        for i in 0..=1000 {
            assert!(on_c0(&d.point(i as f64 / 1000.0)) < 1e-9);
        }
        assert!(local_convexity_margin(&d, 4096) > 0.0);
    }

    #[test]
    fn chart_jet_matches_finite_differences() {
        let c = g_plus_2(0.3, 0.4);
        let (t, h) = (0.03, 1e-5);
        let j = ChartJet::of(&c.eval(t));
        let (m, p) = (ChartJet::of(&c.eval(t - h)), ChartJet::of(&c.eval(t + h)));
        for i in 0..2 {
            assert!(((p.p[i] - m.p[i]) / (2.0 * h) - j.v[i]).abs() < 1e-5);
            assert!(((p.v[i] - m.v[i]) / (2.0 * h) - j.a[i]).abs() < 1e-4);
        }
    }

    #[test]
    fn splice_of_nu1_stays_on_c0() {
        let iv = IntervalSupport::new(I1.0, I1.1).unwrap();
        let s = splice(&nu(1.0).unwrap(), iv).unwrap();
        assert!(s.is_closed());
        for i in 0..=4096 {
            assert!(on_c0(&s.point(i as f64 / 4096.0)) < 1e-8);
        }
        assert!(local_convexity_margin(&s, 4096) > 0.0);
    }

    #[test]
    fn splice_is_nu1_outside_interval() {
        let iv = IntervalSupport::new(I2.0, I2.1).unwrap();
        let c = g_plus_2(0.3, 0.4);
        let s = splice(&c, iv).unwrap();
        let n1 = nu(1.0).unwrap();
        for i in 0..=600 {
            let t = i as f64 / 600.0;
            if !iv.contains(t) {
                assert!((s.point(t) - n1.point(t)).norm() < 1e-12);
            }
        }
        assert!(local_convexity_margin(&s, 8192) > 0.0);
        let (q0, q1) = (lift_auto(&c, 2048).unwrap().endpoint(), lift_auto(&s, 2048).unwrap().endpoint());
        assert!(q0.dist(&q1) < 1e-6);
    }
}
