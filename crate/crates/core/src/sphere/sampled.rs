//! Curves given as uniform samples: a header line `samples N` followed by N+1 triples.

use super::{Curve, CurveJet, Vec3};
use crate::error::{LcError, Result};

pub fn parse_samples(text: &str) -> Result<Vec<Vec3>> {
    let mut tokens = text.split_whitespace();
    match tokens.next() {
        Some("samples") => {}
        _ => return Err(LcError::Parse("expected header `samples N`".into())),
    }
    let n: usize = tokens
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| LcError::Parse("bad sample count".into()))?;
    if n < 5 {
        return Err(LcError::Parse(format!("need at least 5 intervals, got {n}")));
    }
    let vals: Vec<f64> = tokens
        .map(|s| s.parse::<f64>().map_err(|_| LcError::Parse(format!("bad number `{s}`"))))
        .collect::<Result<_>>()?;
    if vals.len() != 3 * (n + 1) {
        return Err(LcError::Parse(format!("expected {} numbers, found {}", 3 * (n + 1), vals.len())));
    }
    let mut pts = Vec::with_capacity(n + 1);
    for (i, c) in vals.chunks(3).enumerate() {
        let v = Vec3::new(c[0], c[1], c[2]);
        let norm = v.norm();
        if !((norm - 1.0).abs() <= 1e-3) {
            return Err(LcError::Parse(format!("sample {i} has norm {norm}")));
        }
        pts.push(v / norm);
    }
    Ok(pts)
}

fn derivatives(f: &[Vec3], h: f64) -> (Vec<Vec3>, Vec<Vec3>) {
    let n = f.len() - 1;
    let mut d1 = vec![Vec3::zeros(); n + 1];
    let mut d2 = vec![Vec3::zeros(); n + 1];
    let c1 = 12.0 * h;
    let c2 = 12.0 * h * h;
    for i in 0..=n {
        if i >= 2 && i + 2 <= n {
            d1[i] = (-f[i + 2] + f[i + 1] * 8.0 - f[i - 1] * 8.0 + f[i - 2]) / c1;
            d2[i] = (-f[i + 2] + f[i + 1] * 16.0 - f[i] * 30.0 + f[i - 1] * 16.0 - f[i - 2]) / c2;
        }
    }
    let one_sided = |g: &dyn Fn(usize) -> Vec3, sign: f64| -> [(Vec3, Vec3); 2] {
        let e0 = (g(0) * -25.0 + g(1) * 48.0 - g(2) * 36.0 + g(3) * 16.0 - g(4) * 3.0) / c1 * sign;
        let s0 = (g(0) * 45.0 - g(1) * 154.0 + g(2) * 214.0 - g(3) * 156.0 + g(4) * 61.0 - g(5) * 10.0) / c2;
        let e1 = (g(0) * -3.0 - g(1) * 10.0 + g(2) * 18.0 - g(3) * 6.0 + g(4)) / c1 * sign;
        let s1 = (g(0) * 10.0 - g(1) * 15.0 - g(2) * 4.0 + g(3) * 14.0 - g(4) * 6.0 + g(5)) / c2;
        [(e0, s0), (e1, s1)]
    };
    let lo = one_sided(&|k| f[k], 1.0);
    let hi = one_sided(&|k| f[n - k], -1.0);
    for k in 0..2 {
        d1[k] = lo[k].0;
        d2[k] = lo[k].1;
        d1[n - k] = hi[k].0;
        d2[n - k] = hi[k].1;
    }
    (d1, d2)
}

/// Curve through the samples with fourth-order finite-difference jets, linear in between.
pub fn curve_from_samples(pts: Vec<Vec3>) -> Curve {
    let n = pts.len() - 1;
    let h = 1.0 / n as f64;
    let (d1, d2) = derivatives(&pts, h);
    Curve::new("samples", &[("n", n as f64)], move |t| {
        let x = t * n as f64;
        let i = (x.floor() as usize).min(n - 1);
        let s = x - i as f64;
        let lerp = |a: &Vec3, b: &Vec3| a * (1.0 - s) + b * s;
        if s == 0.0 {
            return CurveJet::new(pts[i], d1[i], d2[i]);
        }
        CurveJet::new(lerp(&pts[i], &pts[i + 1]).normalize(), lerp(&d1[i], &d1[i + 1]), lerp(&d2[i], &d2[i + 1]))
    })
}

pub fn format_samples(pts: &[Vec3]) -> String {
    let mut s = format!("samples {}\n", pts.len() - 1);
    for p in pts {
        s.push_str(&format!("{:.17e} {:.17e} {:.17e}\n", p.x, p.y, p.z));
    }
    s
}
