//! The flower residual ψ₂ₖ and the flower test.

use super::passages::{passages, PassageKind};
use super::shape::{require_closed, require_margin, self_intersection};
use crate::error::{LcError, Result};
use crate::families::{g_plus_2, G_PLUS_2_FLOWER};
use crate::sphere::{lift_auto, Curve, DEFAULT_SAMPLES};
use serde::Serialize;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Distance to e₁ below which a passage counts as going through e₁.
pub const THROUGH_E1: f64 = 1e-6;

/// ψ₂ₖ with its diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Psi {
    pub values: Vec<f64>,
    pub times: Vec<f64>,
    /// Some passage touches the plane z = 0 instead of crossing it.
    pub degenerate: bool,
    /// The tangent arguments at the crossings increase strictly inside (0, π).
    pub ordered: bool,
}

impl Psi {
    pub fn norm(&self) -> f64 {
        self.values.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Inside the chart on which ψ₂ₖ is evaluated.
    pub fn in_chart(&self) -> bool {
        self.ordered && !self.degenerate
    }
}

/// Argument of (−1)ⁱγ′(t) in the (e₂, e₃) plane.
pub fn tangent_argument(c: &Curve, t: f64, i: usize) -> f64 {
    let v = c.eval(t).v;
    let s = if i % 2 == 0 { 1.0 } else { -1.0 };
    (s * v.z).atan2(s * v.y)
}

fn increasing_in_open_half_turn(th: &[f64]) -> bool {
    th.iter().all(|&x| x > 0.0 && x < PI) && th.windows(2).all(|w| w[0] < w[1])
}

/// ψ₂ₖ(γ) = (⟨γ(t̂ᵢ), e₂⟩)ᵢ over the 2k passages near e₁.
pub fn psi(c: &Curve, k: usize) -> Result<Psi> {
    let ps = passages(c)?;
    let degenerate = ps.iter().any(|p| p.kind == PassageKind::Touch);
    if ps.len() != 2 * k || ps.iter().any(|p| p.kind == PassageKind::Multiple) {
        let found = ps.iter().map(|p| p.crossings.len().max(1)).sum();
        let degenerate = ps.iter().any(|p| p.kind == PassageKind::Touch && p.distance < THROUGH_E1);
        return Err(LcError::WrongCrossingCount { expected: 2 * k, found, degenerate });
    }
    let times: Vec<f64> = ps.iter().map(|p| p.time()).collect();
    let values = times.iter().map(|&t| c.point(t).y).collect();
    let th: Vec<f64> = times.iter().enumerate().map(|(i, &t)| tangent_argument(c, t, i + 1)).collect();
    Ok(Psi { values, times, degenerate, ordered: increasing_in_open_half_turn(&th) })
}

/// ψ₂ₖ where the curve lies in the evaluation chart, none elsewhere.
pub fn chart_psi(c: &Curve, k: usize) -> Option<Psi> {
    psi(c, k).ok().filter(Psi::in_chart)
}

pub fn chart_psi_norm(c: &Curve) -> Option<f64> {
    chart_psi(c, 1).map(|p| p.norm())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowerReport {
    pub petal_count: usize,
    pub times: Vec<f64>,
    pub residual: Vec<f64>,
    pub thetas: Vec<f64>,
    pub monotone_theta: bool,
}

/// Flower test: 2k passages through e₁ with increasing tangent arguments, the right component,
/// and no other self-intersection.
pub fn is_flower(c: &Curve) -> Result<Option<FlowerReport>> {
    require_closed(c)?;
    require_margin(c, 0.0)?;
    let through: Vec<f64> =
        passages(c)?.into_iter().filter(|p| p.distance < THROUGH_E1).map(|p| p.t_closest).collect();
    if through.len() % 2 == 1 {
        return Ok(None);
    }
    let k = through.len() / 2;
    let thetas: Vec<f64> = through.iter().enumerate().map(|(i, &t)| tangent_argument(c, t, i + 1)).collect();
    if !increasing_in_open_half_turn(&thetas) {
        return Ok(None);
    }
    let w = lift_auto(c, DEFAULT_SAMPLES)?.endpoint().w;
    let want = if k % 2 == 0 { -1.0 } else { 1.0 };
    if (w - want).abs() > 1e-5 {
        return Ok(None);
    }
    if self_intersection(c, DEFAULT_SAMPLES, 0.01, 1e-5, Some(0.01)).is_some() {
        return Ok(None);
    }
    let residual = through.iter().map(|&t| c.point(t).y).collect();
    Ok(Some(FlowerReport { petal_count: 2 * k + 1, times: through, residual, thetas, monotone_theta: true }))
}

static FLOWER: OnceLock<Result<(f64, f64)>> = OnceLock::new();

/// The zero of ψ₂ on the 𝐠₊,₂ chart: coarse scan, then Newton.
pub fn locate_g_plus_2_flower() -> Result<(f64, f64)> {
    FLOWER.get_or_init(|| locate_flower(48)).clone()
}

/// ψ₂ wherever there are exactly two visits, in the chart or not.
fn psi2(s1: f64, s2: f64) -> Option<[f64; 2]> {
    psi(&g_plus_2(s1, s2), 1).ok().map(|p| [p.values[0], p.values[1]])
}

fn locate_flower(m: usize) -> Result<(f64, f64)> {
    use rayon::prelude::*;
    let h0 = 1.0 / m as f64;
    // Cells whose centre visits e₁ twice, refined on a subgrid since the chart is narrow.
    let coarse: Vec<(f64, f64)> = (0..m * m)
        .into_par_iter()
        .map(|k| ((k / m) as f64 * h0 + 0.5 * h0, (k % m) as f64 * h0 + 0.5 * h0))
        .filter(|&(s1, s2)| psi2(s1, s2).is_some())
        .collect();
    let sub = 8;
    let best = coarse
        .par_iter()
        .flat_map_iter(|&(c1, c2)| {
            (0..sub * sub).map(move |k| {
                let f = |i: usize| (i as f64 + 0.5) / sub as f64 - 0.5;
                (c1 + 2.0 * h0 * f(k / sub), c2 + 2.0 * h0 * f(k % sub))
            })
        })
        .filter_map(|(s1, s2)| chart_psi(&g_plus_2(s1, s2), 1).map(|p| (p.norm(), s1, s2)))
        .min_by(|a, b| a.0.total_cmp(&b.0));
    let (_, mut s1, mut s2) = best.ok_or(LcError::DomainError("no evaluable point on the g_plus_2 chart".into()))?;
    let lost = || LcError::DomainError("Newton lost the two visits to e1".into());
    let h = 1e-6;
    for _ in 0..40 {
        let f = psi2(s1, s2).ok_or_else(lost)?;
        if f[0].hypot(f[1]) < 1e-13 {
            break;
        }
        let fu = psi2(s1 + h, s2).ok_or_else(lost)?;
        let fv = psi2(s1, s2 + h).ok_or_else(lost)?;
        let (a, b) = ((fu[0] - f[0]) / h, (fv[0] - f[0]) / h);
        let (c, d) = ((fu[1] - f[1]) / h, (fv[1] - f[1]) / h);
        let det = a * d - b * c;
        s1 -= (d * f[0] - b * f[1]) / det;
        s2 -= (-c * f[0] + a * f[1]) / det;
    }
    if chart_psi(&g_plus_2(s1, s2), 1).is_none() {
        return Err(LcError::DomainError(format!("zero of psi at ({s1}, {s2}) is outside the chart")));
    }
    Ok((s1.rem_euclid(1.0), s2))
}

/// Distance between the located flower and the analytic one.
pub fn flower_location_error() -> Result<f64> {
    let (s1, s2) = locate_g_plus_2_flower()?;
    Ok((s1 - G_PLUS_2_FLOWER.0).hypot(s2 - G_PLUS_2_FLOWER.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::nu;

    #[test]
    fn flower_of_g_plus_2() {
        let (s1, s2) = G_PLUS_2_FLOWER;
        let c = g_plus_2(s1, s2);
        let r = is_flower(&c).unwrap().expect("flower");
        assert_eq!(r.petal_count, 3);
        let p = psi(&c, 1).unwrap();
        assert!(p.norm() < 1e-8 && p.in_chart());
    }

    #[test]
    fn mirror_point_is_not_a_flower() {
        let c = g_plus_2(0.25, 0.25);
        let p = psi(&c, 1).unwrap();
        assert!(p.norm() < 1e-8);
        assert!(!p.ordered);
        assert!(is_flower(&c).unwrap().is_none());
    }

    #[test]
    fn circles() {
        assert_eq!(is_flower(&nu(1.0).unwrap()).unwrap().unwrap().petal_count, 1);
        assert!(is_flower(&nu(2.0).unwrap()).unwrap().is_none());
        assert!(is_flower(&nu(3.0).unwrap()).unwrap().is_none());
        let e = psi(&nu(2.0).unwrap(), 1).unwrap_err();
        assert_eq!(e, LcError::WrongCrossingCount { expected: 2, found: 1, degenerate: true });
        let p = psi(&nu(3.0).unwrap(), 1).unwrap();
        assert!(p.degenerate && p.norm() < 1e-12);
    }

    #[test]
    fn located_flower_matches_closed_form() {
        assert!(flower_location_error().unwrap() < 1e-8);
    }
}
