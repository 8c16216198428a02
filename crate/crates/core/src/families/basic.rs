use crate::error::{LcError, Result};
use crate::sphere::{e1, immersion_frame, Curve, CurveJet, RotMat, Vec3, DEFAULT_SAMPLES};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Jet of ν₁ at parameter x.
#[inline]
pub fn nu1_jet(x: f64) -> CurveJet {
    let th = 2.0 * PI * x;
    let (s, c) = th.sin_cos();
    let w = 2.0 * PI;
    CurveJet::new(
        Vec3::new((1.0 + c) / 2.0, FRAC_1_SQRT_2 * s, (1.0 - c) / 2.0),
        Vec3::new(-s / 2.0, FRAC_1_SQRT_2 * c, s / 2.0) * w,
        Vec3::new(-c / 2.0, -FRAC_1_SQRT_2 * s, c / 2.0) * (w * w),
    )
}

/// Jet of ν_c at t.
#[inline]
pub fn nu_jet(c: f64, t: f64) -> CurveJet {
    nu1_jet(c * t).rescale(c)
}

/// ν_c(t) = ν₁(ct).
pub fn nu(c: f64) -> Result<Curve> {
    if !(c > 0.0) {
        return Err(LcError::NonPositiveSpeed(c));
    }
    Ok(Curve::new("nu", &[("c", c)], move |t| nu_jet(c, t)))
}

/// t ↦ (cos 2πt, sin 2πt, 0).
pub fn great_circle() -> Curve {
    Curve::new("great_circle", &[], |t| {
        let w = 2.0 * PI;
        let (s, c) = (w * t).sin_cos();
        CurveJet::new(Vec3::new(c, s, 0.0), Vec3::new(-s, c, 0.0) * w, Vec3::new(-c, -s, 0.0) * (w * w))
    })
}

fn require_closed(c: &Curve) -> Result<()> {
    if c.is_closed() {
        Ok(())
    } else {
        Err(LcError::NotClosed(c.source().to_string()))
    }
}

/// γ₁ ∗ γ₂: γ₁(2t) on [0, 1/2], γ₂(2t − 1) on [1/2, 1].
pub fn concat(c1: &Curve, c2: &Curve) -> Result<Curve> {
    require_closed(c1)?;
    require_closed(c2)?;
    let (a, b) = (c1.clone(), c2.clone());
    let params = [("left", 0.0), ("right", 0.0)];
    let mut out = Curve::new("concat", &params, move |t| {
        if t < 0.5 {
            a.eval(2.0 * t).rescale(2.0)
        } else {
            b.eval(2.0 * t - 1.0).rescale(2.0)
        }
    });
    out.meta.source.params.clear();
    out.meta.source.tag = format!("concat({}; {})", c1.source(), c2.source());
    Ok(out)
}

/// Frame 𝔉(t) and its first two derivatives by finite differences with step h.
pub fn frame_derivatives(c: &Curve, t: f64, h: f64) -> Result<(RotMat, RotMat, RotMat)> {
    let f = |x: f64| immersion_frame(&c.eval(x));
    if t - h >= 0.0 && t + h <= 1.0 {
        let (fm, f0, fp) = (f(t - h)?, f(t)?, f(t + h)?);
        return Ok((f0, (fp - fm) / (2.0 * h), (fp - f0 * 2.0 + fm) / (h * h)));
    }
    let s = if t - h < 0.0 { 1.0 } else { -1.0 };
    let g: Vec<RotMat> = (0..4).map(|k| f(t + s * k as f64 * h)).collect::<Result<_>>()?;
    let d1 = (g[0] * -3.0 + g[1] * 4.0 - g[2]) / (2.0 * h) * s;
    let d2 = (g[0] * 2.0 - g[1] * 5.0 + g[2] * 4.0 - g[3]) / (h * h);
    Ok((g[0], d1, d2))
}

pub const FRAME_STEP: f64 = 1.0 / (8.0 * DEFAULT_SAMPLES as f64);

/// Checks |γ′| ≥ 1e−8 at n+1 uniform samples.
pub fn check_immersed(c: &Curve, n: usize) -> Result<()> {
    for i in 0..=n {
        let t = i as f64 / n as f64;
        let speed = c.eval(t).v.norm();
        if !(speed >= 1e-8) {
            return Err(LcError::NotImmersed { t, speed });
        }
    }
    Ok(())
}

/// Jet of t ↦ 𝔉_γ(τ(t)) ν(t) with τ affine of slope k.
fn framed_jet(c: &Curve, tau: f64, k: f64, nu: &CurveJet) -> CurveJet {
    let (f, f1, f2) = frame_derivatives(c, tau, FRAME_STEP).expect("immersion checked at construction");
    let (f1, f2) = (f1 * k, f2 * (k * k));
    CurveJet::new(f * nu.p, f1 * nu.p + f * nu.v, f2 * nu.p + f1 * nu.v * 2.0 + f * nu.a)
}

/// (F_n γ)(t) = 𝔉_γ(t) ν_n(t).
pub fn loop_add(c: &Curve, n: u32) -> Result<Curve> {
    check_immersed(c, DEFAULT_SAMPLES)?;
    let base = c.clone();
    let nf = n as f64;
    let mut out = Curve::new("loop_add", &[("n", nf)], move |t| framed_jet(&base, t, 1.0, &nu_jet(nf, t)));
    out.meta.source.tag = format!("loop_add({})", c.source());
    Ok(out)
}

fn require_even(n: u32) -> Result<()> {
    if n % 2 == 0 && n > 0 {
        Ok(())
    } else {
        Err(LcError::DomainError(format!("loop count n = {n} must be even and positive")))
    }
}

fn junction_check(t: f64, left: CurveJet, right: CurveJet) -> Result<()> {
    let gap = (left.p - right.p).norm();
    if gap > 1e-6 {
        return Err(LcError::BreakpointMismatch { t, gap });
    }
    Ok(())
}

/// First homotopy pushing the loops of F₂ₙγ towards t = 0.
pub fn homotopy_h1(c: &Curve, n: u32, s: f64) -> Result<Curve> {
    require_even(n)?;
    check_immersed(c, DEFAULT_SAMPLES)?;
    let m = 2.0 * n as f64;
    let k = 2.0 / (2.0 - s);
    let branch = {
        let c = c.clone();
        move |t: f64| -> CurveJet {
            if t <= s / 2.0 {
                nu_jet(m, t)
            } else {
                framed_jet(&c, (2.0 * t - s) / (2.0 - s), k, &nu_jet(m, t))
            }
        }
    };
    let tj = s / 2.0;
    junction_check(tj, nu_jet(m, tj), framed_jet(c, 0.0, k, &nu_jet(m, tj)))?;
    let mut out = Curve::new("H1", &[("n", n as f64), ("s", s)], branch);
    out.meta.source.tag = format!("H1({})", c.source());
    Ok(out)
}

/// Second homotopy, ending at ν₂ₙ ∗ γ.
pub fn homotopy_h2(c: &Curve, n: u32, s: f64) -> Result<Curve> {
    require_even(n)?;
    check_immersed(c, DEFAULT_SAMPLES)?;
    let m = 2.0 * n as f64;
    let k = 2.0 / (2.0 - s);
    let cc = c.clone();
    let eval = move |t: f64| -> CurveJet {
        if t <= 0.5 {
            nu_jet(m, k * t).rescale(k)
        } else if t <= 1.0 - s / 2.0 {
            framed_jet(&cc, 2.0 * t - 1.0, 2.0, &nu_jet(m, k * t).rescale(k))
        } else {
            cc.eval(2.0 * t - 1.0).rescale(2.0)
        }
    };
    junction_check(0.5, nu_jet(m, k * 0.5), framed_jet(c, 0.0, 2.0, &nu_jet(m, k * 0.5)))?;
    let t2 = 1.0 - s / 2.0;
    if t2 > 0.5 {
        junction_check(t2, framed_jet(c, 2.0 * t2 - 1.0, 2.0, &nu_jet(m, k * t2)), c.eval(2.0 * t2 - 1.0))?;
    }
    let mut out = Curve::new("H2", &[("n", n as f64), ("s", s)], eval);
    out.meta.source.tag = format!("H2({})", c.source());
    Ok(out)
}

/// Result of the loop-count bound of the loop-addition lemma.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopBound {
    pub n: u32,
    pub c: f64,
    pub eps: f64,
}

/// Max over samples of the Frobenius norms of 𝔉′ and 𝔉″.
pub fn frame_derivative_bound(c: &Curve, samples: usize) -> Result<f64> {
    check_immersed(c, samples)?;
    let mut best: f64 = 0.0;
    for i in 0..=samples {
        let (_, d1, d2) = frame_derivatives(c, i as f64 / samples as f64, FRAME_STEP)?;
        best = best.max(d1.norm()).max(d2.norm());
    }
    Ok(best)
}

/// Largest ε in {2⁻¹, …, 2⁻²⁰} passing the randomized perturbation probe at ν₁.
pub fn nu1_perturbation_radius(seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut unit = move || loop {
        let v = Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return v / n;
        }
    };
    let dirs: Vec<(Vec3, Vec3)> = (0..1024).map(|_| (unit(), unit())).collect();
    let jets: Vec<CurveJet> = (0..1024).map(|i| nu1_jet(i as f64 / 1024.0)).collect();
    for k in 1..=20 {
        let eps = 0.5f64.powi(k);
        let ok = jets.iter().all(|j| {
            dirs.iter().all(|(w1, w2)| j.p.dot(&(j.v + w1 * eps).cross(&(j.a + w2 * eps))) > 0.0)
        });
        if ok {
            return eps;
        }
    }
    0.5f64.powi(20)
}

/// Least even n with n > 20 C / ε over the given curves.
pub fn loop_bound_curves(curves: &[Curve], seed: u64) -> Result<LoopBound> {
    use rayon::prelude::*;
    let cs: Vec<f64> = curves.par_iter().map(|c| frame_derivative_bound(c, DEFAULT_SAMPLES)).collect::<Result<_>>()?;
    let c = cs.into_iter().fold(1.0f64, f64::max);
    let eps = nu1_perturbation_radius(seed);
    let x = 20.0 * c / eps;
    let mut n = x.floor() as u32 + 1;
    if n % 2 == 1 {
        n += 1;
    }
    Ok(LoopBound { n, c, eps })
}

pub fn closed_at_e1(j: &CurveJet) -> bool {
    (j.p - e1()).norm() < 1e-8
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::{e2, local_convexity_margin};

    #[test]
    fn nu1_boundary_conditions() {
        let c = nu(1.0).unwrap();
        let j = c.eval(0.0);
        assert!((j.p - e1()).norm() < 1e-15);
        assert!(j.v.normalize().dot(&e2()) > 1.0 - 1e-15);
        assert!(c.is_closed());
        assert!(!nu(1.5).unwrap().is_closed());
    }

    #[test]
    fn nu1_lies_on_c0() {
        let c = nu(1.0).unwrap();
        for i in 0..=1000 {
            let p = c.point(i as f64 / 1000.0);
            assert!((p.x + p.z - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn nu_rejects_nonpositive_speed() {
        assert!(matches!(nu(0.0), Err(LcError::NonPositiveSpeed(_))));
    }

    #[test]
    fn concat_nu1_nu1_is_nu2() {
        let n1 = nu(1.0).unwrap();
        let c = concat(&n1, &n1).unwrap();
        let n2 = nu(2.0).unwrap();
        for i in 0..=999 {
            let t = i as f64 / 999.0;
            let (a, b) = (c.eval(t), n2.eval(t));
            assert!((a.p - b.p).norm() < 1e-10 && (a.v - b.v).norm() < 1e-9 && (a.a - b.a).norm() < 1e-7);
        }
    }

    #[test]
    fn concat_requires_closed() {
        let open = nu(0.5).unwrap();
        assert!(matches!(concat(&open, &nu(1.0).unwrap()), Err(LcError::NotClosed(_))));
    }

    #[test]
    fn frame_derivatives_of_nu1() {
        let c = nu(1.0).unwrap();
        let (_, d1, d2) = frame_derivatives(&c, 0.3, FRAME_STEP).unwrap();
        let (_, e1_, e2_) = frame_derivatives(&c, 0.0, FRAME_STEP).unwrap();
        assert!((d1.norm() - e1_.norm()).abs() < 1e-5);
        assert!((d2.norm() - e2_.norm()).abs() / d2.norm() < 1e-4);
    }

    #[test]
    fn loop_add_nu1_two() {
        let c = loop_add(&nu(1.0).unwrap(), 2).unwrap();
        assert!(c.is_closed());
        assert!(local_convexity_margin(&c, 4096) > 0.0);
    }

    #[test]
    fn loop_add_rejects_constant_curve() {
        let c = Curve::new("point", &[], |_| CurveJet::new(e1(), Vec3::zeros(), Vec3::zeros()));
        assert!(matches!(loop_add(&c, 2), Err(LcError::NotImmersed { .. })));
    }

    #[test]
    fn perturbation_radius_is_half() {
        assert_eq!(nu1_perturbation_radius(0), 0.5);
    }

    #[test]
    fn odd_loop_count_rejected() {
        assert!(homotopy_h1(&nu(1.0).unwrap(), 3, 0.5).is_err());
    }
}
