use super::{e1, immersion_frame, CurveJet, RotMat};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

type Eval = dyn Fn(f64) -> CurveJet + Send + Sync;

/// Family tag and parameters a curve was built from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Source {
    pub tag: String,
    pub params: Vec<(String, f64)>,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveMeta {
    pub closed_in_l: bool,
    pub source: Source,
}

/// A curve [0,1] → S² given by its jet evaluator.
#[derive(Clone)]
pub struct Curve {
    eval: Arc<Eval>,
    pub meta: CurveMeta,
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Curve").field("meta", &self.meta).finish()
    }
}

impl Curve {
    pub fn new<F>(tag: &str, params: &[(&str, f64)], f: F) -> Curve
    where
        F: Fn(f64) -> CurveJet + Send + Sync + 'static,
    {
        let source = Source {
            tag: tag.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        };
        let eval: Arc<Eval> = Arc::new(f);
        let closed_in_l = endpoint_closed(&*eval);
        Curve { eval, meta: CurveMeta { closed_in_l, source } }
    }

    /// Evaluate at t, clamped to [0,1].
    #[inline]
    pub fn eval(&self, t: f64) -> CurveJet {
        (self.eval)(t.clamp(0.0, 1.0))
    }

    pub fn point(&self, t: f64) -> super::Vec3 {
        self.eval(t).p
    }

    pub fn is_closed(&self) -> bool {
        self.meta.closed_in_l
    }

    pub fn source(&self) -> &Source {
        &self.meta.source
    }

    /// Samples γ(i/n), i = 0..=n.
    pub fn sample_points(&self, n: usize) -> Vec<super::Vec3> {
        (0..=n).map(|i| self.point(i as f64 / n as f64)).collect()
    }

    /// Polyline length estimate from `n` chords.
    pub fn length(&self, n: usize) -> f64 {
        let pts = self.sample_points(n);
        pts.windows(2).map(|w| (w[1] - w[0]).norm()).sum()
    }
}

fn endpoint_closed(f: &Eval) -> bool {
    let ok = |j: CurveJet| -> bool {
        if !j.p.iter().all(|x| x.is_finite()) || (j.p - e1()).norm() >= 1e-8 {
            return false;
        }
        match immersion_frame(&j) {
            Ok(fr) => (fr - RotMat::identity()).abs().max() < 1e-6,
            Err(_) => false,
        }
    };
    ok(f(0.0)) && ok(f(1.0))
}

/// Minimum of det(γ, γ′, γ″) over the samples i/n, with the index where it occurs.
pub fn local_convexity_margin_at(c: &Curve, n: usize) -> (f64, usize) {
    let mut best = (f64::INFINITY, 0);
    for i in 0..=n {
        let d = c.eval(i as f64 / n as f64).det();
        if d < best.0 || d.is_nan() {
            best = (d, i);
        }
    }
    best
}

pub fn local_convexity_margin(c: &Curve, n: usize) -> f64 {
    local_convexity_margin_at(c, n).0
}
