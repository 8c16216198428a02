use super::{immersion_frame, rot_to_quat, Curve, RotMat, UnitQuat};
use crate::error::{LcError, Result};

pub const DEFAULT_SAMPLES: usize = 2048;
pub const MAX_SAMPLES: usize = 65536;

/// Continuous lift of the frame path t ↦ 𝔉(0)ᵀ𝔉(t) at t_i = i/n.
#[derive(Debug, Clone)]
pub struct SampledLift {
    pub n: usize,
    pub q: Vec<UnitQuat>,
}

impl SampledLift {
    pub fn endpoint(&self) -> UnitQuat {
        self.q[self.n]
    }

    /// Every `step`-th sample.
    pub fn subsample(&self, step: usize) -> SampledLift {
        assert!(step > 0 && self.n % step == 0);
        SampledLift { n: self.n / step, q: self.q.iter().step_by(step).copied().collect() }
    }
}

pub fn lift_frames(c: &Curve, n: usize) -> Result<SampledLift> {
    let f0 = immersion_frame(&c.eval(0.0))?;
    let base: RotMat = f0.transpose();
    let mut q = Vec::with_capacity(n + 1);
    q.push(UnitQuat::ONE);
    for i in 1..=n {
        let fr = immersion_frame(&c.eval(i as f64 / n as f64))?;
        let mut qi = rot_to_quat(&(base * fr))?;
        let prev = q[i - 1];
        if qi.dot(&prev) < 0.0 {
            qi = qi.neg();
        }
        let jump = qi.dist(&prev);
        if jump >= 0.5 {
            return Err(LcError::StepTooCoarse { n, index: i, jump });
        }
        q.push(qi);
    }
    Ok(SampledLift { n, q })
}

/// Lift starting at `n0` samples and doubling up to `MAX_SAMPLES` while steps are too coarse.
pub fn lift_auto(c: &Curve, n0: usize) -> Result<SampledLift> {
    let mut n = n0.max(1);
    loop {
        match lift_frames(c, n) {
            Err(LcError::StepTooCoarse { .. }) if n * 2 <= MAX_SAMPLES => n *= 2,
            r => return r,
        }
    }
}
