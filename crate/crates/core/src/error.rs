use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LcError {
    #[error("degenerate jet: smallest singular value {sigma:.3e}")]
    DegenerateJet { sigma: f64 },
    #[error("not a rotation: orthogonality residual {residual:.3e}")]
    NotARotation { residual: f64 },
    #[error("lift step too coarse at N = {n}: quaternion jump {jump:.3} at sample {index}")]
    StepTooCoarse { n: usize, index: usize, jump: f64 },
    #[error("non-positive speed c = {0}")]
    NonPositiveSpeed(f64),
    #[error("curve is not closed in L ({0})")]
    NotClosed(String),
    #[error("curve is not immersed near t = {t:.6} (|v| = {speed:.3e})")]
    NotImmersed { t: f64, speed: f64 },
    #[error("branches disagree by {gap:.3e} at t = {t:.6}")]
    BreakpointMismatch { t: f64, gap: f64 },
    #[error("path meets the flower set: min |psi| = {min_psi:.3e} at u = {u:.4}")]
    FlowerOnPath { u: f64, min_psi: f64 },
    #[error("point outside the domain: {0}")]
    DomainError(String),
    #[error("lift endpoint differs from the prescribed value by {distance:.3e}")]
    IncompatibleEndpoint { distance: f64 },
    #[error("not locally convex: margin {margin:.3e} at sample {index}")]
    NotLocallyConvex { index: usize, margin: f64 },
    #[error("no (a, b) confines the insert to [{lo}, {hi}]")]
    GapTooWide { lo: f64, hi: f64 },
    #[error("tangential crossing of the e3 plane at t = {t:.8}")]
    TangentialCrossing { t: f64 },
    #[error("expected {expected} passages near e1, found {found}")]
    WrongCrossingCount { expected: usize, found: usize, degenerate: bool },
    #[error("degree integral {value:.6} is not within 0.1 of an integer")]
    NonIntegerDegree { value: f64 },
    #[error("|psi| = {min_psi:.3e} on the boundary of the evaluable region")]
    MaskBoundaryZero { min_psi: f64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, LcError>;
