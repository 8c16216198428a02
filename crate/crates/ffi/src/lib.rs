//! C interface to `lconvex`.
//!
//! Curves and families are opaque heap handles released with `lc_curve_free` and
//! `lc_family_free`. Every fallible call returns an `LcStatus`; on failure the message is
//! available from `lc_last_error_message` on the same thread until the next failing call.

use lconvex::config::RunConfig;
use lconvex::descriptor::Descriptor;
use lconvex::families::{g_plus_2, nu, FamilyGrid};
use lconvex::invariants::{classify, count_f2, degree_x, is_flower, phi, ComponentClass};
use lconvex::sphere::sampled::curve_from_samples;
use lconvex::sphere::{local_convexity_margin, Curve, Vec3};
use lconvex::LcError;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Opaque curve handle.
pub struct LcCurve(Curve);

/// Opaque family handle.
pub struct LcFamily(FamilyGrid);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcStatus {
    Ok = 0,
    NullPointer = 1,
    Panic = 2,
    InvalidUtf8 = 3,
    DegenerateJet = 10,
    NotARotation = 11,
    StepTooCoarse = 12,
    NonPositiveSpeed = 13,
    NotClosed = 14,
    NotImmersed = 15,
    BreakpointMismatch = 16,
    FlowerOnPath = 17,
    DomainError = 18,
    IncompatibleEndpoint = 19,
    NotLocallyConvex = 20,
    GapTooWide = 21,
    TangentialCrossing = 22,
    WrongCrossingCount = 23,
    NonIntegerDegree = 24,
    MaskBoundaryZero = 25,
    Parse = 26,
    Config = 27,
}

impl From<&LcError> for LcStatus {
    fn from(e: &LcError) -> Self {
        match e {
            LcError::DegenerateJet { .. } => LcStatus::DegenerateJet,
            LcError::NotARotation { .. } => LcStatus::NotARotation,
            LcError::StepTooCoarse { .. } => LcStatus::StepTooCoarse,
            LcError::NonPositiveSpeed(_) => LcStatus::NonPositiveSpeed,
            LcError::NotClosed(_) => LcStatus::NotClosed,
            LcError::NotImmersed { .. } => LcStatus::NotImmersed,
            LcError::BreakpointMismatch { .. } => LcStatus::BreakpointMismatch,
            LcError::FlowerOnPath { .. } => LcStatus::FlowerOnPath,
            LcError::DomainError(_) => LcStatus::DomainError,
            LcError::IncompatibleEndpoint { .. } => LcStatus::IncompatibleEndpoint,
            LcError::NotLocallyConvex { .. } => LcStatus::NotLocallyConvex,
            LcError::GapTooWide { .. } => LcStatus::GapTooWide,
            LcError::TangentialCrossing { .. } => LcStatus::TangentialCrossing,
            LcError::WrongCrossingCount { .. } => LcStatus::WrongCrossingCount,
            LcError::NonIntegerDegree { .. } => LcStatus::NonIntegerDegree,
            LcError::MaskBoundaryZero { .. } => LcStatus::MaskBoundaryZero,
            LcError::Parse(_) => LcStatus::Parse,
            LcError::Config(_) => LcStatus::Config,
        }
    }
}

/// Component of a closed locally convex curve.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcComponent {
    MinusConvex = 0,
    Plus = 1,
    MinusNonConvex = 2,
}

impl From<ComponentClass> for LcComponent {
    fn from(c: ComponentClass) -> Self {
        match c {
            ComponentClass::MinusConvex => LcComponent::MinusConvex,
            ComponentClass::Plus => LcComponent::Plus,
            ComponentClass::MinusNonConvex => LcComponent::MinusNonConvex,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Failure {
    Null,
    Utf8,
    Lc(LcError),
}

impl From<LcError> for Failure {
    fn from(e: LcError) -> Self {
        Failure::Lc(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs `f`, converting errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Outcome) -> LcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LcStatus::Ok,
        Ok(Err(Failure::Null)) => {
            set_error("null pointer argument".into());
            LcStatus::NullPointer
        }
        Ok(Err(Failure::Utf8)) => {
            set_error("string argument is not valid UTF-8".into());
            LcStatus::InvalidUtf8
        }
        Ok(Err(Failure::Lc(e))) => {
            set_error(e.to_string());
            LcStatus::from(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            LcStatus::Panic
        }
    }
}

unsafe fn get<'a, T>(p: *const T) -> std::result::Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null)
}

unsafe fn put<T>(out: *mut T, v: T) -> Outcome {
    if out.is_null() {
        return Err(Failure::Null);
    }
    out.write(v);
    Ok(())
}

unsafe fn text<'a>(s: *const c_char) -> std::result::Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::Null);
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure::Utf8)
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn lc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or NULL. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn lc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// νc, the circle traversed c times (c > 0).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lc_curve_nu(c: f64, out: *mut *mut LcCurve) -> LcStatus {
    guard(|| {
        let curve = nu(c)?;
        put(out, Box::into_raw(Box::new(LcCurve(curve))))
    })
}

/// Member (s1, s2) of the 𝐠₊,₂ family; both parameters in [0, 1].
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lc_curve_g_plus_2(s1: f64, s2: f64, out: *mut *mut LcCurve) -> LcStatus {
    guard(|| {
        for s in [s1, s2] {
            if !(0.0..=1.0).contains(&s) {
                return Err(LcError::DomainError(format!("parameter {s} outside [0, 1]")).into());
            }
        }
        put(out, Box::into_raw(Box::new(LcCurve(g_plus_2(s1, s2)))))
    })
}

/// Curve from a descriptor such as `"g_plus_2 s1=0.3 s2=0.4"` or `"flower petals=3"`.
///
/// # Safety
/// `desc` must be a nul-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lc_curve_from_descriptor(desc: *const c_char, out: *mut *mut LcCurve) -> LcStatus {
    guard(|| {
        let curve = Descriptor::parse(text(desc)?)?.curve()?;
        put(out, Box::into_raw(Box::new(LcCurve(curve))))
    })
}

/// Curve through `n_points` uniform samples at t = i/(n_points − 1), packed as x, y, z triples.
///
/// # Safety
/// `xyz` must point to `3 * n_points` doubles and `out` be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lc_curve_from_samples(xyz: *const f64, n_points: usize, out: *mut *mut LcCurve) -> LcStatus {
    guard(|| {
        if xyz.is_null() {
            return Err(Failure::Null);
        }
        if n_points < 6 {
            return Err(LcError::Parse(format!("need at least 6 samples, got {n_points}")).into());
        }
        let vals = std::slice::from_raw_parts(xyz, 3 * n_points);
        let mut pts = Vec::with_capacity(n_points);
        for (i, c) in vals.chunks(3).enumerate() {
            let v = Vec3::new(c[0], c[1], c[2]);
            let norm = v.norm();
            if !((norm - 1.0).abs() <= 1e-3) {
                return Err(LcError::Parse(format!("sample {i} has norm {norm}")).into());
            }
            pts.push(v / norm);
        }
        put(out, Box::into_raw(Box::new(LcCurve(curve_from_samples(pts)))))
    })
}

/// Releases a curve. NULL is ignored.
///
/// # Safety
/// `c` must come from an `lc_curve_*` constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn lc_curve_free(c: *mut LcCurve) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Point, velocity and acceleration at t, written to `out[0..9]`.
///
/// # Safety
/// `c` must be a live handle and `out` valid for 9 doubles.
#[no_mangle]
pub unsafe extern "C" fn lc_curve_eval(c: *const LcCurve, t: f64, out: *mut f64) -> LcStatus {
    guard(|| {
        let c = get(c)?;
        if out.is_null() {
            return Err(Failure::Null);
        }
        let j = c.0.eval(t);
        let o = std::slice::from_raw_parts_mut(out, 9);
        for (k, v) in [j.p, j.v, j.a].iter().enumerate() {
            o[3 * k..3 * k + 3].copy_from_slice(v.as_slice());
        }
        Ok(())
    })
}

/// Smallest normalised det(γ, γ′, γ″) over `samples` uniform samples.
///
/// # Safety
/// `c` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lc_curve_margin(c: *const LcCurve, samples: usize, out: *mut f64) -> LcStatus {
    guard(|| {
        let c = get(c)?;
        if samples < 2 {
            return Err(LcError::Config("samples must be at least 2".into()).into());
        }
        put(out, local_convexity_margin(&c.0, samples))
    })
}

/// # Safety
/// `c` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lc_curve_classify(c: *const LcCurve, out: *mut LcComponent) -> LcStatus {
    guard(|| {
        let c = get(c)?;
        put(out, classify(&c.0)?.into())
    })
}

/// Endpoint of the lifted frame path in S³ as (w, x, y, z).
///
/// # Safety
/// `c` must be a live handle and `out` valid for 4 doubles.
#[no_mangle]
pub unsafe extern "C" fn lc_curve_phi(c: *const LcCurve, out: *mut f64) -> LcStatus {
    guard(|| {
        let c = get(c)?;
        if out.is_null() {
            return Err(Failure::Null);
        }
        let q = phi(&c.0)?;
        std::slice::from_raw_parts_mut(out, 4).copy_from_slice(&[q.w, q.x, q.y, q.z]);
        Ok(())
    })
}

/// Writes the petal count of a flower, or 0 when the curve is not one.
///
/// # Safety
/// `c` must be a live handle and `petals` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lc_curve_is_flower(c: *const LcCurve, petals: *mut u32) -> LcStatus {
    guard(|| {
        let c = get(c)?;
        let n = is_flower(&c.0)?.map_or(0, |r| r.petal_count as u32);
        put(petals, n)
    })
}

/// Family from a descriptor such as `"g_plus_2 grid=32x32"`; without `grid=` the default 128×128 is used.
///
/// # Safety
/// `desc` must be a nul-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lc_family_from_descriptor(desc: *const c_char, out: *mut *mut LcFamily) -> LcStatus {
    guard(|| {
        let d = Descriptor::parse(text(desc)?)?;
        if !d.is_family() {
            return Err(LcError::Parse(format!("`{}` is not a family", d.tag)).into());
        }
        let f = d.family(RunConfig::default().grid)?;
        put(out, Box::into_raw(Box::new(LcFamily(f))))
    })
}

/// Releases a family. NULL is ignored.
///
/// # Safety
/// `f` must come from `lc_family_from_descriptor` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn lc_family_free(f: *mut LcFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Degree of the frame map at the basepoint, on the family grid with as many time steps as
/// the first grid dimension. `integral` may be NULL.
///
/// # Safety
/// `f` must be a live handle, `degree` valid for writes, `integral` NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lc_family_degree(f: *const LcFamily, degree: *mut i64, integral: *mut f64) -> LcStatus {
    guard(|| {
        let f = get(f)?;
        if degree.is_null() {
            return Err(Failure::Null);
        }
        let r = degree_x(&f.0, f.0.m1)?;
        degree.write(r.value);
        if !integral.is_null() {
            integral.write(r.integral);
        }
        Ok(())
    })
}

/// Signed flower count of the family.
///
/// # Safety
/// `f` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lc_family_count_f2(f: *const LcFamily, out: *mut i64) -> LcStatus {
    guard(|| {
        let f = get(f)?;
        put(out, count_f2(&f.0)?.value)
    })
}

/// Grid dimensions of the family.
///
/// # Safety
/// `f` must be a live handle, `m1` and `m2` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lc_family_grid(f: *const LcFamily, m1: *mut usize, m2: *mut usize) -> LcStatus {
    guard(|| {
        let f = get(f)?;
        put(m1, f.0.m1)?;
        put(m2, f.0.m2)
    })
}
