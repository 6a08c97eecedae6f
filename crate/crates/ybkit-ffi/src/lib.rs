//! C ABI for ybkit.
//!
//! Handles are opaque pointers created by `yb_handle_*` and released with
//! `yb_handle_free`. Every fallible call returns a `YbStatus`; on failure the
//! message is kept per thread and can be copied out with `yb_last_error`.

use num_complex::Complex64;
use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use ybkit::serial::HandleDescriptor;
use ybkit::series::{classify_scalar, Verdict};
use ybkit::solutions::{Family, SolutionHandle};
use ybkit::special::{j_invariant, kronecker_f, theta11, weierstrass_p, weierstrass_zeta, ModularParam};
use ybkit::verification::{all_pass, run_suite, SuiteConfig};
use ybkit::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidTau = 2,
    NonFinite = 3,
    PoleProximity = 4,
    NoConvergence = 5,
    InvalidParameter = 6,
    SizeMismatch = 7,
    WrongKind = 8,
    Singular = 9,
    Unstable = 10,
    Parse = 11,
    Io = 12,
    BufferTooSmall = 13,
    Panic = 14,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YbFamily {
    EllipticAybe = 0,
    EllipticCybe = 1,
    TrigAybe1 = 2,
    TrigAybe2 = 3,
    TrigAybe2Reduced = 4,
    TrigCybe1 = 5,
    TrigCybe2 = 6,
    ScalarKronecker = 7,
    ScalarTrig = 8,
    ScalarRational = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YbVerdict {
    RationalLike = 0,
    EllipticLike = 1,
    TrigonometricLike = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct YbComplex {
    pub re: f64,
    pub im: f64,
}

impl From<YbComplex> for Complex64 {
    fn from(z: YbComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl From<Complex64> for YbComplex {
    fn from(z: Complex64) -> Self {
        YbComplex { re: z.re, im: z.im }
    }
}

/// Opaque solution handle.
pub struct YbHandle {
    inner: SolutionHandle,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> YbStatus {
    match e {
        Error::InvalidTau(_) => YbStatus::InvalidTau,
        Error::NonFinite => YbStatus::NonFinite,
        Error::PoleProximity { .. } => YbStatus::PoleProximity,
        Error::NoConvergence(_) => YbStatus::NoConvergence,
        Error::InvalidParameter(_) => YbStatus::InvalidParameter,
        Error::SizeMismatch(..) => YbStatus::SizeMismatch,
        Error::WrongKind(_) => YbStatus::WrongKind,
        Error::Singular => YbStatus::Singular,
        Error::Unstable(_) => YbStatus::Unstable,
        Error::Parse(_) => YbStatus::Parse,
        Error::Io(_) => YbStatus::Io,
    }
}

/// Run `f`, translating errors and panics into status codes.
fn guarded<F>(f: F) -> YbStatus
where
    F: FnOnce() -> Result<(), YbStatus>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => YbStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            YbStatus::Panic
        }
    }
}

fn lift<T>(r: ybkit::Result<T>) -> Result<T, YbStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn null() -> YbStatus {
    set_error("null pointer argument".into());
    YbStatus::NullPointer
}

/// Create a handle. `d`, `r` and `tau` are used by the elliptic and Kronecker
/// families, `a` and `b` by the rational family; other arguments are ignored.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle pointer.
#[no_mangle]
pub unsafe extern "C" fn yb_handle_new(
    family: YbFamily,
    d: usize,
    r: usize,
    tau: YbComplex,
    a: YbComplex,
    b: YbComplex,
    out: *mut *mut YbHandle,
) -> YbStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null());
        }
        let tau = tau.into();
        let fam = match family {
            YbFamily::EllipticAybe => Family::EllipticAybe { d, r, tau },
            YbFamily::EllipticCybe => Family::EllipticCybe { d, r, tau },
            YbFamily::TrigAybe1 => Family::TrigAybe1,
            YbFamily::TrigAybe2 => Family::TrigAybe2,
            YbFamily::TrigAybe2Reduced => Family::TrigAybe2Reduced,
            YbFamily::TrigCybe1 => Family::TrigCybe1,
            YbFamily::TrigCybe2 => Family::TrigCybe2,
            YbFamily::ScalarKronecker => Family::ScalarKronecker { tau },
            YbFamily::ScalarTrig => Family::ScalarTrig,
            YbFamily::ScalarRational => Family::ScalarRational { a: a.into(), b: b.into() },
        };
        let inner = lift(SolutionHandle::new(fam))?;
        *out = Box::into_raw(Box::new(YbHandle { inner }));
        Ok(())
    })
}

/// Create a handle from a JSON handle descriptor.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` as for `yb_handle_new`.
#[no_mangle]
pub unsafe extern "C" fn yb_handle_from_json(json: *const c_char, out: *mut *mut YbHandle) -> YbStatus {
    guarded(|| {
        if json.is_null() || out.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(json).to_str().map_err(|e| {
            set_error(e.to_string());
            YbStatus::Parse
        })?;
        let inner = lift(HandleDescriptor::from_json(text).and_then(|d| d.build()))?;
        *out = Box::into_raw(Box::new(YbHandle { inner }));
        Ok(())
    })
}

/// Release a handle. Passing NULL is a no-op.
///
/// # Safety
/// `h` must come from `yb_handle_new` or `yb_handle_from_json` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn yb_handle_free(h: *mut YbHandle) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Matrix size n; values have n⁴ coefficients. Returns 0 for NULL.
///
/// # Safety
/// `h` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn yb_handle_n(h: *const YbHandle) -> usize {
    h.as_ref().map_or(0, |h| h.inner.n())
}

/// Write the n⁴ coefficients of r(u, v) (r̄(v) for CYBE families) in
/// (i, j, i′, j′) row-major order.
///
/// # Safety
/// `h` must be a live handle; `out` must point to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn yb_eval(h: *const YbHandle, u: YbComplex, v: YbComplex, out: *mut YbComplex, len: usize) -> YbStatus {
    guarded(|| {
        let h = h.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        let t = lift(h.inner.eval_any(u.into(), v.into()))?;
        if len < t.coeffs.len() {
            set_error(format!("buffer holds {len}, need {}", t.coeffs.len()));
            return Err(YbStatus::BufferTooSmall);
        }
        let dst = std::slice::from_raw_parts_mut(out, t.coeffs.len());
        for (d, c) in dst.iter_mut().zip(&t.coeffs) {
            *d = (*c).into();
        }
        Ok(())
    })
}

/// Run the default residual suite with the given seed; `*passed` is set to
/// whether every check passed.
///
/// # Safety
/// `h` must be a live handle; `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn yb_verify(h: *const YbHandle, seed: u64, passed: *mut bool) -> YbStatus {
    guarded(|| {
        let h = h.as_ref().ok_or_else(null)?;
        if passed.is_null() {
            return Err(null());
        }
        let cfg = SuiteConfig { seed, ..SuiteConfig::default() };
        let reports = lift(run_suite(&h.inner, &cfg))?;
        *passed = all_pass(&reports);
        Ok(())
    })
}

/// c₃, c₅ of the normal form of a scalar solution and the resulting verdict.
///
/// # Safety
/// `h` must be a live handle; output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn yb_classify_scalar(
    h: *const YbHandle,
    c3: *mut YbComplex,
    c5: *mut YbComplex,
    verdict: *mut YbVerdict,
) -> YbStatus {
    guarded(|| {
        let h = h.as_ref().ok_or_else(null)?;
        if c3.is_null() || c5.is_null() || verdict.is_null() {
            return Err(null());
        }
        let cl = lift(classify_scalar(&h.inner))?;
        *c3 = cl.c3.into();
        *c5 = cl.c5.into();
        *verdict = match cl.verdict {
            Verdict::RationalLike => YbVerdict::RationalLike,
            Verdict::EllipticLike => YbVerdict::EllipticLike,
            Verdict::TrigonometricLike => YbVerdict::TrigonometricLike,
        };
        Ok(())
    })
}

unsafe fn scalar_call<F>(tau: YbComplex, out: *mut YbComplex, f: F) -> YbStatus
where
    F: FnOnce(&ModularParam) -> ybkit::Result<Complex64>,
{
    guarded(|| {
        if out.is_null() {
            return Err(null());
        }
        let m = lift(ModularParam::new(tau.into()))?;
        *out = lift(f(&m))?.into();
        Ok(())
    })
}

/// θ₁₁(u, τ).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn yb_theta11(u: YbComplex, tau: YbComplex, out: *mut YbComplex) -> YbStatus {
    scalar_call(tau, out, |m| theta11(u.into(), m))
}

/// The Kronecker function F(u, v, τ).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn yb_kronecker_f(u: YbComplex, v: YbComplex, tau: YbComplex, out: *mut YbComplex) -> YbStatus {
    scalar_call(tau, out, |m| kronecker_f(u.into(), v.into(), m))
}

/// Weierstrass ζ(x) for the lattice Z + Zτ.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn yb_weierstrass_zeta(x: YbComplex, tau: YbComplex, out: *mut YbComplex) -> YbStatus {
    scalar_call(tau, out, |m| weierstrass_zeta(x.into(), m))
}

/// Weierstrass ℘(x) for the lattice Z + Zτ.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn yb_weierstrass_p(x: YbComplex, tau: YbComplex, out: *mut YbComplex) -> YbStatus {
    scalar_call(tau, out, |m| weierstrass_p(x.into(), m))
}

/// j = g₂³/(g₂³ − 27g₃²), normalized so that j(i) = 1.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn yb_j_invariant(tau: YbComplex, out: *mut YbComplex) -> YbStatus {
    scalar_call(tau, out, j_invariant)
}

/// Copy the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length without the NUL.
///
/// # Safety
/// `buf` must point to `len` writable bytes, or be NULL with `len` = 0.
#[no_mangle]
pub unsafe extern "C" fn yb_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn yb_status_str(s: YbStatus) -> *const c_char {
    let msg: &'static CStr = match s {
        YbStatus::Ok => c"ok",
        YbStatus::NullPointer => c"null pointer",
        YbStatus::InvalidTau => c"tau not in the upper half-plane",
        YbStatus::NonFinite => c"non-finite input",
        YbStatus::PoleProximity => c"too close to a pole",
        YbStatus::NoConvergence => c"series did not converge",
        YbStatus::InvalidParameter => c"invalid parameter",
        YbStatus::SizeMismatch => c"size mismatch",
        YbStatus::WrongKind => c"not available for this family",
        YbStatus::Singular => c"singular linear map",
        YbStatus::Unstable => c"numerically unstable",
        YbStatus::Parse => c"parse error",
        YbStatus::Io => c"i/o error",
        YbStatus::BufferTooSmall => c"buffer too small",
        YbStatus::Panic => c"internal panic",
    };
    msg.as_ptr()
}
