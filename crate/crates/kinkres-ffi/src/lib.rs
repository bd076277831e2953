//! C ABI over the kinkres library: opaque handles, integer status codes,
//! and caller-provided output buffers. Every function is
//! null-pointer-safe and never unwinds across the boundary.

use kinkres::kink::{
    linear_closed_form, potential, spinor_neg, spinor_pos, Method, PhysicalParams,
};
use kinkres::oracle::{matching_determinant, IntegratorConfig};
use kinkres::resonance::{certified_count, find_resonances, SearchBox, SolverConfig};
use num_complex::Complex64;
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KrStatus {
    /// Operation completed.
    KrOk = 0,
    /// A pointer argument was null.
    KrNullPointer = 1,
    /// Parameters were rejected (for example k = 0 or a bad range).
    KrInvalidArgument = 2,
    /// The computation could not be completed numerically.
    KrNumericalError = 3,
    /// The output buffer was too small; required size is reported.
    KrBufferTooSmall = 4,
    /// An internal invariant failed; the library state is unchanged.
    KrInternalError = 5,
}

/// Spectral equation selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KrMethod {
    /// Difference-form condition on x > 0.
    KrMethodExactPos = 0,
    /// Sum-form condition on x < 0.
    KrMethodExactNeg = 1,
    /// Linear-potential limit condition.
    KrMethodLinear = 2,
}

impl From<KrMethod> for Method {
    fn from(m: KrMethod) -> Method {
        match m {
            KrMethod::KrMethodExactPos => Method::ExactPos,
            KrMethod::KrMethodExactNeg => Method::ExactNeg,
            KrMethod::KrMethodLinear => Method::Linear,
        }
    }
}

/// One resonance returned through the C ABI.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KrResonance {
    /// Polynomial degree labelling the state.
    pub n: u32,
    /// Complex energy, real part.
    pub energy_re: f64,
    /// Complex energy, imaginary part.
    pub energy_im: f64,
    /// Magnitude of the spectral-equation residual at the root.
    pub residual: f64,
    /// 1 when the principal-branch decay condition holds, 0 otherwise.
    pub decay_ok: u8,
}

/// One sampled spinor value returned through the C ABI.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KrSpinorSample {
    pub x: f64,
    pub phi_re: f64,
    pub phi_im: f64,
    pub theta_re: f64,
    pub theta_im: f64,
}

/// Opaque handle holding a validated parameter set.
pub struct KrParams {
    inner: PhysicalParams,
}

fn guard<F: FnOnce() -> KrStatus>(f: F) -> KrStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(KrStatus::KrInternalError)
}

/// Create a parameter handle. Returns KR_OK and writes the handle into
/// `out`, which must be released with `kr_params_free`.
///
/// # Safety
/// `out` must be a valid pointer to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn kr_params_new(
    m: f64,
    lambda: f64,
    k: f64,
    g: f64,
    out: *mut *mut KrParams,
) -> KrStatus {
    if out.is_null() {
        return KrStatus::KrNullPointer;
    }
    guard(|| match PhysicalParams::new(m, lambda, k, g) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(KrParams { inner }));
            KrStatus::KrOk
        }
        Err(_) => KrStatus::KrInvalidArgument,
    })
}

/// Release a handle created by `kr_params_new`. Null is ignored.
///
/// # Safety
/// `params` must be null or a pointer returned by `kr_params_new` that has
/// not been freed already.
#[no_mangle]
pub unsafe extern "C" fn kr_params_free(params: *mut KrParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// Evaluate the potential Lambda tanh(kx).
///
/// # Safety
/// `params` and `out` must be valid non-null pointers.
#[no_mangle]
pub unsafe extern "C" fn kr_potential(
    params: *const KrParams,
    x: f64,
    out: *mut f64,
) -> KrStatus {
    if params.is_null() || out.is_null() {
        return KrStatus::KrNullPointer;
    }
    guard(|| {
        *out = potential(&(*params).inner, x);
        KrStatus::KrOk
    })
}

/// Closed-form linear-limit energy candidate for degree n.
///
/// # Safety
/// `params`, `out_re`, `out_im` must be valid non-null pointers.
#[no_mangle]
pub unsafe extern "C" fn kr_linear_closed_form(
    params: *const KrParams,
    n: u32,
    out_re: *mut f64,
    out_im: *mut f64,
) -> KrStatus {
    if params.is_null() || out_re.is_null() || out_im.is_null() {
        return KrStatus::KrNullPointer;
    }
    guard(|| {
        let e = linear_closed_form(&(*params).inner, n);
        *out_re = e.re;
        *out_im = e.im;
        KrStatus::KrOk
    })
}

/// Find resonances for n in [n_min, n_max] with the default search box.
/// Writes up to `capacity` results into `out` and always stores the total
/// number found in `out_count`; returns KR_BUFFER_TOO_SMALL when the
/// buffer cannot hold them all (the first `capacity` are still written).
///
/// # Safety
/// `params` and `out_count` must be valid; `out` must point to at least
/// `capacity` writable elements (it may be null when `capacity` is 0).
#[no_mangle]
pub unsafe extern "C" fn kr_find_resonances(
    params: *const KrParams,
    n_min: u32,
    n_max: u32,
    method: KrMethod,
    out: *mut KrResonance,
    capacity: usize,
    out_count: *mut usize,
) -> KrStatus {
    if params.is_null() || out_count.is_null() || (out.is_null() && capacity > 0) {
        return KrStatus::KrNullPointer;
    }
    if n_min > n_max {
        return KrStatus::KrInvalidArgument;
    }
    guard(|| {
        let p = &(*params).inner;
        let bx = SearchBox::default_for(p);
        let found =
            find_resonances(p, n_min..=n_max, method.into(), &bx, &SolverConfig::default());
        *out_count = found.len();
        for (i, r) in found.iter().take(capacity).enumerate() {
            *out.add(i) = KrResonance {
                n: r.n,
                energy_re: r.energy.re,
                energy_im: r.energy.im,
                residual: r.residual,
                decay_ok: u8::from(r.decay_ok),
            };
        }
        if found.len() > capacity {
            KrStatus::KrBufferTooSmall
        } else {
            KrStatus::KrOk
        }
    })
}

/// Argument-principle zero count of the rationalized spectral condition
/// for degree n over the default search box.
///
/// # Safety
/// `params` and `out` must be valid non-null pointers.
#[no_mangle]
pub unsafe extern "C" fn kr_certified_count(
    params: *const KrParams,
    n: u32,
    method: KrMethod,
    out: *mut i64,
) -> KrStatus {
    if params.is_null() || out.is_null() {
        return KrStatus::KrNullPointer;
    }
    guard(|| {
        let p = &(*params).inner;
        let bx = SearchBox::default_for(p);
        match certified_count(p, n, method.into(), &bx, 2000) {
            Ok(w) => {
                *out = w;
                KrStatus::KrOk
            }
            Err(_) => KrStatus::KrNumericalError,
        }
    })
}

/// Sample the closed-form spinor at `x` (positive half-line for x > 0,
/// negative for x < 0; x = 0 is rejected).
///
/// # Safety
/// `params` and `out` must be valid non-null pointers.
#[no_mangle]
pub unsafe extern "C" fn kr_spinor(
    params: *const KrParams,
    energy_re: f64,
    energy_im: f64,
    n: u32,
    x: f64,
    out: *mut KrSpinorSample,
) -> KrStatus {
    if params.is_null() || out.is_null() {
        return KrStatus::KrNullPointer;
    }
    guard(|| {
        let p = &(*params).inner;
        let e = Complex64::new(energy_re, energy_im);
        let s = if x > 0.0 {
            spinor_pos(p, e, n, x)
        } else if x < 0.0 {
            spinor_neg(p, e, n, x)
        } else {
            return KrStatus::KrInvalidArgument;
        };
        match s {
            Ok(s) => {
                *out = KrSpinorSample {
                    x: s.x,
                    phi_re: s.phi.re,
                    phi_im: s.phi.im,
                    theta_re: s.theta.re,
                    theta_im: s.theta.im,
                };
                KrStatus::KrOk
            }
            Err(_) => KrStatus::KrNumericalError,
        }
    })
}

/// Magnitude of the left/right matching determinant at a trial energy,
/// including the point-interaction jump.
///
/// # Safety
/// `params` and `out` must be valid non-null pointers.
#[no_mangle]
pub unsafe extern "C" fn kr_matching_determinant(
    params: *const KrParams,
    energy_re: f64,
    energy_im: f64,
    out: *mut f64,
) -> KrStatus {
    if params.is_null() || out.is_null() {
        return KrStatus::KrNullPointer;
    }
    guard(|| {
        let p = &(*params).inner;
        let e = Complex64::new(energy_re, energy_im);
        match matching_determinant(p, e, &IntegratorConfig::default()) {
            Ok(m) => {
                *out = m.wronskian.norm();
                KrStatus::KrOk
            }
            Err(_) => KrStatus::KrNumericalError,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn handle() -> *mut KrParams {
        let mut h: *mut KrParams = ptr::null_mut();
        let st = unsafe { kr_params_new(1.0, 0.2, 0.1, 0.0, &mut h) };
        assert_eq!(st, KrStatus::KrOk);
        assert!(!h.is_null());
        h
    }

    #[test]
    fn lifecycle_and_validation() {
        let h = handle();
        unsafe { kr_params_free(h) };
        unsafe { kr_params_free(ptr::null_mut()) };
        let mut h2: *mut KrParams = ptr::null_mut();
        assert_eq!(
            unsafe { kr_params_new(1.0, 0.2, 0.0, 0.0, &mut h2) },
            KrStatus::KrInvalidArgument
        );
        assert_eq!(
            unsafe { kr_params_new(1.0, 0.2, 0.1, 0.0, ptr::null_mut()) },
            KrStatus::KrNullPointer
        );
    }

    #[test]
    fn potential_through_abi() {
        let h = handle();
        let mut v = f64::NAN;
        assert_eq!(unsafe { kr_potential(h, 0.0, &mut v) }, KrStatus::KrOk);
        assert_eq!(v, 0.0);
        assert_eq!(
            unsafe { kr_potential(ptr::null(), 0.0, &mut v) },
            KrStatus::KrNullPointer
        );
        unsafe { kr_params_free(h) };
    }

    #[test]
    fn resonances_with_buffer_protocol() {
        let h = handle();
        let mut count = 0usize;
        // Query pass with zero capacity.
        let st = unsafe {
            kr_find_resonances(
                h,
                0,
                2,
                KrMethod::KrMethodExactPos,
                ptr::null_mut(),
                0,
                &mut count,
            )
        };
        assert_eq!(st, KrStatus::KrBufferTooSmall);
        assert_eq!(count, 3);
        let mut buf = vec![
            KrResonance {
                n: 0,
                energy_re: 0.0,
                energy_im: 0.0,
                residual: 0.0,
                decay_ok: 0,
            };
            count
        ];
        let st = unsafe {
            kr_find_resonances(
                h,
                0,
                2,
                KrMethod::KrMethodExactPos,
                buf.as_mut_ptr(),
                buf.len(),
                &mut count,
            )
        };
        assert_eq!(st, KrStatus::KrOk);
        assert_eq!(count, 3);
        assert!((buf[0].energy_re + 0.999_058_749_171_628_1).abs() < 1e-9);
        assert!((buf[0].energy_im + 0.451_012_751_419_998_2).abs() < 1e-9);
        assert!(buf.iter().all(|r| r.decay_ok == 1 && r.residual < 1e-10));
        unsafe { kr_params_free(h) };
    }

    #[test]
    fn certified_count_matches_roots() {
        let h = handle();
        let mut w = -1i64;
        assert_eq!(
            unsafe { kr_certified_count(h, 0, KrMethod::KrMethodExactPos, &mut w) },
            KrStatus::KrOk
        );
        assert_eq!(w, 2);
        unsafe { kr_params_free(h) };
    }

    #[test]
    fn spinor_and_origin_rejection() {
        let h = handle();
        let mut s = KrSpinorSample {
            x: 0.0,
            phi_re: 0.0,
            phi_im: 0.0,
            theta_re: 0.0,
            theta_im: 0.0,
        };
        let st = unsafe { kr_spinor(h, -0.999, -0.451, 0, 1.5, &mut s) };
        assert_eq!(st, KrStatus::KrOk);
        assert!(s.phi_re.hypot(s.phi_im) > 0.0);
        assert_eq!(
            unsafe { kr_spinor(h, -0.999, -0.451, 0, 0.0, &mut s) },
            KrStatus::KrInvalidArgument
        );
        unsafe { kr_params_free(h) };
    }

    #[test]
    fn linear_closed_form_through_abi() {
        let h = handle();
        let (mut re, mut im) = (0.0f64, 0.0f64);
        assert_eq!(
            unsafe { kr_linear_closed_form(h, 0, &mut re, &mut im) },
            KrStatus::KrOk
        );
        // E = i (4 - 4 i k Lambda) / 4 = k Lambda + i at m = 1, n = 0.
        assert!((re - 0.02).abs() < 1e-14);
        assert!((im - 1.0).abs() < 1e-14);
        unsafe { kr_params_free(h) };
    }

    #[test]
    fn header_is_generated() {
        let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("include")
            .join("kinkres.h");
        let text = std::fs::read_to_string(header).expect("header exists");
        for sym in [
            "kr_params_new",
            "kr_params_free",
            "kr_find_resonances",
            "kr_certified_count",
            "kr_spinor",
            "kr_matching_determinant",
            "kr_linear_closed_form",
            "KrStatus",
            "KrResonance",
        ] {
            assert!(text.contains(sym), "header missing {sym}");
        }
    }
}
