//! C ABI over `nucleus-core`.
//!
//! Conventions:
//! - every fallible function returns a [`NucleusStatus`] and writes results through
//!   out-pointers; on failure the out-pointers are left untouched and
//!   [`nucleus_last_error`] describes what went wrong;
//! - fields and subspaces are opaque handles, released with their `_free` function;
//! - strings returned to the caller are released with [`nucleus_string_free`];
//! - panics never cross the boundary; they surface as `NUCLEUS_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nucleus_core::exlin::Subspace;
use nucleus_core::gf::{is_prime, Field, GfError};
use nucleus_core::mono::{self, EmptyCase, ExponentTuple};
use nucleus_core::report::Report;
use nucleus_core::vero::{self, VeroContext, VeroError};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NucleusStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotPrime = 3,
    OutOfRange = 4,
    HypothesisViolated = 5,
    FieldMismatch = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NucleusEmptyCase {
    TrivialParams = 0,
    SmallT = 1,
    CurveSpecial = 2,
    NonEmpty = 3,
}

impl From<EmptyCase> for NucleusEmptyCase {
    fn from(c: EmptyCase) -> Self {
        match c {
            EmptyCase::TrivialParams => NucleusEmptyCase::TrivialParams,
            EmptyCase::SmallT => NucleusEmptyCase::SmallT,
            EmptyCase::CurveSpecial => NucleusEmptyCase::CurveSpecial,
            EmptyCase::NonEmpty => NucleusEmptyCase::NonEmpty,
        }
    }
}

/// Brute-force nucleus against the digit formula; see `nucleus_verify`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NucleusReport {
    pub p: u32,
    pub k: u32,
    pub q: u32,
    pub m: usize,
    pub t: u32,
    pub predicted_dim: i64,
    pub bruteforce_dim: i64,
    pub basis_match: bool,
    pub small_field: bool,
    pub consistent: bool,
}

/// Opaque finite field handle.
pub struct NucleusField(Field);

/// Opaque subspace handle, stored as its reduced echelon basis.
pub struct NucleusSubspace(Subspace);

struct Failure(NucleusStatus, String);

impl From<GfError> for Failure {
    fn from(e: GfError) -> Self {
        let status = match e {
            GfError::NonPrimeCharacteristic(_) => NucleusStatus::NotPrime,
            GfError::FieldTooLarge { .. } => NucleusStatus::OutOfRange,
            GfError::FieldMismatch => NucleusStatus::FieldMismatch,
            _ => NucleusStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

impl From<VeroError> for Failure {
    fn from(e: VeroError) -> Self {
        let status = match &e {
            VeroError::Gf(g) => return g.clone().into(),
            VeroError::EnumerationTooLarge { .. } | VeroError::ParamOutOfRange(_) => NucleusStatus::OutOfRange,
            VeroError::HypothesisViolated(_) | VeroError::PreconditionFailed(_) => NucleusStatus::HypothesisViolated,
            VeroError::FieldMismatch => NucleusStatus::FieldMismatch,
            _ => NucleusStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> NucleusStatus {
    set_last_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NucleusStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(&format!("internal panic: {msg}"));
            NucleusStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(NucleusStatus::NullPointer, "null pointer argument".into())
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(null)
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn slice<'a, T>(p: *const T, len: usize) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null());
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn check_params(m: usize, t: u32, p: u32) -> Result<(), Failure> {
    if !is_prime(p) {
        return Err(Failure(NucleusStatus::NotPrime, format!("{p} is not prime")));
    }
    if t == 0 {
        return Err(Failure(NucleusStatus::OutOfRange, "t must be at least 1".into()));
    }
    if m > 1 << 20 {
        return Err(Failure(NucleusStatus::OutOfRange, format!("m = {m} is too large")));
    }
    Ok(())
}

fn tuple(e: &[u32]) -> Result<ExponentTuple, Failure> {
    if e.is_empty() {
        return Err(Failure(NucleusStatus::InvalidArgument, "exponent tuple is empty".into()));
    }
    Ok(ExponentTuple::new(e.to_vec()))
}

/// Message for the most recent failure on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn nucleus_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn nucleus_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// GF(p^k). `modulus` holds k+1 coefficients, constant term first, or is null for
/// the default irreducible.
///
/// # Safety
/// `modulus` must point to `modulus_len` readable values (or be null with length 0);
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nucleus_field_new(
    p: u32,
    k: u32,
    modulus: *const u32,
    modulus_len: usize,
    out: *mut *mut NucleusField,
) -> NucleusStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(null)?;
        let modulus = if modulus.is_null() { None } else { Some(slice(modulus, modulus_len)?) };
        let field = Field::new(p, k, modulus)?;
        *out = Box::into_raw(Box::new(NucleusField(field)));
        Ok(())
    })
}

/// Field from a spec string: `"p"`, `"p^k"` or `"p^k/c0,...,ck"`.
///
/// # Safety
/// `spec` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nucleus_field_parse(spec: *const c_char, out: *mut *mut NucleusField) -> NucleusStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(null)?;
        let spec = handle(spec)?;
        let spec = CStr::from_ptr(spec)
            .to_str()
            .map_err(|_| Failure(NucleusStatus::InvalidArgument, "field spec is not UTF-8".into()))?;
        let field: Field = spec.parse()?;
        *out = Box::into_raw(Box::new(NucleusField(field)));
        Ok(())
    })
}

/// # Safety
/// `field` must come from this library and not have been freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn nucleus_field_free(field: *mut NucleusField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Order q of the field, or 0 for a null handle.
///
/// # Safety
/// `field` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn nucleus_field_order(field: *const NucleusField) -> u32 {
    field.as_ref().map_or(0, |f| f.0.order())
}

/// Projective dimension of the nucleus from the digit formula (-1 when empty).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nucleus_dim_formula(m: usize, t: u32, p: u32, out: *mut i64) -> NucleusStatus {
    guard(|| {
        let out = self::out(out)?;
        check_params(m, t, p)?;
        let d = mono::nucleus_dim_formula(m, t, p);
        *out =
            i64::try_from(d).map_err(|_| Failure(NucleusStatus::OutOfRange, format!("dimension {d} exceeds i64")))?;
        Ok(())
    })
}

/// Number of exponent tuples whose multinomial is nonzero mod p.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nucleus_count_nonvanishing(m: usize, t: u32, p: u32, out: *mut u64) -> NucleusStatus {
    guard(|| {
        let out = self::out(out)?;
        check_params(m, t, p)?;
        let c = mono::count_nonvanishing(m, t, p);
        *out = u64::try_from(c).map_err(|_| Failure(NucleusStatus::OutOfRange, format!("count {c} exceeds u64")))?;
        Ok(())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nucleus_classify(m: usize, t: u32, p: u32, out: *mut NucleusEmptyCase) -> NucleusStatus {
    guard(|| {
        let out = self::out(out)?;
        check_params(m, t, p)?;
        *out = mono::classify_empty(m, t, p).into();
        Ok(())
    })
}

/// Multinomial `(t; e_0, ..., e_m)` mod p; 0 if the exponents do not sum to t.
///
/// # Safety
/// `e` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nucleus_multinomial_mod_p(
    t: u32,
    e: *const u32,
    len: usize,
    p: u32,
    out: *mut u32,
) -> NucleusStatus {
    guard(|| {
        let out = self::out(out)?;
        check_params(0, t.max(1), p)?;
        *out = mono::multinomial_mod_p(t, &tuple(slice(e, len)?)?, p);
        Ok(())
    })
}

/// Whether adding the exponents in base p produces no carry.
///
/// # Safety
/// `e` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nucleus_carry_free(
    t: u32,
    e: *const u32,
    len: usize,
    p: u32,
    out: *mut bool,
) -> NucleusStatus {
    guard(|| {
        let out = self::out(out)?;
        check_params(0, t.max(1), p)?;
        *out = mono::carry_free(t, &tuple(slice(e, len)?)?, p);
        Ok(())
    })
}

/// Nucleus computed by brute force over every osculating hyperplane.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nucleus_bruteforce(
    field: *const NucleusField,
    m: usize,
    t: u32,
    out: *mut *mut NucleusSubspace,
) -> NucleusStatus {
    guard(|| {
        let out = self::out(out)?;
        let f = handle(field)?;
        let s = VeroContext::new(&f.0, m, t)?.nucleus_bruteforce()?;
        *out = Box::into_raw(Box::new(NucleusSubspace(s)));
        Ok(())
    })
}

/// Nucleus predicted by the digit formula: span of the base points whose
/// multinomial vanishes mod p.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nucleus_predicted(
    field: *const NucleusField,
    m: usize,
    t: u32,
    out: *mut *mut NucleusSubspace,
) -> NucleusStatus {
    guard(|| {
        let out = self::out(out)?;
        let f = handle(field)?;
        let s = VeroContext::new(&f.0, m, t)?.nucleus_predicted();
        *out = Box::into_raw(Box::new(NucleusSubspace(s)));
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not have been freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn nucleus_subspace_free(s: *mut NucleusSubspace) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Vector dimension.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nucleus_subspace_dim(s: *const NucleusSubspace, out: *mut usize) -> NucleusStatus {
    guard(|| {
        *self::out(out)? = handle(s)?.0.dim();
        Ok(())
    })
}

/// Dimension of the ambient coordinate space, C(m+t, t).
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nucleus_subspace_ambient_dim(s: *const NucleusSubspace, out: *mut usize) -> NucleusStatus {
    guard(|| {
        *self::out(out)? = handle(s)?.0.ambient_dim();
        Ok(())
    })
}

/// Copies basis row `row` (element codes) into `buf`, which must hold at least the
/// ambient dimension.
///
/// # Safety
/// `s` must be a live handle; `buf` must be writable for `len` values.
#[no_mangle]
pub unsafe extern "C" fn nucleus_subspace_basis_row(
    s: *const NucleusSubspace,
    row: usize,
    buf: *mut u32,
    len: usize,
) -> NucleusStatus {
    guard(|| {
        let s = &handle(s)?.0;
        if row >= s.dim() {
            return Err(Failure(NucleusStatus::OutOfRange, format!("row {row} of a {}-dimensional subspace", s.dim())));
        }
        if len < s.ambient_dim() {
            return Err(Failure(NucleusStatus::BufferTooSmall, format!("need {} entries, got {len}", s.ambient_dim())));
        }
        if buf.is_null() {
            return Err(null());
        }
        ptr::copy_nonoverlapping(s.basis().row(row).as_ptr(), buf, s.ambient_dim());
        Ok(())
    })
}

/// Writes 1 to `out` if the two subspaces are equal, 0 otherwise.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nucleus_subspace_equal(
    a: *const NucleusSubspace,
    b: *const NucleusSubspace,
    out: *mut bool,
) -> NucleusStatus {
    guard(|| {
        let out = self::out(out)?;
        let eq = nucleus_core::exlin::subspace_equal(&handle(a)?.0, &handle(b)?.0)
            .map_err(|e| Failure(NucleusStatus::InvalidArgument, e.to_string()))?;
        *out = eq;
        Ok(())
    })
}

fn to_c(r: &vero::NucleusReport) -> NucleusReport {
    NucleusReport {
        p: r.p,
        k: r.k,
        q: r.q,
        m: r.m,
        t: r.t,
        predicted_dim: r.predicted_dim,
        bruteforce_dim: r.bruteforce_dim,
        basis_match: r.basis_match,
        small_field: r.small_field,
        consistent: r.is_consistent(),
    }
}

/// Compares the brute-force nucleus with the digit formula.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nucleus_verify(
    field: *const NucleusField,
    m: usize,
    t: u32,
    out: *mut NucleusReport,
) -> NucleusStatus {
    guard(|| {
        let out = self::out(out)?;
        *out = to_c(&vero::verify_field(&handle(field)?.0, m, t)?);
        Ok(())
    })
}

/// As `nucleus_verify`, rendered as a JSON report document (schema version "1").
/// Free the result with `nucleus_string_free`.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nucleus_verify_json(
    field: *const NucleusField,
    m: usize,
    t: u32,
    out: *mut *mut c_char,
) -> NucleusStatus {
    guard(|| {
        let out = self::out(out)?;
        let report = Report::new(vec![vero::verify_field(&handle(field)?.0, m, t)?]);
        let json = report.to_json().map_err(|e| Failure(NucleusStatus::InvalidArgument, e.to_string()))?;
        *out = CString::new(json).expect("json has no nul").into_raw();
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        let f: Failure = GfError::NonPrimeCharacteristic(4).into();
        assert_eq!(f.0, NucleusStatus::NotPrime);
        let f: Failure = VeroError::Gf(GfError::FieldTooLarge { p: 2, k: 17 }).into();
        assert_eq!(f.0, NucleusStatus::OutOfRange);
        let f: Failure = VeroError::HypothesisViolated("x".into()).into();
        assert_eq!(f.0, NucleusStatus::HypothesisViolated);
    }

    #[test]
    fn panics_are_contained() {
        let status = guard(|| panic!("boom"));
        assert_eq!(status, NucleusStatus::Panic);
        let msg = unsafe { CStr::from_ptr(nucleus_last_error()) }.to_str().unwrap().to_owned();
        assert!(msg.contains("boom"));
        assert_eq!(guard(|| Ok(())), NucleusStatus::Ok);
        assert!(unsafe { CStr::from_ptr(nucleus_last_error()) }.to_bytes().is_empty());
    }
}
