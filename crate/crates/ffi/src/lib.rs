//! C ABI over `dsim-core`.
//!
//! Every entry point returns a [`DsimStatus`]; results come back through out
//! pointers. On failure a message is kept per thread and can be read with
//! [`dsim_last_error`]. Handles are opaque and owned by the caller once
//! returned; release each with its matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use dsim_core::analysis::{
    empirical_length, exact_expected_length_unit, BoundKind, BoundParams, SchemeInput,
};
use dsim_core::bitcodes::{gamma_length, read_container, Scheme};
use dsim_core::distributions::Distribution;
use dsim_core::rng::seeded;
use dsim_core::{dyadic_codec, halfline_codec, integer_codec, Error};

/// Result codes shared by every function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DsimStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownDistribution = 3,
    SchemeMismatch = 4,
    BadHeader = 5,
    Truncated = 6,
    Corrupt = 7,
    Sampler = 8,
    Panic = 9,
}

/// A parsed distribution.
pub struct DsimDistribution {
    inner: Distribution,
}

/// An owned byte buffer holding a container.
pub struct DsimBuffer {
    bytes: Vec<u8>,
}

/// Decoded samples. Integer containers yield integers, the others reals.
pub struct DsimSamples {
    scheme: Scheme,
    ints: Vec<u64>,
    reals: Vec<f64>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DsimStatus {
    match e {
        Error::InvalidArgument(_) => DsimStatus::InvalidArgument,
        Error::UnknownDistribution(_) => DsimStatus::UnknownDistribution,
        Error::SchemeMismatch { .. } => DsimStatus::SchemeMismatch,
        Error::BadMagic(_) | Error::BadVersion(_) | Error::BadScheme(_) => DsimStatus::BadHeader,
        Error::Truncated { .. } | Error::PayloadOverflow { .. } => DsimStatus::Truncated,
        Error::Corrupt(_) | Error::CountOverflow { .. } => DsimStatus::Corrupt,
        Error::Sampler(_) | Error::DepthExceeded { .. } => DsimStatus::Sampler,
    }
}

/// Runs `body`, mapping errors and panics to a status and recording the message.
fn guard(body: impl FnOnce() -> Result<(), DsimStatusError>) -> DsimStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => DsimStatus::Ok,
        Ok(Err(DsimStatusError(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            DsimStatus::Panic
        }
    }
}

struct DsimStatusError(DsimStatus, String);

impl From<Error> for DsimStatusError {
    fn from(e: Error) -> Self {
        DsimStatusError(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> DsimStatusError {
    DsimStatusError(DsimStatus::NullPointer, format!("{what} is null"))
}

fn scheme_from(byte: u8) -> Result<Scheme, DsimStatusError> {
    Ok(Scheme::from_byte(byte)?)
}

/// Message for the last failing call on this thread, or null if none.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dsim_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a spec such as `"geometric:p=0.7"` or `"pareto_flat:c=2,lambda=2"`.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dsim_distribution_parse(
    spec: *const c_char,
    out: *mut *mut DsimDistribution,
) -> DsimStatus {
    guard(|| {
        if spec.is_null() {
            return Err(null("spec"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(spec).to_str().map_err(|_| {
            DsimStatusError(DsimStatus::InvalidArgument, "spec is not UTF-8".into())
        })?;
        let inner = Distribution::parse(text)?;
        *out = Box::into_raw(Box::new(DsimDistribution { inner }));
        Ok(())
    })
}

/// # Safety
/// `dist` must come from [`dsim_distribution_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dsim_distribution_free(dist: *mut DsimDistribution) {
    if !dist.is_null() {
        drop(Box::from_raw(dist));
    }
}

/// Draws `n` samples with `seed` and encodes them into a container.
///
/// `scheme` is the container scheme byte: 1 integer, 2 unit interval, 3 half-line.
///
/// # Safety
/// `dist` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dsim_encode(
    dist: *const DsimDistribution,
    scheme: u8,
    n: u64,
    seed: u64,
    out: *mut *mut DsimBuffer,
) -> DsimStatus {
    guard(|| {
        let dist = dist.as_ref().ok_or_else(|| null("dist"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let input = SchemeInput::new(scheme_from(scheme)?, &dist.inner)?;
        let bytes = input.encode(n, &mut seeded(seed))?;
        *out = Box::into_raw(Box::new(DsimBuffer { bytes }));
        Ok(())
    })
}

/// Pointer to the buffer contents; its length is written to `len`.
///
/// # Safety
/// `buf` must be a live handle; `len` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dsim_buffer_data(buf: *const DsimBuffer, len: *mut usize) -> *const u8 {
    match (buf.as_ref(), len.is_null()) {
        (Some(b), false) => {
            *len = b.bytes.len();
            b.bytes.as_ptr()
        }
        _ => ptr::null(),
    }
}

/// # Safety
/// `buf` must come from [`dsim_encode`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dsim_buffer_free(buf: *mut DsimBuffer) {
    if !buf.is_null() {
        drop(Box::from_raw(buf));
    }
}

/// Decodes a container of any scheme with decoder randomness `seed`.
///
/// # Safety
/// `bytes` must point to `len` readable bytes; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dsim_decode(
    bytes: *const u8,
    len: usize,
    seed: u64,
    out: *mut *mut DsimSamples,
) -> DsimStatus {
    guard(|| {
        if bytes.is_null() && len > 0 {
            return Err(null("bytes"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let data = if len == 0 {
            &[][..]
        } else {
            slice::from_raw_parts(bytes, len)
        };
        let (header, _) = read_container(data)?;
        let mut rng = seeded(seed);
        let mut samples = DsimSamples {
            scheme: header.scheme,
            ints: Vec::new(),
            reals: Vec::new(),
        };
        match header.scheme {
            Scheme::Integer => samples.ints = integer_codec::desimulate(data, &mut rng)?,
            Scheme::UnitInterval => samples.reals = dyadic_codec::desimulate(data, &mut rng)?,
            Scheme::HalfLine => samples.reals = halfline_codec::desimulate(data, &mut rng)?,
        }
        *out = Box::into_raw(Box::new(samples));
        Ok(())
    })
}

/// Scheme byte of the decoded container, or 0 for a null handle.
///
/// # Safety
/// `samples` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dsim_samples_scheme(samples: *const DsimSamples) -> u8 {
    samples.as_ref().map_or(0, |s| s.scheme as u8)
}

/// Number of decoded samples, or 0 for a null handle.
///
/// # Safety
/// `samples` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dsim_samples_len(samples: *const DsimSamples) -> usize {
    samples
        .as_ref()
        .map_or(0, |s| s.ints.len().max(s.reals.len()))
}

/// Copies up to `cap` integer samples into `dst` and writes the count to `written`.
///
/// # Safety
/// `samples` must be live, `dst` writable for `cap` values, `written` valid.
#[no_mangle]
pub unsafe extern "C" fn dsim_samples_copy_u64(
    samples: *const DsimSamples,
    dst: *mut u64,
    cap: usize,
    written: *mut usize,
) -> DsimStatus {
    guard(|| {
        let s = samples.as_ref().ok_or_else(|| null("samples"))?;
        if s.scheme != Scheme::Integer {
            return Err(DsimStatusError(
                DsimStatus::SchemeMismatch,
                format!("samples are reals from scheme '{}'", s.scheme),
            ));
        }
        copy_out(&s.ints, dst, cap, written)
    })
}

/// Copies up to `cap` real samples into `dst` and writes the count to `written`.
///
/// # Safety
/// `samples` must be live, `dst` writable for `cap` values, `written` valid.
#[no_mangle]
pub unsafe extern "C" fn dsim_samples_copy_f64(
    samples: *const DsimSamples,
    dst: *mut f64,
    cap: usize,
    written: *mut usize,
) -> DsimStatus {
    guard(|| {
        let s = samples.as_ref().ok_or_else(|| null("samples"))?;
        if s.scheme == Scheme::Integer {
            return Err(DsimStatusError(
                DsimStatus::SchemeMismatch,
                "samples are integers; use dsim_samples_copy_u64".into(),
            ));
        }
        copy_out(&s.reals, dst, cap, written)
    })
}

unsafe fn copy_out<T: Copy>(
    src: &[T],
    dst: *mut T,
    cap: usize,
    written: *mut usize,
) -> Result<(), DsimStatusError> {
    if written.is_null() {
        return Err(null("written"));
    }
    let count = src.len().min(cap);
    if count > 0 {
        if dst.is_null() {
            return Err(null("dst"));
        }
        ptr::copy_nonoverlapping(src.as_ptr(), dst, count);
    }
    *written = count;
    Ok(())
}

/// # Safety
/// `samples` must come from [`dsim_decode`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dsim_samples_free(samples: *mut DsimSamples) {
    if !samples.is_null() {
        drop(Box::from_raw(samples));
    }
}

/// Closed-form expected-length bound number `kind`: 1 integer power tail,
/// 2 integer exponential tail, 3 unit interval, 4 half-line. Unused parameters
/// are ignored.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dsim_bound(
    kind: u8,
    c: f64,
    lambda: f64,
    f0: f64,
    n: u64,
    out: *mut f64,
) -> DsimStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let params = BoundParams { c, lambda, f0, n };
        *out = params.evaluate(BoundKind::from_number(kind)?)?;
        Ok(())
    })
}

/// Elias gamma codeword length of `z >= 1`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dsim_gamma_length(z: u64, out: *mut u64) -> DsimStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = gamma_length(z)?;
        Ok(())
    })
}

/// Exact expected unit-interval length over rectangles with depth `<= k_max`.
///
/// # Safety
/// `dist` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn dsim_exact_length_unit(
    dist: *const DsimDistribution,
    n: u64,
    k_max: u32,
    out: *mut f64,
) -> DsimStatus {
    guard(|| {
        let dist = dist.as_ref().ok_or_else(|| null("dist"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let f = dist.inner.as_continuous().ok_or_else(|| {
            DsimStatusError(
                DsimStatus::SchemeMismatch,
                format!("{} is not a continuous pdf", dist.inner.name()),
            )
        })?;
        *out = exact_expected_length_unit(f.as_ref(), n, k_max)?;
        Ok(())
    })
}

/// Monte-Carlo mean payload length and its standard error over `trials` encodes.
///
/// # Safety
/// `dist` must be a live handle; `mean` and `std_error` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dsim_empirical_length(
    dist: *const DsimDistribution,
    scheme: u8,
    n: u64,
    trials: u64,
    seed: u64,
    mean: *mut f64,
    std_error: *mut f64,
) -> DsimStatus {
    guard(|| {
        let dist = dist.as_ref().ok_or_else(|| null("dist"))?;
        if mean.is_null() || std_error.is_null() {
            return Err(null("mean/std_error"));
        }
        let input = SchemeInput::new(scheme_from(scheme)?, &dist.inner)?;
        let stats = empirical_length(&input, n, trials, seed)?;
        *mean = stats.mean;
        *std_error = stats.stderr;
        Ok(())
    })
}
