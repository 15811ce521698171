//! C ABI over the permshuffle library.
//!
//! Permutations are opaque handles created by `ps_perm_parse` and released by
//! `ps_perm_free`. Strings returned by the library are NUL-terminated, owned
//! by the caller, and must be released with `ps_string_free`. Every fallible
//! function reports a [`PsStatus`]; out-parameters are written only on
//! `PS_STATUS_OK`.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use permshuffle::algebra;
use permshuffle::error::Error;
use permshuffle::perm::Permutation;
use permshuffle::{count, square, words};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsStatus {
    Ok = 0,
    /// A pointer argument was null or not valid UTF-8.
    InvalidArgument = 1,
    /// The input text could not be parsed.
    ParseError = 2,
    /// The operation is undefined for this input (odd size, not in the image
    /// of the bijection, invalid witness or matching).
    DomainError = 3,
    /// The input exceeds the configured size cap.
    SizeLimit = 4,
}

/// Opaque permutation handle.
pub struct PsPerm {
    inner: Permutation,
}

fn status_of(e: &Error) -> PsStatus {
    match e {
        Error::SizeLimit { .. } => PsStatus::SizeLimit,
        Error::Parse(_) | Error::DuplicateLetter(_) | Error::NotAPermutation(_) => {
            PsStatus::ParseError
        }
        _ => PsStatus::DomainError,
    }
}

// Safety: the caller promises `s` is a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, PsStatus> {
    if s.is_null() {
        return Err(PsStatus::InvalidArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| PsStatus::InvalidArgument)
}

fn give_string(s: String, out: *mut *mut c_char) -> PsStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            PsStatus::Ok
        }
        Err(_) => PsStatus::InvalidArgument,
    }
}

/// Parses a permutation from its text form ("1 4 3 2", or "1432" when the
/// size is at most 9; empty string for the empty permutation) into a new
/// handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be non-null.
#[no_mangle]
pub unsafe extern "C" fn ps_perm_parse(text: *const c_char, out: *mut *mut PsPerm) -> PsStatus {
    if out.is_null() {
        return PsStatus::InvalidArgument;
    }
    let text = match read_str(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match text.parse::<Permutation>() {
        Ok(p) => {
            *out = Box::into_raw(Box::new(PsPerm { inner: p }));
            PsStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a handle returned by this library. Null is ignored.
///
/// # Safety
/// `perm` must have been returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ps_perm_free(perm: *mut PsPerm) {
    if !perm.is_null() {
        drop(Box::from_raw(perm));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must have been returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ps_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The number of letters of the permutation.
///
/// # Safety
/// `perm` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ps_perm_size(perm: *const PsPerm) -> usize {
    perm.as_ref().map_or(0, |p| p.inner.size())
}

/// Writes the canonical text form of the permutation to `out`.
///
/// # Safety
/// `perm` must be a live handle; `out` must be non-null.
#[no_mangle]
pub unsafe extern "C" fn ps_perm_to_string(
    perm: *const PsPerm,
    out: *mut *mut c_char,
) -> PsStatus {
    let Some(p) = perm.as_ref() else {
        return PsStatus::InvalidArgument;
    };
    if out.is_null() {
        return PsStatus::InvalidArgument;
    }
    give_string(p.inner.to_string(), out)
}

/// Decides whether the permutation is a square. On success `*is_square` is
/// set, and `*witness` receives the A/B witness coloring when the permutation
/// is a square (or null otherwise); `witness` may be null if the coloring is
/// not wanted.
///
/// # Safety
/// `perm` must be a live handle; `is_square` must be non-null.
#[no_mangle]
pub unsafe extern "C" fn ps_is_square(
    perm: *const PsPerm,
    is_square: *mut bool,
    witness: *mut *mut c_char,
) -> PsStatus {
    let Some(p) = perm.as_ref() else {
        return PsStatus::InvalidArgument;
    };
    if is_square.is_null() {
        return PsStatus::InvalidArgument;
    }
    match square::is_square(&p.inner) {
        Some(w) => {
            *is_square = true;
            if !witness.is_null() {
                return give_string(w.to_string(), witness);
            }
        }
        None => {
            *is_square = false;
            if !witness.is_null() {
                *witness = ptr::null_mut();
            }
        }
    }
    PsStatus::Ok
}

/// Expands the shuffle product of two permutations; `out` receives one term
/// per line, "coefficient TAB permutation".
///
/// # Safety
/// `sigma` and `nu` must be live handles; `out` must be non-null.
#[no_mangle]
pub unsafe extern "C" fn ps_shuffle(
    sigma: *const PsPerm,
    nu: *const PsPerm,
    out: *mut *mut c_char,
) -> PsStatus {
    let (Some(s), Some(n)) = (sigma.as_ref(), nu.as_ref()) else {
        return PsStatus::InvalidArgument;
    };
    if out.is_null() {
        return PsStatus::InvalidArgument;
    }
    match algebra::shuffle(&s.inner, &n.inner) {
        Ok(e) => give_string(e.to_string(), out),
        Err(e) => status_of(&e),
    }
}

/// Expands the unshuffling coproduct; `out` receives one term per line,
/// "coefficient TAB left TAB (x) TAB right".
///
/// # Safety
/// `pi` must be a live handle; `out` must be non-null.
#[no_mangle]
pub unsafe extern "C" fn ps_unshuffle(pi: *const PsPerm, out: *mut *mut c_char) -> PsStatus {
    let Some(p) = pi.as_ref() else {
        return PsStatus::InvalidArgument;
    };
    if out.is_null() {
        return PsStatus::InvalidArgument;
    }
    match algebra::unshuffle(&p.inner) {
        Ok(e) => give_string(e.to_string(), out),
        Err(e) => status_of(&e),
    }
}

/// The multiplicity of the tensor (sigma, nu) in the coproduct of pi.
///
/// # Safety
/// All three handles must be live; `out` must be non-null.
#[no_mangle]
pub unsafe extern "C" fn ps_coefficient(
    pi: *const PsPerm,
    sigma: *const PsPerm,
    nu: *const PsPerm,
    out: *mut u64,
) -> PsStatus {
    let (Some(p), Some(s), Some(n)) = (pi.as_ref(), sigma.as_ref(), nu.as_ref()) else {
        return PsStatus::InvalidArgument;
    };
    if out.is_null() {
        return PsStatus::InvalidArgument;
    }
    *out = algebra::coefficient(&p.inner, &s.inner, &n.inner);
    PsStatus::Ok
}

/// Maps a binary word ("0101...") to its permutation handle.
///
/// # Safety
/// `word` must be a valid NUL-terminated string; `out` must be non-null.
#[no_mangle]
pub unsafe extern "C" fn ps_bin_to_perm(word: *const c_char, out: *mut *mut PsPerm) -> PsStatus {
    if out.is_null() {
        return PsStatus::InvalidArgument;
    }
    let text = match read_str(word) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match text.parse::<words::BinaryWord>() {
        Ok(w) => {
            *out = Box::into_raw(Box::new(PsPerm {
                inner: words::bin_to_perm(&w),
            }));
            PsStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Maps an even-size (213,231)-avoiding permutation back to its binary word.
///
/// # Safety
/// `perm` must be a live handle; `out` must be non-null.
#[no_mangle]
pub unsafe extern "C" fn ps_perm_to_bin(perm: *const PsPerm, out: *mut *mut c_char) -> PsStatus {
    let Some(p) = perm.as_ref() else {
        return PsStatus::InvalidArgument;
    };
    if out.is_null() {
        return PsStatus::InvalidArgument;
    }
    match words::perm_to_bin(&p.inner) {
        Ok(w) => give_string(w.to_string(), out),
        Err(e) => status_of(&e),
    }
}

/// Number of square permutations of the given size (subject to the default
/// size cap).
///
/// # Safety
/// `out` must be non-null.
#[no_mangle]
pub unsafe extern "C" fn ps_count_squares(size: usize, out: *mut u64) -> PsStatus {
    if out.is_null() {
        return PsStatus::InvalidArgument;
    }
    match count::count_squares(size) {
        Ok(c) => {
            *out = c;
            PsStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    fn parse(s: &str) -> *mut PsPerm {
        let c = CString::new(s).unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { ps_perm_parse(c.as_ptr(), &mut out) }, PsStatus::Ok);
        out
    }

    unsafe fn take_string(s: *mut c_char) -> String {
        let owned = CStr::from_ptr(s).to_string_lossy().into_owned();
        ps_string_free(s);
        owned
    }

    #[test]
    fn parse_roundtrip_and_free() {
        let p = parse("2 4 1 3");
        unsafe {
            assert_eq!(ps_perm_size(p), 4);
            let mut s = ptr::null_mut();
            assert_eq!(ps_perm_to_string(p, &mut s), PsStatus::Ok);
            assert_eq!(take_string(s), "2 4 1 3");
            ps_perm_free(p);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        let c = CString::new("1 1").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(
            unsafe { ps_perm_parse(c.as_ptr(), &mut out) },
            PsStatus::ParseError
        );
        assert_eq!(
            unsafe { ps_perm_parse(ptr::null(), &mut out) },
            PsStatus::InvalidArgument
        );
    }

    #[test]
    fn square_check_with_witness() {
        let p = parse("2 4 1 3");
        unsafe {
            let mut flag = false;
            let mut w = ptr::null_mut();
            assert_eq!(ps_is_square(p, &mut flag, &mut w), PsStatus::Ok);
            assert!(flag);
            let w = take_string(w);
            assert_eq!(w.len(), 4);
            ps_perm_free(p);
        }
        let p = parse("1 4 3 2");
        unsafe {
            let mut flag = true;
            let mut w = ptr::null_mut();
            assert_eq!(ps_is_square(p, &mut flag, &mut w), PsStatus::Ok);
            assert!(!flag);
            assert!(w.is_null());
            ps_perm_free(p);
        }
    }

    #[test]
    fn algebra_calls() {
        let pi = parse("1 4 3 2");
        let sigma = parse("1 2");
        let nu = parse("2 1");
        unsafe {
            let mut c = 0u64;
            assert_eq!(ps_coefficient(pi, sigma, nu, &mut c), PsStatus::Ok);
            assert_eq!(c, 3);
            let mut s = ptr::null_mut();
            assert_eq!(ps_shuffle(sigma, nu, &mut s), PsStatus::Ok);
            let text = take_string(s);
            assert!(text.contains("3\t1 4 3 2"));
            let mut s = ptr::null_mut();
            assert_eq!(ps_unshuffle(pi, &mut s), PsStatus::Ok);
            assert!(take_string(s).contains("3\t1\t\u{2297}\t1 3 2"));
            ps_perm_free(pi);
            ps_perm_free(sigma);
            ps_perm_free(nu);
        }
    }

    #[test]
    fn word_bijection_calls() {
        unsafe {
            let word = CString::new("100101101000").unwrap();
            let mut p = ptr::null_mut();
            assert_eq!(ps_bin_to_perm(word.as_ptr(), &mut p), PsStatus::Ok);
            let mut s = ptr::null_mut();
            assert_eq!(ps_perm_to_string(p, &mut s), PsStatus::Ok);
            assert_eq!(take_string(s), "12 1 2 11 3 10 9 4 8 5 6 7");
            ps_perm_free(p);

            let odd = parse("1");
            let mut s = ptr::null_mut();
            assert_eq!(ps_perm_to_bin(odd, &mut s), PsStatus::DomainError);
            ps_perm_free(odd);
        }
    }

    #[test]
    fn count_call() {
        unsafe {
            let mut c = 0u64;
            assert_eq!(ps_count_squares(4, &mut c), PsStatus::Ok);
            assert_eq!(c, 20);
            assert_eq!(ps_count_squares(1000, &mut c), PsStatus::SizeLimit);
        }
    }
}
