//! C ABI over naw-core.
//!
//! Every fallible call returns a [`NawStatus`]; on anything but `Ok` the
//! message is available from [`naw_last_error_message`] on the same thread.
//! Handles are opaque and must be released with their `_free` function.
//! Strings returned as `char *` are owned by the caller and released with
//! [`naw_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use naw_core::central::eval_expr;
use naw_core::cert::{Certificate, Status};
use naw_core::cli::{run, Cli};
use naw_core::groups::expr::parse;
use naw_core::groups::{iso_search, FiniteGroup};
use naw_core::waring::min_powers_for_neg1;
use naw_core::NawError;

/// Result codes shared by every function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NawStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    Parse = 4,
    CapExceeded = 5,
    Computation = 6,
    OutOfRange = 7,
    Panic = 8,
}

/// A finite group in multiplication-table form.
pub struct NawGroup(FiniteGroup);

/// A pass/fail certificate produced by one command.
pub struct NawCertificate(Certificate);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &NawError) -> NawStatus {
    match err {
        NawError::Parse { .. } => NawStatus::Parse,
        NawError::CapExceeded { .. } => NawStatus::CapExceeded,
        NawError::InvalidInput(_) => NawStatus::InvalidInput,
        _ => NawStatus::Computation,
    }
}

/// Runs `f`, recording errors and turning panics into `Panic`.
fn guard(f: impl FnOnce() -> Result<(), (NawStatus, String)>) -> NawStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NawStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            NawStatus::Panic
        }
    }
}

fn core_err(e: NawError) -> (NawStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (NawStatus, String)> {
    if s.is_null() {
        return Err((NawStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (NawStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, (NawStatus, String)> {
    p.as_ref().ok_or_else(|| (NawStatus::NullPointer, format!("{what} is null")))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), (NawStatus, String)> {
    if out.is_null() {
        return Err((NawStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(v);
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn naw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn naw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn naw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the group described by an expression such as "CP(E(2,0),A(4))".
///
/// # Safety
/// `expr` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn naw_group_new(expr: *const c_char, out: *mut *mut NawGroup) -> NawStatus {
    guard(|| {
        let src = read_str(expr, "expr")?;
        let g = parse(src).and_then(|e| eval_expr(&e)).map_err(core_err)?;
        write_out(out, Box::into_raw(Box::new(NawGroup(g))))
    })
}

/// Releases a group. NULL is ignored.
///
/// # Safety
/// `g` must come from [`naw_group_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn naw_group_free(g: *mut NawGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// |G|.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn naw_group_order(g: *const NawGroup, out: *mut usize) -> NawStatus {
    guard(|| write_out(out, handle(g, "group")?.0.order()))
}

/// |Z(G)|.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn naw_group_center_order(g: *const NawGroup, out: *mut usize) -> NawStatus {
    guard(|| write_out(out, handle(g, "group")?.0.center().order()))
}

/// Product of elements `a` and `b`, indexed 0..|G| with 0 the identity.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn naw_group_mul(g: *const NawGroup, a: u32, b: u32, out: *mut u32) -> NawStatus {
    guard(|| {
        let g = &handle(g, "group")?.0;
        let n = g.order();
        if a as usize >= n || b as usize >= n {
            return Err((NawStatus::OutOfRange, format!("element index out of range for order {n}")));
        }
        write_out(out, g.mul(a, b))
    })
}

/// Order of element `a`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn naw_group_element_order(g: *const NawGroup, a: u32, out: *mut u64) -> NawStatus {
    guard(|| {
        let g = &handle(g, "group")?.0;
        if a as usize >= g.order() {
            return Err((NawStatus::OutOfRange, format!("element index out of range for order {}", g.order())));
        }
        write_out(out, g.order_of(a))
    })
}

/// Whether two groups are isomorphic, by exhaustive search.
///
/// # Safety
/// `g` and `h` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn naw_group_isomorphic(g: *const NawGroup, h: *const NawGroup, out: *mut bool) -> NawStatus {
    guard(|| {
        let (g, h) = (&handle(g, "g")?.0, &handle(h, "h")?.0);
        write_out(out, iso_search(g, h).map_err(core_err)?.is_some())
    })
}

/// Fewest k-th powers summing to −1 modulo q.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn naw_waring_min_powers(k: u32, q: u64, out: *mut usize) -> NawStatus {
    guard(|| write_out(out, min_powers_for_neg1(k, q).map_err(core_err)?.m))
}

/// Runs a command-line invocation such as {"egroup", "--d", "3", "--j", "1"}
/// (without the program name) and returns its certificate. Errors inside the
/// command are reported in the certificate, not as a status.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn naw_run(argv: *const *const c_char, argc: usize, out: *mut *mut NawCertificate) -> NawStatus {
    guard(|| {
        if argv.is_null() && argc > 0 {
            return Err((NawStatus::NullPointer, "argv is null".into()));
        }
        let mut args = vec!["naw".to_string()];
        for i in 0..argc {
            args.push(read_str(*argv.add(i), "argument")?.to_string());
        }
        let cli = Cli::parse_args(args).map_err(|e| (NawStatus::InvalidInput, e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(NawCertificate(run(&cli)))))
    })
}

/// Releases a certificate. NULL is ignored.
///
/// # Safety
/// `c` must come from [`naw_run`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn naw_certificate_free(c: *mut NawCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Process exit code the command line would use: 0, 1 or 2.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn naw_certificate_exit_code(c: *const NawCertificate, out: *mut i32) -> NawStatus {
    guard(|| write_out(out, handle(c, "certificate")?.0.exit_code()))
}

/// Counts of passing, failing and inconclusive checks.
///
/// # Safety
/// `c` must be a live handle; the three outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn naw_certificate_counts(
    c: *const NawCertificate,
    pass: *mut usize,
    fail: *mut usize,
    inconclusive: *mut usize,
) -> NawStatus {
    guard(|| {
        let checks = &handle(c, "certificate")?.0.checks;
        let count = |s: Status| checks.iter().filter(|x| x.status == s).count();
        write_out(pass, count(Status::Pass))?;
        write_out(fail, count(Status::Fail))?;
        write_out(inconclusive, count(Status::Inconclusive))
    })
}

/// The certificate as JSON, identical to the command-line output.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable. Free the string with
/// [`naw_string_free`].
#[no_mangle]
pub unsafe extern "C" fn naw_certificate_json(c: *const NawCertificate, out: *mut *mut c_char) -> NawStatus {
    guard(|| {
        let json = handle(c, "certificate")?.0.to_json();
        let s = CString::new(json).map_err(|_| (NawStatus::Computation, "certificate contains NUL".into()))?;
        write_out(out, s.into_raw())
    })
}
