//! C interface to `tropgeom`.
//!
//! Every function returns a [`TgStatus`]. On failure a message is kept per
//! thread and can be read with [`tg_last_error_message`]. Strings handed out
//! by the library must be released with [`tg_string_free`]; handles with their
//! own `_free` function. Rationals cross the boundary as strings such as
//! `"3"`, `"-7/2"` or `"-inf"`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tropgeom::cli::{run_subcommand, CliError, Options};
use tropgeom::linalg::{is_tropically_singular_in, tdet_in};
use tropgeom::plane::{incidence, stable_intersect, stable_line};
use tropgeom::scalar::parse_rational;
use tropgeom::{Convention, PlanePoint, RayLabel, TropLine, TropMatrix, TropScalar};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TgStatus {
    Ok = 0,
    /// The computation is undefined for these inputs (singular data, coaxial lines, ...).
    DomainError = 1,
    /// The input could not be parsed.
    InvalidInput = 2,
    NullPointer = 3,
    Utf8 = 4,
    Panic = 5,
}

/// Where a point sits relative to a line.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TgIncidence {
    NotOnLine = -1,
    Vertex = 0,
    RayLeft = 1,
    RayDown = 2,
    RayDiag = 3,
}

/// Opaque plane tropical line.
pub struct TgLine(TropLine);

/// Opaque tropical matrix.
pub struct TgMatrix(TropMatrix);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(TgStatus, String);

impl From<tropgeom::Error> for Failure {
    fn from(e: tropgeom::Error) -> Self {
        let status = match e {
            tropgeom::Error::Parse(_) => TgStatus::InvalidInput,
            _ => TgStatus::DomainError,
        };
        Failure(status, format!("{}: {e}", e.code()))
    }
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        let status = match e.exit_code() {
            1 => TgStatus::DomainError,
            _ => TgStatus::InvalidInput,
        };
        Failure(status, e.to_json())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            TgStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            TgStatus::Panic
        }
    }
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(TgStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(TgStatus::Utf8, format!("{what} is not UTF-8")))
}

unsafe fn read_point(x: *const c_char, y: *const c_char) -> Result<PlanePoint, Failure> {
    Ok(PlanePoint::new(parse_rational(read_str(x, "x")?)?, parse_rational(read_str(y, "y")?)?))
}

unsafe fn read_convention(p: *const c_char) -> Result<Convention, Failure> {
    if p.is_null() {
        return Ok(Convention::MaxPlus);
    }
    Ok(read_str(p, "convention")?.parse()?)
}

fn out_ptr<T>(out: *mut T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(TgStatus::NullPointer, format!("{what} is null")));
    }
    Ok(())
}

fn give_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

unsafe fn write_point(p: &PlanePoint, out_x: *mut *mut c_char, out_y: *mut *mut c_char) -> Result<(), Failure> {
    out_ptr(out_x, "out_x")?;
    out_ptr(out_y, "out_y")?;
    *out_x = give_string(TropScalar::Finite(p.x.clone()).to_string());
    *out_y = give_string(TropScalar::Finite(p.y.clone()).to_string());
    Ok(())
}

unsafe fn line_ref<'a>(l: *const TgLine) -> Result<&'a TropLine, Failure> {
    l.as_ref().map(|l| &l.0).ok_or_else(|| Failure(TgStatus::NullPointer, "line is null".into()))
}

unsafe fn matrix_ref<'a>(m: *const TgMatrix) -> Result<&'a TropMatrix, Failure> {
    m.as_ref().map(|m| &m.0).ok_or_else(|| Failure(TgStatus::NullPointer, "matrix is null".into()))
}

/// The message for the most recent failure on this thread, or null. The
/// pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn tg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` is null or a string returned by this library that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn tg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs one CLI subcommand (`"stable-line"`, `"tdet"`, ...) on a JSON
/// document and stores the JSON (or SVG) result in `*out`. `convention` may
/// be null for max-plus.
///
/// # Safety
/// String arguments are null or NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tg_run_json(
    command: *const c_char,
    input: *const c_char,
    convention: *const c_char,
    out: *mut *mut c_char,
) -> TgStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let command = read_str(command, "command")?;
        let input = if input.is_null() { "" } else { read_str(input, "input")? };
        let opts = Options { convention: read_convention(convention)?, ..Options::default() };
        *out = give_string(run_subcommand(command, input, &opts)?);
        Ok(())
    })
}

/// `a ⊙ x ⊕ b ⊙ y ⊕ c` with finite rational coefficients.
///
/// # Safety
/// String arguments are NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tg_line_from_coeffs(
    a: *const c_char,
    b: *const c_char,
    c: *const c_char,
    out: *mut *mut TgLine,
) -> TgStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let s = |p, w| -> Result<TropScalar, Failure> { Ok(read_str(p, w)?.parse()?) };
        let line = tropgeom::plane::line_from_coeffs(&s(a, "a")?, &s(b, "b")?, &s(c, "c")?)?;
        *out = Box::into_raw(Box::new(TgLine(line)));
        Ok(())
    })
}

/// # Safety
/// String arguments are NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tg_line_from_vertex(x: *const c_char, y: *const c_char, out: *mut *mut TgLine) -> TgStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let v = read_point(x, y)?;
        *out = Box::into_raw(Box::new(TgLine(TropLine::with_vertex(&v))));
        Ok(())
    })
}

/// The stable line through `(px, py)` and `(qx, qy)`.
///
/// # Safety
/// String arguments are NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tg_stable_line(
    px: *const c_char,
    py: *const c_char,
    qx: *const c_char,
    qy: *const c_char,
    out: *mut *mut TgLine,
) -> TgStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let line = stable_line(&read_point(px, py)?, &read_point(qx, qy)?)?;
        *out = Box::into_raw(Box::new(TgLine(line)));
        Ok(())
    })
}

/// # Safety
/// `line` is a live handle; `out_x` and `out_y` are writable.
#[no_mangle]
pub unsafe extern "C" fn tg_line_vertex(line: *const TgLine, out_x: *mut *mut c_char, out_y: *mut *mut c_char) -> TgStatus {
    guard(|| write_point(&line_ref(line)?.vertex(), out_x, out_y))
}

/// # Safety
/// `line` is a live handle; `x`, `y` are NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tg_line_incidence(
    line: *const TgLine,
    x: *const c_char,
    y: *const c_char,
    out: *mut TgIncidence,
) -> TgStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let p = read_point(x, y)?;
        *out = match incidence(&p, line_ref(line)?) {
            None => TgIncidence::NotOnLine,
            Some(RayLabel::Vertex) => TgIncidence::Vertex,
            Some(RayLabel::RayLeft) => TgIncidence::RayLeft,
            Some(RayLabel::RayDown) => TgIncidence::RayDown,
            Some(RayLabel::RayDiag) => TgIncidence::RayDiag,
        };
        Ok(())
    })
}

/// The stable intersection point of two distinct lines.
///
/// # Safety
/// Both handles are live; `out_x` and `out_y` are writable.
#[no_mangle]
pub unsafe extern "C" fn tg_stable_intersect(
    l1: *const TgLine,
    l2: *const TgLine,
    out_x: *mut *mut c_char,
    out_y: *mut *mut c_char,
) -> TgStatus {
    guard(|| write_point(&stable_intersect(line_ref(l1)?, line_ref(l2)?)?, out_x, out_y))
}

/// # Safety
/// `line` is null or a handle from this library that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn tg_line_free(line: *mut TgLine) {
    if !line.is_null() {
        drop(Box::from_raw(line));
    }
}

/// Parses a matrix from JSON rows, e.g. `[["0", "-inf"], [1, 2]]`.
///
/// # Safety
/// `json` is NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tg_matrix_from_json(json: *const c_char, out: *mut *mut TgMatrix) -> TgStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let m: TropMatrix = serde_json::from_str(read_str(json, "json")?)
            .map_err(|e| Failure(TgStatus::InvalidInput, format!("malformed matrix: {e}")))?;
        *out = Box::into_raw(Box::new(TgMatrix(m)));
        Ok(())
    })
}

/// Tropical determinant as a string. `convention` may be null for max-plus.
///
/// # Safety
/// `m` is a live handle; `convention` is null or NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tg_matrix_tdet(m: *const TgMatrix, convention: *const c_char, out: *mut *mut c_char) -> TgStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let d = tdet_in(read_convention(convention)?, matrix_ref(m)?)?;
        *out = give_string(d.to_string());
        Ok(())
    })
}

/// # Safety
/// `m` is a live handle; `convention` is null or NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tg_matrix_is_singular(m: *const TgMatrix, convention: *const c_char, out: *mut bool) -> TgStatus {
    guard(|| {
        out_ptr(out, "out")?;
        *out = is_tropically_singular_in(read_convention(convention)?, matrix_ref(m)?)?;
        Ok(())
    })
}

/// # Safety
/// `m` is null or a handle from this library that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn tg_matrix_free(m: *mut TgMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}
