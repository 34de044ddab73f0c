//! C ABI over `subdiv`.
//!
//! Schemes and polygons are opaque handles created by `subdiv_*` constructors
//! and released with the matching `_free` function. Every fallible call
//! returns a [`SubdivStatus`]; on failure, [`subdiv_last_error`] describes the
//! most recent error on the calling thread. Strings returned through `out`
//! parameters are owned by the caller and released with [`subdiv_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use subdiv::analysis::{degree_of_precision, holder_regularity, AnalysisError, DEFAULT_MAX_DEGREE};
use subdiv::conversion::{convert_theorem, convert_via_symbol, ConversionError};
use subdiv::numeric::Rational;
use subdiv::refinement::{refine, Polygon, PolygonError, Topology};
use subdiv::scheme::io::{mask_to_json, parse_mask_json};
use subdiv::scheme::{Catalog, SubdivisionScheme};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubdivStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownScheme = 4,
    /// Wrong arity, parity or mask layout for a conversion.
    Precondition = 5,
    TooFewPoints = 6,
    Analysis = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

/// Opaque subdivision scheme.
pub struct SubdivScheme(SubdivisionScheme);

/// Opaque control polygon.
pub struct SubdivPolygon(Polygon);

/// Hölder regularity bounds.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SubdivRegularity {
    pub arity: u32,
    pub smoothing_order: u32,
    pub xi_lower: f64,
    pub xi_mid: f64,
    pub xi_upper: f64,
    pub r_lower: f64,
    pub r_mid: f64,
    pub r_upper: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SubdivPrecision {
    pub degree_of_precision: i64,
    pub degree_of_generation: i64,
    /// Set when a parameter shift was detected.
    pub has_shift: bool,
    pub shift_numerator: i64,
    pub shift_denominator: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

struct Fail(SubdivStatus, String);

impl From<PolygonError> for Fail {
    fn from(e: PolygonError) -> Self {
        let status = match e {
            PolygonError::TooFewPoints { .. } => SubdivStatus::TooFewPoints,
            _ => SubdivStatus::Parse,
        };
        Fail(status, e.to_string())
    }
}

impl From<ConversionError> for Fail {
    fn from(e: ConversionError) -> Self {
        Fail(SubdivStatus::Precondition, e.to_string())
    }
}

impl From<AnalysisError> for Fail {
    fn from(e: AnalysisError) -> Self {
        Fail(SubdivStatus::Analysis, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SubdivStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SubdivStatus::Ok
        }
        Ok(Err(Fail(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SubdivStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(SubdivStatus::NullPointer, "null pointer argument".into())
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(SubdivStatus::InvalidUtf8, e.to_string()))
}

unsafe fn ref_arg<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn subdiv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn subdiv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Looks up a built-in scheme by name.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subdiv_scheme_from_catalog(
    name: *const c_char,
    out: *mut *mut SubdivScheme,
) -> SubdivStatus {
    guard(|| {
        let name = str_arg(name)?;
        let s = Catalog::builtin()
            .get(name)
            .map_err(|e| Fail(SubdivStatus::UnknownScheme, e.to_string()))?;
        put(out, SubdivScheme(s))
    })
}

/// Parses a mask JSON document.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subdiv_scheme_from_json(
    json: *const c_char,
    out: *mut *mut SubdivScheme,
) -> SubdivStatus {
    guard(|| {
        let text = str_arg(json)?;
        let s = parse_mask_json(text).map_err(|e| Fail(SubdivStatus::Parse, e.to_string()))?;
        put(out, SubdivScheme(s))
    })
}

/// # Safety
/// `scheme` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn subdiv_scheme_free(scheme: *mut SubdivScheme) {
    if !scheme.is_null() {
        drop(Box::from_raw(scheme));
    }
}

/// Arity of the scheme, or 0 for a null handle.
///
/// # Safety
/// `scheme` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn subdiv_scheme_arity(scheme: *const SubdivScheme) -> usize {
    scheme.as_ref().map_or(0, |s| s.0.arity())
}

/// The mask as JSON with `"p/q"` coefficients.
///
/// # Safety
/// `scheme` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subdiv_scheme_to_json(
    scheme: *const SubdivScheme,
    out: *mut *mut c_char,
) -> SubdivStatus {
    guard(|| {
        let s = ref_arg(scheme)?;
        put_string(out, mask_to_json(&s.0))
    })
}

/// Converts a binary scheme to its quaternary counterpart. With `check_oracle`
/// set, the closed form is compared with the symbol product and a mismatch is
/// reported as `Analysis`.
///
/// # Safety
/// `binary` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subdiv_convert(
    binary: *const SubdivScheme,
    check_oracle: bool,
    out: *mut *mut SubdivScheme,
) -> SubdivStatus {
    guard(|| {
        let b = ref_arg(binary)?;
        let q = convert_theorem(&b.0)?.quaternary;
        if check_oracle && convert_via_symbol(&b.0)?.mask != q.mask {
            return Err(Fail(
                SubdivStatus::Analysis,
                "closed-form conversion differs from the symbol product".into(),
            ));
        }
        put(out, SubdivScheme(q))
    })
}

/// Hölder regularity with the default options.
///
/// # Safety
/// `scheme` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subdiv_holder(
    scheme: *const SubdivScheme,
    out: *mut SubdivRegularity,
) -> SubdivStatus {
    guard(|| {
        let s = ref_arg(scheme)?;
        if out.is_null() {
            return Err(null());
        }
        let r = holder_regularity(&s.0)?;
        *out = SubdivRegularity {
            arity: r.arity as u32,
            smoothing_order: r.smoothing_order as u32,
            xi_lower: r.xi_lower,
            xi_mid: r.xi_mid,
            xi_upper: r.xi_upper,
            r_lower: r.r_lower,
            r_mid: r.r_mid,
            r_upper: r.r_upper,
        };
        Ok(())
    })
}

/// Degrees of precision and generation, checking up to degree 16.
///
/// # Safety
/// `scheme` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subdiv_precision(
    scheme: *const SubdivScheme,
    out: *mut SubdivPrecision,
) -> SubdivStatus {
    guard(|| {
        let s = ref_arg(scheme)?;
        if out.is_null() {
            return Err(null());
        }
        let r = degree_of_precision(&s.0, DEFAULT_MAX_DEGREE)?;
        let shift = r.parameter_shift.as_ref().and_then(|t| {
            Some((
                i64::try_from(t.numer()).ok()?,
                i64::try_from(t.denom()).ok()?,
            ))
        });
        *out = SubdivPrecision {
            degree_of_precision: r.degree_of_precision,
            degree_of_generation: r.degree_of_generation,
            has_shift: shift.is_some(),
            shift_numerator: shift.map_or(0, |s| s.0),
            shift_denominator: shift.map_or(1, |s| s.1),
        };
        Ok(())
    })
}

/// Polygon from `count` points of `dimension` doubles each, read row by row.
/// Each double is taken at its exact binary value.
///
/// # Safety
/// `coords` must point to `count * dimension` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subdiv_polygon_new(
    coords: *const f64,
    count: usize,
    dimension: usize,
    closed: bool,
    out: *mut *mut SubdivPolygon,
) -> SubdivStatus {
    guard(|| {
        if coords.is_null() {
            return Err(null());
        }
        let len = count
            .checked_mul(dimension)
            .ok_or_else(|| Fail(SubdivStatus::Parse, "coordinate count overflows".into()))?;
        let values = std::slice::from_raw_parts(coords, len);
        let points = values
            .chunks(dimension.max(1))
            .map(|row| {
                row.iter()
                    .map(|&x| {
                        Rational::from_f64(x).ok_or_else(|| {
                            Fail(SubdivStatus::Parse, format!("coordinate {x} is not finite"))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let topology = if closed {
            Topology::Closed
        } else {
            Topology::Open
        };
        put(out, SubdivPolygon(Polygon::new(points, topology)?))
    })
}

/// Parses the polygon CSV form (optional `closed`/`open` header, one point per line).
///
/// # Safety
/// `csv` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subdiv_polygon_from_csv(
    csv: *const c_char,
    out: *mut *mut SubdivPolygon,
) -> SubdivStatus {
    guard(|| {
        let text = str_arg(csv)?;
        put(out, SubdivPolygon(Polygon::from_csv(text)?))
    })
}

/// # Safety
/// `polygon` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn subdiv_polygon_free(polygon: *mut SubdivPolygon) {
    if !polygon.is_null() {
        drop(Box::from_raw(polygon));
    }
}

/// Number of points, or 0 for a null handle.
///
/// # Safety
/// `polygon` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn subdiv_polygon_len(polygon: *const SubdivPolygon) -> usize {
    polygon.as_ref().map_or(0, |p| p.0.len())
}

/// Coordinates per point, or 0 for a null handle.
///
/// # Safety
/// `polygon` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn subdiv_polygon_dimension(polygon: *const SubdivPolygon) -> usize {
    polygon.as_ref().map_or(0, |p| p.0.dimension())
}

/// Copies the coordinates, rounded to double, into `buffer` row by row.
/// `capacity` is the number of doubles `buffer` holds.
///
/// # Safety
/// `polygon` must be a live handle; `buffer` must hold `capacity` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn subdiv_polygon_coords(
    polygon: *const SubdivPolygon,
    buffer: *mut f64,
    capacity: usize,
) -> SubdivStatus {
    guard(|| {
        let p = ref_arg(polygon)?;
        if buffer.is_null() {
            return Err(null());
        }
        let needed = p.0.len() * p.0.dimension();
        if capacity < needed {
            return Err(Fail(
                SubdivStatus::BufferTooSmall,
                format!("buffer holds {capacity} doubles, {needed} needed"),
            ));
        }
        let dst = std::slice::from_raw_parts_mut(buffer, needed);
        for (d, x) in dst.iter_mut().zip(p.0.to_f64().into_iter().flatten()) {
            *d = x;
        }
        Ok(())
    })
}

/// Exact CSV form with `"p/q"` coordinates.
///
/// # Safety
/// `polygon` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subdiv_polygon_to_csv(
    polygon: *const SubdivPolygon,
    out: *mut *mut c_char,
) -> SubdivStatus {
    guard(|| {
        let p = ref_arg(polygon)?;
        put_string(out, p.0.to_csv())
    })
}

/// Applies `steps` refinement steps.
///
/// # Safety
/// `polygon` and `scheme` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subdiv_refine(
    polygon: *const SubdivPolygon,
    scheme: *const SubdivScheme,
    steps: usize,
    out: *mut *mut SubdivPolygon,
) -> SubdivStatus {
    guard(|| {
        let p = ref_arg(polygon)?;
        let s = ref_arg(scheme)?;
        let trace = refine(&p.0, &s.0, steps)?;
        let last = trace.levels.into_iter().last().expect("input level");
        put(out, SubdivPolygon(last))
    })
}
