//! C ABI for `morse-res`.
//!
//! Ideals are opaque `MrIdeal` handles created by `mr_ideal_parse` or
//! `mr_ideal_cycle` and released with `mr_ideal_free`. Every fallible call
//! returns an `MrStatus`; on failure `mr_last_error` describes the problem
//! for the calling thread. Strings returned through `char **` out-parameters
//! are owned by the caller and released with `mr_string_free`.
//!
//! Array outputs follow one convention: the call writes the required length
//! to `*out_len`, and copies the values only when `capacity` suffices
//! (otherwise it returns `MR_STATUS_BUFFER_TOO_SMALL`). Passing a null buffer
//! with capacity 0 queries the length.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use morse_res::render::{self, Format};
use morse_res::search::{bridge_friendly_list, bridge_minimal_search, SearchMode, SearchOptions};
use morse_res::{
    betti_numbers, build_taylor, construct, critical_cells, cycle_edge_ideal, is_bridge_friendly,
    is_minimal, morse_differential_in, parse_ideal, Error, MatchingKind, MonomialIdeal,
    TaylorComplex,
};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Domain = 5,
    SearchGuard = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Which matching to build; all use the ideal's own generator order.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MrMatching {
    BarileMacchia = 0,
    Lyubeznik = 1,
    Trimmed = 2,
    Taylor = 3,
}

impl From<MrMatching> for MatchingKind {
    fn from(m: MrMatching) -> Self {
        match m {
            MrMatching::BarileMacchia => MatchingKind::BarileMacchia,
            MrMatching::Lyubeznik => MatchingKind::Lyubeznik,
            MrMatching::Trimmed => MatchingKind::Trimmed,
            MrMatching::Taylor => MatchingKind::Empty,
        }
    }
}

/// Opaque ideal handle with its Taylor complex.
pub struct MrIdeal {
    tc: TaylorComplex,
}

impl MrIdeal {
    fn ideal(&self) -> &MonomialIdeal {
        self.tc.ideal()
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> MrStatus {
    match e {
        Error::Parse { .. }
        | Error::UnknownVariable(_)
        | Error::InvalidVariableName(_)
        | Error::DuplicateVariable(_)
        | Error::EmptyContext
        | Error::NotMinimal(_)
        | Error::UnitGenerator => MrStatus::Parse,
        Error::SearchGuard { .. } => MrStatus::SearchGuard,
        Error::InvalidOrder(_)
        | Error::TooManyGenerators { .. }
        | Error::InvalidGraph(_)
        | Error::Invalid(_) => MrStatus::InvalidArgument,
        _ => MrStatus::Domain,
    }
}

struct Failure(MrStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Outcome) -> MrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            MrStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MrStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(MrStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(MrStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(p: *const MrIdeal) -> Result<&'a MrIdeal, Failure> {
    p.as_ref().ok_or_else(|| null("ideal"))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Outcome {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_array(
    values: &[usize],
    buf: *mut usize,
    capacity: usize,
    out_len: *mut usize,
) -> Outcome {
    write_out(out_len, values.len(), "out_len")?;
    if capacity < values.len() {
        return Err(Failure(
            MrStatus::BufferTooSmall,
            format!("need {} entries, capacity is {capacity}", values.len()),
        ));
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(null("buffer"));
        }
        std::ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

unsafe fn write_string(text: String, out: *mut *mut c_char) -> Outcome {
    let text = text.trim_end_matches('\n').to_owned();
    let c =
        CString::new(text).map_err(|_| Failure(MrStatus::Domain, "output contains nul".into()))?;
    write_out(out, c.into_raw(), "out")
}

fn new_handle(ideal: MonomialIdeal) -> Result<*mut MrIdeal, Failure> {
    let tc = build_taylor(&ideal)?;
    Ok(Box::into_raw(Box::new(MrIdeal { tc })))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread (empty after success).
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn mr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses an ideal file (`vars: ...` / `gens: ...`). Non-minimal generators
/// are dropped.
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mr_ideal_parse(text: *const c_char, out: *mut *mut MrIdeal) -> MrStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let h = new_handle(parse_ideal(text)?.ideal)?;
        write_out(out, h, "out").inspect_err(|_| drop(Box::from_raw(h)))
    })
}

/// Edge ideal of the `n`-cycle.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mr_ideal_cycle(n: usize, out: *mut *mut MrIdeal) -> MrStatus {
    guard(|| {
        let h = new_handle(cycle_edge_ideal(n)?)?;
        write_out(out, h, "out").inspect_err(|_| drop(Box::from_raw(h)))
    })
}

/// New handle with generators reordered by name, smallest first,
/// comma separated.
///
/// # Safety
/// `ideal` must be a live handle, `order` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mr_ideal_reorder(
    ideal: *const MrIdeal,
    order: *const c_char,
    out: *mut *mut MrIdeal,
) -> MrStatus {
    guard(|| {
        let i = handle(ideal)?.ideal();
        let perm = i.order_from_names(str_arg(order, "order")?)?;
        let h = new_handle(i.reordered(&perm)?)?;
        write_out(out, h, "out").inspect_err(|_| drop(Box::from_raw(h)))
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `ideal` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mr_ideal_free(ideal: *mut MrIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mr_ideal_num_generators(
    ideal: *const MrIdeal,
    out: *mut usize,
) -> MrStatus {
    guard(|| write_out(out, handle(ideal)?.ideal().len(), "out"))
}

/// The ideal in file format.
///
/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mr_ideal_to_string(
    ideal: *const MrIdeal,
    out: *mut *mut c_char,
) -> MrStatus {
    guard(|| write_string(handle(ideal)?.ideal().to_file_string(), out))
}

/// Ranks of the resolution from `kind`, degrees `0..=n`.
///
/// # Safety
/// `ideal` must be a live handle; `buf` must hold `capacity` entries.
#[no_mangle]
pub unsafe extern "C" fn mr_ranks(
    ideal: *const MrIdeal,
    kind: MrMatching,
    buf: *mut usize,
    capacity: usize,
    out_len: *mut usize,
) -> MrStatus {
    guard(|| {
        let tc = &handle(ideal)?.tc;
        let (m, family) = construct(tc, kind.into(), None)?;
        write_array(
            &critical_cells(tc, &m, family.as_ref()).ranks(),
            buf,
            capacity,
            out_len,
        )
    })
}

/// Total Betti numbers over the rationals, degrees `0..=n`.
///
/// # Safety
/// As [`mr_ranks`].
#[no_mangle]
pub unsafe extern "C" fn mr_betti_totals(
    ideal: *const MrIdeal,
    buf: *mut usize,
    capacity: usize,
    out_len: *mut usize,
) -> MrStatus {
    guard(|| {
        write_array(
            &betti_numbers(&handle(ideal)?.tc)?.totals,
            buf,
            capacity,
            out_len,
        )
    })
}

/// Whether the resolution from `kind` is minimal.
///
/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mr_is_minimal(
    ideal: *const MrIdeal,
    kind: MrMatching,
    out: *mut bool,
) -> MrStatus {
    guard(|| {
        let tc = &handle(ideal)?.tc;
        let (m, family) = construct(tc, kind.into(), None)?;
        write_out(
            out,
            is_minimal(&morse_differential_in(tc, &m, family.as_ref())?),
            "out",
        )
    })
}

/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mr_is_bridge_friendly(ideal: *const MrIdeal, out: *mut bool) -> MrStatus {
    guard(|| write_out(out, is_bridge_friendly(&handle(ideal)?.tc)?, "out"))
}

/// Matching edges as JSON: `[{"source":[...],"target":[...]}, ...]`.
///
/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mr_matching_json(
    ideal: *const MrIdeal,
    kind: MrMatching,
    out: *mut *mut c_char,
) -> MrStatus {
    guard(|| {
        let tc = &handle(ideal)?.tc;
        let (m, _) = construct(tc, kind.into(), None)?;
        write_string(render::matching(tc.ideal(), &m, Format::Json), out)
    })
}

/// Critical cells as JSON, grouped by cardinality from `n` down to 1.
///
/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mr_critical_json(
    ideal: *const MrIdeal,
    kind: MrMatching,
    out: *mut *mut c_char,
) -> MrStatus {
    guard(|| {
        let tc = &handle(ideal)?.tc;
        let (m, family) = construct(tc, kind.into(), None)?;
        write_string(
            render::critical(
                tc.ideal(),
                &critical_cells(tc, &m, family.as_ref()),
                Format::Json,
            ),
            out,
        )
    })
}

/// Morse complex as JSON: basis per degree and sparse differentials.
///
/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mr_complex_json(
    ideal: *const MrIdeal,
    kind: MrMatching,
    out: *mut *mut c_char,
) -> MrStatus {
    guard(|| {
        let tc = &handle(ideal)?.tc;
        let (m, family) = construct(tc, kind.into(), None)?;
        let mc = morse_differential_in(tc, &m, family.as_ref())?;
        write_string(render::morse_complex(tc.ideal(), &mc, Format::Json), out)
    })
}

/// Every bridge-friendly order with its matching, as JSON.
///
/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mr_friendly_list_json(
    ideal: *const MrIdeal,
    workers: usize,
    force: bool,
    out: *mut *mut c_char,
) -> MrStatus {
    guard(|| {
        let i = handle(ideal)?.ideal();
        let opts = SearchOptions {
            workers,
            force,
            progress: None,
        };
        write_string(
            render::friendly_list(i, &bridge_friendly_list(i, &opts)?, Format::Json),
            out,
        )
    })
}

/// Searches for an order with a minimal Barile-Macchia resolution, as
/// JSON `{"betti":[...],"tried":N,"hits":N,"witness":null|{...}}`.
///
/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mr_minimal_search_json(
    ideal: *const MrIdeal,
    exhaustive: bool,
    workers: usize,
    force: bool,
    out: *mut *mut c_char,
) -> MrStatus {
    guard(|| {
        let i = handle(ideal)?.ideal();
        let opts = SearchOptions {
            workers,
            force,
            progress: None,
        };
        let mode = if exhaustive {
            SearchMode::Exhaustive
        } else {
            SearchMode::FirstHit
        };
        write_string(
            render::minimal_search(i, &bridge_minimal_search(i, mode, &opts)?, Format::Json),
            out,
        )
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
