//! C ABI for `waring-sieve`.
//!
//! Every function returns a [`WsStatus`]; results go through out-pointers.
//! Tables and report lists are opaque handles released with their `_free`
//! function. On failure the message is kept per thread and can be read with
//! [`ws_last_error_message`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::size_t;
use num_bigint::BigUint;

use waring_sieve::bounds::{self, BoundParams, BoundReport, LogBase};
use waring_sieve::counters::{self, Algorithm, ValuedDomain};
use waring_sieve::field::{self, character_profile};
use waring_sieve::real::{ratio_to_f64, DEFAULT_BITS};
use waring_sieve::report;
use waring_sieve::waring;
use waring_sieve::{Error, PrimeModulus};

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WsStatus {
    Ok = 0,
    InvalidArgument = 1,
    NotPrime = 2,
    OutOfRange = 3,
    NullPointer = 4,
    BufferTooSmall = 5,
    Internal = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WsAlgorithm {
    Dp = 0,
    Genfun = 1,
    Newton = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WsBound {
    Os = 0,
    OsLog2 = 1,
    Zhuwan = 2,
    Expsum = 3,
    Open = 4,
}

/// Counts indexed by target residue.
pub struct WsCountTable {
    k: Option<usize>,
    counts: Vec<BigUint>,
}

/// Bound reports in evaluation order.
pub struct WsReportList {
    reports: Vec<BoundReport>,
}

/// One bound report flattened for C. Absent indices are -1.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WsBoundRow {
    pub p: u64,
    pub m: i64,
    pub k: i64,
    pub b: i64,
    pub a: i64,
    pub lhs: f64,
    pub rhs: f64,
    pub numeric_error: f64,
    pub holds: bool,
    pub asserted: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(WsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::ModulusTooSmall(_) | Error::EvenModulus(_) | Error::Composite { .. } => WsStatus::NotPrime,
            Error::KOutOfRange { .. } => WsStatus::OutOfRange,
            Error::NonIntegral { .. } => WsStatus::Internal,
            _ => WsStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(WsStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> WsStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WsStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            WsStatus::Panic
        }
    }
}

fn modulus(p: u64) -> Result<PrimeModulus, Failure> {
    Ok(PrimeModulus::new(p)?)
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn domain_from_raw(p: u64, values: *const u64, multiplicities: *const u64, len: size_t) -> Result<ValuedDomain, Failure> {
    if len > 0 && values.is_null() {
        return Err(null("values"));
    }
    let vals = if len == 0 { &[][..] } else { std::slice::from_raw_parts(values, len) };
    let mults = if multiplicities.is_null() || len == 0 { None } else { Some(std::slice::from_raw_parts(multiplicities, len)) };
    let items = vals.iter().enumerate().map(|(i, &v)| (v, mults.map_or(1, |m| m[i])));
    Ok(ValuedDomain::new(modulus(p)?, items)?)
}

/// Message for the last failed call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn ws_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ws_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// `N*_m(k, .)` for subsets of `F_p*`.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn ws_count_odlyzko_stanley(p: u64, m: u64, k: size_t, out: *mut *mut WsCountTable) -> WsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let table = counters::count_odlyzko_stanley(modulus(p)?, m, k)?;
        let handle = Box::new(WsCountTable { k: Some(k), counts: table.into_counts() });
        write_out(out, Box::into_raw(handle), "out")
    })
}

/// `N(k, ., D)` for the multiset `D` given as parallel arrays; NULL
/// `multiplicities` means every value occurs once.
///
/// # Safety
/// `values` (and `multiplicities` unless NULL) must point to `len` readable
/// elements; `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn ws_count_domain(
    p: u64,
    values: *const u64,
    multiplicities: *const u64,
    len: size_t,
    k: size_t,
    algorithm: WsAlgorithm,
    out: *mut *mut WsCountTable,
) -> WsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let domain = domain_from_raw(p, values, multiplicities, len)?;
        let alg = match algorithm {
            WsAlgorithm::Dp => Algorithm::Dp,
            WsAlgorithm::Genfun => Algorithm::Genfun,
            WsAlgorithm::Newton => Algorithm::Newton,
        };
        let mut tables = alg.run(&domain, k)?;
        let table = tables.pop().expect("k + 1 tables");
        write_out(out, Box::into_raw(Box::new(WsCountTable { k: Some(k), counts: table.into_counts() })), "out")
    })
}

/// `N*_m(b)` over subsets of every size.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn ws_total_count(p: u64, m: u64, out: *mut *mut WsCountTable) -> WsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let counts = counters::total_count(modulus(p)?, m)?;
        write_out(out, Box::into_raw(Box::new(WsCountTable { k: None, counts })), "out")
    })
}

/// Number of targets (`p`), or 0 for NULL.
///
/// # Safety
/// `table` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ws_count_table_len(table: *const WsCountTable) -> size_t {
    table.as_ref().map_or(0, |t| t.counts.len())
}

/// Subset size of the table, or -1 for totals and NULL.
///
/// # Safety
/// `table` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ws_count_table_k(table: *const WsCountTable) -> i64 {
    table.as_ref().and_then(|t| t.k).map_or(-1, |k| k as i64)
}

/// Count at `b` as a decimal string. `required` receives the length
/// including the terminating NUL; with a short buffer the call returns
/// `BufferTooSmall` and writes nothing else.
///
/// # Safety
/// `table` must be a live handle; `buf` must hold `buf_len` bytes (or be
/// NULL with `buf_len == 0`); `required` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn ws_count_table_get(
    table: *const WsCountTable,
    b: u64,
    buf: *mut c_char,
    buf_len: size_t,
    required: *mut size_t,
) -> WsStatus {
    guard(|| {
        let t = table.as_ref().ok_or_else(|| null("table"))?;
        let value = t.counts.get(b as usize).ok_or_else(|| Failure(WsStatus::OutOfRange, format!("target {b} out of range")))?;
        let text = value.to_str_radix(10);
        let need = text.len() + 1;
        if !required.is_null() {
            required.write(need);
        }
        if buf.is_null() || buf_len < need {
            return Err(Failure(WsStatus::BufferTooSmall, format!("need {need} bytes")));
        }
        ptr::copy_nonoverlapping(text.as_ptr(), buf.cast::<u8>(), text.len());
        buf.add(text.len()).write(0);
        Ok(())
    })
}

/// Count at `b` as `u64`; `OutOfRange` if it does not fit.
///
/// # Safety
/// `table` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ws_count_table_get_u64(table: *const WsCountTable, b: u64, out: *mut u64) -> WsStatus {
    guard(|| {
        let t = table.as_ref().ok_or_else(|| null("table"))?;
        let value = t.counts.get(b as usize).ok_or_else(|| Failure(WsStatus::OutOfRange, format!("target {b} out of range")))?;
        let v = u64::try_from(value).map_err(|_| Failure(WsStatus::OutOfRange, "count exceeds 64 bits".into()))?;
        write_out(out, v, "out")
    })
}

/// # Safety
/// `table` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ws_count_table_free(table: *mut WsCountTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// `gamma(m, p)`; always exists.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ws_gamma_ordinary(p: u64, m: u64, out: *mut u64) -> WsStatus {
    guard(|| {
        let r = waring::gamma_ordinary(modulus(p)?, m)?;
        write_out(out, r.value.expect("1 is an m-th power") as u64, "out")
    })
}

/// `gamma'(m, p)`. `exists` is false (and `out` 0) when no `k` works.
///
/// # Safety
/// `out` and `exists` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ws_gamma_distinct(p: u64, m: u64, out: *mut u64, exists: *mut bool) -> WsStatus {
    guard(|| {
        if out.is_null() || exists.is_null() {
            return Err(null("out"));
        }
        let r = waring::gamma_distinct(modulus(p)?, m)?;
        write_out(exists, r.value.is_some(), "exists")?;
        write_out(out, r.value.unwrap_or(0) as u64, "out")
    })
}

/// `|sum_{x in F_p*} e(a x^m / p)|` in double precision.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ws_monomial_exp_sum(p: u64, m: u64, a: u64, out: *mut f64) -> WsStatus {
    guard(|| write_out(out, field::monomial_exp_sum(modulus(p)?, m, a)?, "out"))
}

/// `Phi(D)` for the set `D`, with an absolute error bound.
///
/// # Safety
/// `values` must point to `len` readable elements; `phi` and `error` must be
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ws_phi(p: u64, values: *const u64, len: size_t, phi: *mut f64, error: *mut f64) -> WsStatus {
    guard(|| {
        if phi.is_null() || error.is_null() {
            return Err(null("out"));
        }
        let profile = character_profile(&domain_from_raw(p, values, ptr::null(), len)?)?;
        write_out(phi, profile.phi(), "phi")?;
        write_out(error, profile.error_bound(), "error")
    })
}

unsafe fn emit_reports(reports: Vec<BoundReport>, out: *mut *mut WsReportList) -> Result<(), Failure> {
    write_out(out, Box::into_raw(Box::new(WsReportList { reports })), "out")
}

/// Unconditional bounds and the open-problem form. `k` is ignored by `Os`,
/// `OsLog2` and `Expsum`.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn ws_check(bound: WsBound, p: u64, m: u64, k: size_t, out: *mut *mut WsReportList) -> WsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let md = modulus(p)?;
        let reports = match bound {
            WsBound::Os => bounds::check_os_total(md, m, LogBase::Natural, DEFAULT_BITS)?,
            WsBound::OsLog2 => bounds::check_os_total(md, m, LogBase::Two, DEFAULT_BITS)?,
            WsBound::Zhuwan => bounds::check_zhu_wan(md, m, k, DEFAULT_BITS)?,
            WsBound::Expsum => bounds::check_exp_sum(md, m, DEFAULT_BITS)?,
            WsBound::Open => bounds::check_open_problem(md, m, k, DEFAULT_BITS)?,
        };
        emit_reports(reports, out)
    })
}

/// The character-sum count bound for an explicit set.
///
/// # Safety
/// `values` must point to `len` readable elements; `out` must be valid for a
/// pointer write.
#[no_mangle]
pub unsafe extern "C" fn ws_check_lemma31(
    p: u64,
    values: *const u64,
    len: size_t,
    k: size_t,
    out: *mut *mut WsReportList,
) -> WsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let domain = domain_from_raw(p, values, ptr::null(), len)?;
        emit_reports(bounds::check_lemma31(&domain, k, DEFAULT_BITS)?, out)
    })
}

/// The main conditional inequality at explicit `delta` and `epsilon`.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn ws_check_thm11(
    p: u64,
    m: u64,
    k: size_t,
    delta: f64,
    epsilon: f64,
    out: *mut *mut WsReportList,
) -> WsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let params = BoundParams { delta, epsilon, ..Default::default() };
        emit_reports(bounds::check_thm11(modulus(p)?, m, k, &params)?, out)
    })
}

/// Largest `epsilon` at which the main inequality holds for every target.
///
/// # Safety
/// `epsilon` and `saturated` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ws_fit_epsilon(p: u64, m: u64, k: size_t, epsilon: *mut f64, saturated: *mut bool) -> WsStatus {
    guard(|| {
        if epsilon.is_null() || saturated.is_null() {
            return Err(null("out"));
        }
        let fit = bounds::fit_epsilon(modulus(p)?, m, k, DEFAULT_BITS)?;
        write_out(saturated, fit.saturated, "saturated")?;
        write_out(epsilon, fit.epsilon, "epsilon")
    })
}

/// # Safety
/// `list` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ws_report_list_len(list: *const WsReportList) -> size_t {
    list.as_ref().map_or(0, |l| l.reports.len())
}

/// Number of reports in the list that fail an unconditional bound.
///
/// # Safety
/// `list` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ws_report_list_violations(list: *const WsReportList) -> size_t {
    list.as_ref().map_or(0, |l| l.reports.iter().filter(|r| r.is_violation()).count())
}

fn index(v: Option<impl TryInto<i64>>) -> i64 {
    v.and_then(|x| x.try_into().ok()).unwrap_or(-1)
}

/// # Safety
/// `list` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn ws_report_list_get(list: *const WsReportList, i: size_t, out: *mut WsBoundRow) -> WsStatus {
    guard(|| {
        let l = list.as_ref().ok_or_else(|| null("list"))?;
        let r = l.reports.get(i).ok_or_else(|| Failure(WsStatus::OutOfRange, format!("index {i} out of range")))?;
        let row = WsBoundRow {
            p: r.p,
            m: index(r.m),
            k: index(r.k),
            b: index(r.b),
            a: index(r.a),
            lhs: r.lhs.to_f64(),
            rhs: r.rhs.to_f64(),
            numeric_error: ratio_to_f64(&r.numeric_error()),
            holds: r.holds(),
            asserted: r.is_asserted(),
        };
        write_out(out, row, "out")
    })
}

/// Reports serialized as JSON lines; free with [`ws_string_free`].
///
/// # Safety
/// `list` must be a live handle; `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn ws_report_list_to_jsonl(list: *const WsReportList, out: *mut *mut c_char) -> WsStatus {
    guard(|| {
        let l = list.as_ref().ok_or_else(|| null("list"))?;
        let rows: Vec<report::Row> = l.reports.iter().map(report::bound_row).collect();
        let mut buf = Vec::new();
        report::write_jsonl(&rows, &mut buf).map_err(|e| Failure(WsStatus::Internal, e.to_string()))?;
        let s = CString::new(buf).map_err(|e| Failure(WsStatus::Internal, e.to_string()))?;
        write_out(out, s.into_raw(), "out")
    })
}

/// # Safety
/// `list` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ws_report_list_free(list: *mut WsReportList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ws_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

