// Copyright 2026 The votelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! C ABI for votelab.
//!
//! Profiles live behind an opaque `VlProfile` handle created by
//! `vl_profile_parse` and released with `vl_profile_free`. Every fallible
//! call returns a `VlStatus`; on failure `vl_last_error` gives the message
//! for the calling thread. Strings returned by the library are owned by the
//! caller and released with `vl_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use votelab::io::{parse_preflib_soc, parse_profile, render, Format, ResultDocument};
use votelab::quota::{quota_majority, quota_veto};
use votelab::{Error, Profile, Rule};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidProfile = 4,
    UnknownRule = 5,
    OutOfRange = 6,
    InvalidNumber = 7,
    BudgetExceeded = 8,
    Panic = 9,
}

/// Opaque profile handle.
pub struct VlProfile {
    inner: Profile,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> VlStatus {
    match e {
        Error::Parse { .. } => VlStatus::Parse,
        Error::InvalidProfile(_) | Error::EmptySubset | Error::UnknownCandidate(_) => {
            VlStatus::InvalidProfile
        }
        Error::UnknownRule(_) | Error::InvalidScores(_) => VlStatus::UnknownRule,
        Error::OutOfRange(_) | Error::Divisibility(_) => VlStatus::OutOfRange,
        Error::InvalidNumber(_) => VlStatus::InvalidNumber,
        Error::BudgetExceeded(_) => VlStatus::BudgetExceeded,
    }
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), (VlStatus, String)>) -> VlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            VlStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            VlStatus::Panic
        }
    }
}

fn lib(e: Error) -> (VlStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (VlStatus, String) {
    (VlStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, (VlStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (VlStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(p: *const VlProfile) -> Result<&'a Profile, (VlStatus, String)> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null("profile"))
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

fn parse_into(
    text_ptr: *const c_char,
    out: *mut *mut VlProfile,
    parse: fn(&str) -> votelab::Result<Profile>,
) -> VlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let t = unsafe { text(text_ptr, "text")? };
        let inner = parse(t).map_err(lib)?;
        unsafe { *out = Box::into_raw(Box::new(VlProfile { inner })) };
        Ok(())
    })
}

/// Parses a profile in the votelab line format into `*out`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn vl_profile_parse(text: *const c_char, out: *mut *mut VlProfile) -> VlStatus {
    parse_into(text, out, parse_profile)
}

/// Parses PrefLib strict-complete-order data into `*out`.
///
/// # Safety
/// As for `vl_profile_parse`.
#[no_mangle]
pub unsafe extern "C" fn vl_profile_parse_preflib(text: *const c_char, out: *mut *mut VlProfile) -> VlStatus {
    parse_into(text, out, parse_preflib_soc)
}

/// Releases a profile; null is ignored.
///
/// # Safety
/// `profile` must come from a parse call and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vl_profile_free(profile: *mut VlProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// Number of candidates, or 0 for a null handle.
///
/// # Safety
/// `profile` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vl_profile_num_candidates(profile: *const VlProfile) -> usize {
    profile.as_ref().map_or(0, |h| h.inner.num_candidates())
}

/// Number of voters, or 0 for a null handle.
///
/// # Safety
/// `profile` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vl_profile_num_voters(profile: *const VlProfile) -> u64 {
    profile.as_ref().map_or(0, |h| h.inner.num_voters())
}

/// Name of candidate `index` (0-based) in `*out`.
///
/// # Safety
/// `profile` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vl_candidate_name(
    profile: *const VlProfile,
    index: usize,
    out: *mut *mut c_char,
) -> VlStatus {
    guard(|| {
        let p = handle(profile)?;
        if out.is_null() {
            return Err(null("out"));
        }
        if index >= p.num_candidates() {
            return Err(lib(Error::UnknownCandidate(index)));
        }
        *out = owned(p.name(index).to_string());
        Ok(())
    })
}

/// Winners of `rule` as a bit mask: bit `i` set when candidate `i` wins.
///
/// # Safety
/// `profile` must be a live handle, `rule` a nul-terminated string and
/// `out_mask` writable.
#[no_mangle]
pub unsafe extern "C" fn vl_winners(
    profile: *const VlProfile,
    rule: *const c_char,
    out_mask: *mut u32,
) -> VlStatus {
    guard(|| {
        let p = handle(profile)?;
        let rule: Rule = text(rule, "rule")?.parse().map_err(lib)?;
        if out_mask.is_null() {
            return Err(null("out_mask"));
        }
        *out_mask = rule.winners(p).map_err(lib)?.set().bits();
        Ok(())
    })
}

/// Scores and winners of `rule` as a JSON result document in `*out`.
///
/// # Safety
/// As for `vl_winners`, with `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vl_report_json(
    profile: *const VlProfile,
    rule: *const c_char,
    out: *mut *mut c_char,
) -> VlStatus {
    guard(|| {
        let p = handle(profile)?;
        let id = text(rule, "rule")?;
        let rule: Rule = id.parse().map_err(lib)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let report = rule.report(p).map_err(lib)?;
        let doc = ResultDocument::new(format!("winners --rule {id} --scores"))
            .with_report(&rule, p, &report)
            .with_trace(p, &report);
        *out = owned(render(&doc, Format::Json));
        Ok(())
    })
}

/// Minimal quota for `rule` with `k` protected candidates out of `m`
/// (`veto` nonzero: `k` is the number of vetoed candidates instead).
/// The exact form goes to `*out_exact`, its value to `*out_value`; the
/// lower end is reported for interval bounds.
///
/// # Safety
/// `rule` must be a nul-terminated string; `out_exact` and `out_value`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn vl_quota(
    rule: *const c_char,
    k: usize,
    m: usize,
    veto: bool,
    out_exact: *mut *mut c_char,
    out_value: *mut f64,
) -> VlStatus {
    guard(|| {
        let rule: Rule = text(rule, "rule")?.parse().map_err(lib)?;
        if out_exact.is_null() || out_value.is_null() {
            return Err(null("output pointer"));
        }
        let q = if veto { quota_veto(&rule, k, m) } else { quota_majority(&rule, k, m) }.map_err(lib)?;
        *out_exact = owned(q.to_string());
        *out_value = q.lower().to_f64();
        Ok(())
    })
}

/// Message of the calling thread's last failure, or null. Free with
/// `vl_string_free`.
#[no_mangle]
pub extern "C" fn vl_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
