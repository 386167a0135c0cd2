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

use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use votelab_ffi::*;

const FOUR_CANDIDATES: &str =
    "m 4\ncandidates a b c d\n29: a > b > c > d\n28: b > a > c > d\n22: c > d > a > b\n21: c > d > b > a\n";

fn parse(text: &str) -> (VlStatus, *mut VlProfile) {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { vl_profile_parse(c.as_ptr(), &mut out) };
    (status, out)
}

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let owned = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { vl_string_free(s) };
    owned
}

#[test]
fn winners_through_the_handle() {
    let (status, p) = parse(FOUR_CANDIDATES);
    assert_eq!(status, VlStatus::Ok);
    unsafe {
        assert_eq!(vl_profile_num_candidates(p), 4);
        assert_eq!(vl_profile_num_voters(p), 100);
        let mut mask = 0u32;
        let borda = CString::new("borda").unwrap();
        assert_eq!(vl_winners(p, borda.as_ptr(), &mut mask), VlStatus::Ok);
        assert_eq!(mask, 0b100);
        let black = CString::new("black").unwrap();
        assert_eq!(vl_winners(p, black.as_ptr(), &mut mask), VlStatus::Ok);
        assert_eq!(mask, 0b1);
        let mut name = ptr::null_mut();
        assert_eq!(vl_candidate_name(p, 2, &mut name), VlStatus::Ok);
        assert_eq!(take(name), "c");
        let mut json = ptr::null_mut();
        assert_eq!(vl_report_json(p, borda.as_ptr(), &mut json), VlStatus::Ok);
        let doc: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(doc["scores"][2]["exact"], "186");
        vl_profile_free(p);
    }
}

#[test]
fn errors_set_codes_and_messages() {
    let (status, p) = parse("m 4\n29: a > a > b > c\n");
    assert_eq!(status, VlStatus::Parse);
    assert!(p.is_null());
    let message = take(vl_last_error());
    assert!(message.contains("line 2"), "{message}");

    let (_, p) = parse(FOUR_CANDIDATES);
    unsafe {
        let bogus = CString::new("nope").unwrap();
        let mut mask = 0u32;
        assert_eq!(vl_winners(p, bogus.as_ptr(), &mut mask), VlStatus::UnknownRule);
        assert_eq!(vl_winners(ptr::null(), bogus.as_ptr(), &mut mask), VlStatus::NullPointer);
        let mut name = ptr::null_mut();
        assert_eq!(vl_candidate_name(p, 9, &mut name), VlStatus::InvalidProfile);
        vl_profile_free(p);
        vl_profile_free(ptr::null_mut());
        vl_string_free(ptr::null_mut());
    }
    let (ok, p) = parse(FOUR_CANDIDATES);
    assert_eq!(ok, VlStatus::Ok);
    assert!(vl_last_error().is_null());
    unsafe { vl_profile_free(p) };
}

#[test]
fn quota_strings() {
    let cm = CString::new("convexmedian").unwrap();
    let mut exact = ptr::null_mut();
    let mut value = 0.0;
    unsafe {
        assert_eq!(vl_quota(cm.as_ptr(), 2, 4, false, &mut exact, &mut value), VlStatus::Ok);
        assert_eq!(take(exact), "(-1+sqrt(33))/8");
        assert!((value - 0.5931).abs() < 1e-4);
        let pv = CString::new("vetocore").unwrap();
        assert_eq!(vl_quota(pv.as_ptr(), 1, 3, true, &mut exact, &mut value), VlStatus::Ok);
        assert_eq!(take(exact), "1/3");
        assert_eq!(vl_quota(pv.as_ptr(), 3, 3, false, &mut exact, &mut value), VlStatus::OutOfRange);
    }
}

#[test]
fn preflib_handle() {
    let text = CString::new("# NUMBER ALTERNATIVES: 2\n3: 2,1\n1: 1,2\n").unwrap();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(vl_profile_parse_preflib(text.as_ptr(), &mut out), VlStatus::Ok);
        let plurality = CString::new("plurality").unwrap();
        let mut mask = 0;
        assert_eq!(vl_winners(out, plurality.as_ptr(), &mut mask), VlStatus::Ok);
        assert_eq!(mask, 0b10);
        vl_profile_free(out);
    }
}

#[test]
fn header_declares_the_api() {
    let header = include_str!("../include/votelab.h");
    for name in [
        "typedef struct VlProfile VlProfile",
        "VL_STATUS_OK = 0",
        "vl_profile_parse(",
        "vl_profile_parse_preflib(",
        "vl_profile_free(",
        "vl_winners(",
        "vl_report_json(",
        "vl_quota(",
        "vl_last_error(",
        "vl_string_free(",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

/// Compiles and runs a C program against the header and static library
/// when a C compiler is on the path.
#[test]
fn c_program_links() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let deps = std::env::current_exe().unwrap().parent().unwrap().to_path_buf();
    let lib = deps.parent().unwrap().join("libvotelab_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "votelab.h"
int main(void) {
    const char *text = "4: a > b > c\n3: b > c > a\n2: c > b > a\n";
    VlProfile *p = NULL;
    if (vl_profile_parse(text, &p) != VL_STATUS_OK) return 1;
    uint32_t mask = 0;
    if (vl_winners(p, "irv", &mask) != VL_STATUS_OK) return 2;
    printf("%u\n", mask);
    vl_profile_free(p);
    if (vl_profile_parse("1: a > a\n", &p) != VL_STATUS_PARSE) return 3;
    char *msg = vl_last_error();
    printf("%s\n", msg);
    vl_string_free(msg);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("main");
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("2"));
    assert!(lines.next().unwrap().contains("twice"));
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
        .ok_or(())
}
