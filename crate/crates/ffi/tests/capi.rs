use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use scasc_ffi::*;

fn data(name: &str) -> CString {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(format!("{name}.ua"));
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

fn parse(name: &str) -> *mut ScascClass {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { scasc_class_parse(data(name).as_ptr(), &mut h) }, ScascStatus::Ok);
    assert!(!h.is_null());
    h
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    scasc_string_free(s);
    out
}

fn last_error() -> String {
    let p = scasc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn free_sizes_and_members() {
    let h = parse("semilattice");
    let mut n = 0;
    unsafe {
        assert_eq!(scasc_free_algebra_size(h, 2, ptr::null(), &mut n), ScascStatus::Ok);
        assert_eq!(n, 3);
        assert_eq!(scasc_class_member_count(h, &mut n), ScascStatus::Ok);
        assert_eq!(n, 1);
        scasc_class_free(h);
    }
    assert!(scasc_last_error().is_null());
}

#[test]
fn discriminator_terms() {
    let h = parse("three_elem_pure_disc");
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(scasc_discriminator_term(h, ptr::null(), &mut s), ScascStatus::Ok);
        assert_eq!(take(s), "d(x0,x1,x2)");
        scasc_class_free(h);
    }
    let h = parse("semilattice");
    unsafe {
        assert_eq!(scasc_discriminator_term(h, ptr::null(), &mut s), ScascStatus::Ok);
        assert!(s.is_null());
        scasc_class_free(h);
    }
}

#[test]
fn verdict_and_classification_json() {
    let h = parse("three_elem_disc");
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(scasc_verdict_json(h, ptr::null(), &mut s), ScascStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["asc"], "yes");
        assert_eq!(v["sc"], "no");
        let q = CString::new("d(x0,c0,c1)=x0 & d(x0,c1,c0)=x0 => c0=c1").unwrap();
        assert_eq!(scasc_classify_json(h, q.as_ptr(), ptr::null(), &mut s), ScascStatus::Ok);
        let c: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(c["valid_in_q"], false);
        assert_eq!(c["admissible"], true);
        assert_eq!(c["activity"], "passive");
        scasc_class_free(h);
    }
}

#[test]
fn status_codes() {
    let mut h = ptr::null_mut();
    let bad = CString::new("algebra A size 2\nop f 1\n0").unwrap();
    unsafe {
        assert_eq!(scasc_class_parse(bad.as_ptr(), &mut h), ScascStatus::InvalidInput);
        assert!(h.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(scasc_class_parse(ptr::null(), &mut h), ScascStatus::NullPointer);
        let invalid = [0xffu8, 0];
        assert_eq!(scasc_class_parse(invalid.as_ptr().cast(), &mut h), ScascStatus::Utf8);

        let h = parse("boolean");
        let mut n = 0;
        let mut lim = scasc_limits_default();
        lim.free_elements = 10;
        assert_eq!(scasc_free_algebra_size(h, 3, &lim, &mut n), ScascStatus::Capacity);
        assert!(last_error().contains("capacity"));
        assert_eq!(scasc_free_algebra_size(ptr::null(), 1, ptr::null(), &mut n), ScascStatus::NullPointer);
        let q = CString::new("meet(x0) = x0").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(scasc_classify_json(h, q.as_ptr(), ptr::null(), &mut s), ScascStatus::InvalidInput);
        assert!(s.is_null());
        scasc_class_free(h);
        scasc_class_free(ptr::null_mut());
        scasc_string_free(ptr::null_mut());
    }
}

/// Directory holding the library artifacts built alongside this test.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let lib = artifact_dir().join("libscasc_ffi.a");
    assert!(lib.exists(), "{}", lib.display());
    let dir = std::env::temp_dir().join(format!("scasc-capi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "scasc.h"

static const char *SEMILATTICE = "algebra S size 2\nop meet 2\n0 0\n0 1\n";

int main(void) {
    ScascClass *h = NULL;
    if (scasc_class_parse(SEMILATTICE, &h) != SCASC_STATUS_OK) return 10;
    size_t n = 0;
    if (scasc_free_algebra_size(h, 2, NULL, &n) != SCASC_STATUS_OK) return 11;
    char *term = NULL;
    if (scasc_discriminator_term(h, NULL, &term) != SCASC_STATUS_OK || term != NULL) return 12;
    ScascLimits lim = scasc_limits_default();
    lim.free_elements = 2;
    size_t m = 0;
    if (scasc_free_algebra_size(h, 3, &lim, &m) != SCASC_STATUS_CAPACITY) return 13;
    if (scasc_last_error() == NULL) return 14;
    scasc_class_free(h);
    printf("%zu\n", n);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.join("capi");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "3");
    let _ = std::fs::remove_dir_all(&dir);
}
