use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use gorenstein_ffi::*;

fn new_algebra(text: &str) -> (GorStatus, *mut GorAlgebra) {
    let t = CString::new(text).unwrap();
    let mut h = ptr::null_mut();
    let s = unsafe { gor_algebra_new(t.as_ptr(), &mut h) };
    (s, h)
}

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { gor_string_free(s) };
    out
}

fn last_error() -> Option<String> {
    let p = gor_last_error_message();
    (!p.is_null()).then(|| take(p))
}

const A1: &str = "vars = x, y\ngens = 2*x^3 + x*y^3, x^2*y^2 + 2*y^5\n";
const A3: &str = "vars = x, y\ngens = 2*x^3 + 3*x*y^3, 3*x^2*y^2 + 2*y^5\n";

#[test]
fn structure_and_nil_polynomial() {
    let (s, a) = new_algebra("vars = x\ngens = x^3\n");
    assert_eq!(s, GorStatus::Ok);
    let mut d = 0usize;
    assert_eq!(unsafe { gor_algebra_dimension(a, &mut d) }, GorStatus::Ok);
    assert_eq!(d, 3);

    let mut js = ptr::null_mut();
    assert_eq!(
        unsafe { gor_algebra_structure_json(a, &mut js) },
        GorStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take(js)).unwrap();
    assert_eq!(v["dimension"], 3);
    assert_eq!(v["nil_index"], 2);
    assert_eq!(v["gorenstein"], true);

    let mut p = ptr::null_mut();
    assert_eq!(unsafe { gor_nil_polynomial(a, &mut p) }, GorStatus::Ok);
    assert_eq!(take(p), "-1/2*a1^2");

    let mut q = ptr::null_mut();
    let mut ok = false;
    assert_eq!(
        unsafe { gor_inverse_system(a, &mut q, &mut ok) },
        GorStatus::Ok
    );
    assert!(ok);
    let _ = take(q);

    let g = CString::new("x^2").unwrap();
    assert_eq!(
        unsafe { gor_verify_inverse_system(a, g.as_ptr(), &mut ok) },
        GorStatus::Ok
    );
    assert!(ok);
    let g = CString::new("x^3").unwrap();
    assert_eq!(
        unsafe { gor_verify_inverse_system(a, g.as_ptr(), &mut ok) },
        GorStatus::Ok
    );
    assert!(!ok);
    unsafe { gor_algebra_free(a) };
}

#[test]
fn error_codes() {
    let cases = [
        ("vars = x, y\ngens = x^2\n", GorStatus::InfiniteDimensional),
        ("vars = x\ngens = x^+\n", GorStatus::Parse),
        ("vars = x\ngens = x^2\nflavour = 1\n", GorStatus::Parse),
    ];
    for (text, want) in cases {
        let (s, h) = new_algebra(text);
        assert_eq!(s, want, "{text}");
        assert!(h.is_null());
        assert!(last_error().is_some());
    }

    // locality is checked lazily, on first structural query
    let (s, a) = new_algebra("vars = x\ngens = x^2 - x\n");
    assert_eq!(s, GorStatus::Ok);
    let mut js = ptr::null_mut();
    assert_eq!(
        unsafe { gor_algebra_structure_json(a, &mut js) },
        GorStatus::NotLocal
    );
    unsafe { gor_algebra_free(a) };

    let (s, a) = new_algebra("vars = x, y\ngens = x^2, x*y, y^2\n");
    assert_eq!(s, GorStatus::Ok);
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { gor_nil_polynomial(a, &mut p) },
        GorStatus::NotGorenstein
    );
    assert!(p.is_null());
    assert!(last_error().unwrap().contains("not Gorenstein"));
    unsafe { gor_algebra_free(a) };

    assert_eq!(
        unsafe { gor_algebra_new(ptr::null(), &mut ptr::null_mut()) },
        GorStatus::InvalidArgument
    );
    let mut d = 0usize;
    assert_eq!(
        unsafe { gor_algebra_dimension(ptr::null(), &mut d) },
        GorStatus::InvalidArgument
    );
    unsafe { gor_algebra_free(ptr::null_mut()) };
    unsafe { gor_string_free(ptr::null_mut()) };
}

#[test]
fn success_clears_last_error() {
    let _ = new_algebra("vars = x, y\ngens = x^2\n");
    assert!(last_error().is_some());
    let (s, a) = new_algebra("vars = x\ngens = x^2\n");
    assert_eq!(s, GorStatus::Ok);
    assert!(last_error().is_none());
    unsafe { gor_algebra_free(a) };
}

#[test]
fn isocheck_verdicts() {
    let (_, a1) = new_algebra(A1);
    let (_, a3) = new_algebra(A3);
    let mut v = GorVerdict::Unknown;
    assert_eq!(unsafe { gor_isocheck(a1, a3, &mut v) }, GorStatus::Ok);
    assert_eq!(v, GorVerdict::NotIsomorphic);
    assert_eq!(unsafe { gor_isocheck(a1, a1, &mut v) }, GorStatus::Ok);
    assert_eq!(v, GorVerdict::Isomorphic);
    unsafe {
        gor_algebra_free(a1);
        gor_algebra_free(a3);
    }
}

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_declares_the_api() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/gorenstein.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in [
        "gor_algebra_new",
        "gor_algebra_free",
        "gor_algebra_dimension",
        "gor_algebra_structure_json",
        "gor_nil_polynomial",
        "gor_inverse_system",
        "gor_verify_inverse_system",
        "gor_isocheck",
        "gor_last_error_message",
        "gor_string_free",
        "typedef struct GorAlgebra GorAlgebra",
        "GOR_STATUS_NOT_GORENSTEIN = 5",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
}

#[test]
fn c_program_links_against_static_library() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libgorenstein_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let out = Path::new(env!("CARGO_TARGET_TMPDIR")).join("gor_smoke");
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
