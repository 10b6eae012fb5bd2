use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use robcert_ffi::*;

unsafe fn matrix(rows: &[[i64; 4]; 4]) -> *mut RobcertMatrix {
    let flat: Vec<i64> = rows.iter().flatten().copied().collect();
    let mut m = ptr::null_mut();
    assert_eq!(robcert_matrix_from_i64(4, flat.as_ptr(), &mut m), RobcertStatus::Ok);
    m
}

const CLAW: [[i64; 4]; 4] = [[0, 1, 1, 1], [1, 0, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0]];
const PATH: [[i64; 4]; 4] = [[0, 3, 2, 1], [3, 0, 3, 2], [2, 3, 0, 3], [1, 2, 3, 0]];

#[test]
fn certify_an_ordering() {
    unsafe {
        let m = matrix(&PATH);
        assert_eq!(robcert_matrix_size(m), 4);
        let mut c = ptr::null_mut();
        assert_eq!(robcert_certify(m, &mut c), RobcertStatus::Ok);
        assert!(robcert_certificate_is_robinsonian(c));

        let mut len = 0;
        assert_eq!(robcert_certificate_ordering(c, ptr::null_mut(), 0, &mut len), RobcertStatus::BufferTooSmall);
        assert_eq!(len, 4);
        let mut buf = vec![0usize; len];
        assert_eq!(robcert_certificate_ordering(c, buf.as_mut_ptr(), buf.len(), &mut len), RobcertStatus::Ok);
        assert!(buf == [0, 1, 2, 3] || buf == [3, 2, 1, 0]);

        let mut triple = [0usize; 3];
        assert_eq!(robcert_certificate_triple(c, triple.as_mut_ptr()), RobcertStatus::WrongKind);
        assert!(!robcert_last_error_message().is_null());

        let mut valid = false;
        assert_eq!(robcert_certificate_verify(c, m, &mut valid), RobcertStatus::Ok);
        assert!(valid);
        assert!(robcert_last_error_message().is_null());

        let mut count = 9;
        assert_eq!(robcert_count_wats(m, &mut count), RobcertStatus::Ok);
        assert_eq!(count, 0);

        robcert_certificate_free(c);
        robcert_matrix_free(m);
    }
}

#[test]
fn certify_a_triple_and_round_trip() {
    unsafe {
        let m = matrix(&CLAW);
        let mut c = ptr::null_mut();
        assert_eq!(robcert_certify(m, &mut c), RobcertStatus::Ok);
        assert!(!robcert_certificate_is_robinsonian(c));
        let mut triple = [0usize; 3];
        assert_eq!(robcert_certificate_triple(c, triple.as_mut_ptr()), RobcertStatus::Ok);
        assert_eq!(triple, [1, 2, 3]);

        let mut json = ptr::null_mut();
        assert_eq!(robcert_certificate_to_json(c, m, &mut json), RobcertStatus::Ok);
        let doc = CStr::from_ptr(json).to_str().unwrap().to_owned();
        assert!(doc.contains("\"verified\":true"));

        let mut text = ptr::null_mut();
        assert_eq!(robcert_certificate_to_text(c, &mut text), RobcertStatus::Ok);
        assert!(CStr::from_ptr(text).to_str().unwrap().starts_with("not robinsonian\n"));

        for form in [json, text] {
            let mut back = ptr::null_mut();
            assert_eq!(robcert_certificate_from_text(form, &mut back), RobcertStatus::Ok);
            let mut valid = false;
            assert_eq!(robcert_certificate_verify(back, m, &mut valid), RobcertStatus::Ok);
            assert!(valid);
            robcert_certificate_free(back);
        }
        robcert_string_free(json);
        robcert_string_free(text);
        robcert_certificate_free(c);
        robcert_matrix_free(m);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut m = ptr::null_mut();
        let asym = [0i64, 1, 2, 0];
        assert_eq!(robcert_matrix_from_i64(2, asym.as_ptr(), &mut m), RobcertStatus::Asymmetric);
        assert!(m.is_null());
        let msg = CStr::from_ptr(robcert_last_error_message()).to_str().unwrap();
        assert!(msg.contains("not symmetric"), "{msg}");

        assert_eq!(robcert_matrix_from_i64(2, ptr::null(), &mut m), RobcertStatus::NullPointer);
        assert_eq!(robcert_matrix_from_i64(2, asym.as_ptr(), ptr::null_mut()), RobcertStatus::NullPointer);

        let bad = CString::new("3\n0 1\n").unwrap();
        assert_eq!(robcert_matrix_from_text(bad.as_ptr(), &mut m), RobcertStatus::InvalidInput);

        let good = CString::new("lower 3\n0\n1 0\n1 0 0\n").unwrap();
        assert_eq!(robcert_matrix_from_text(good.as_ptr(), &mut m), RobcertStatus::Ok);
        assert_eq!(robcert_matrix_size(m), 3);
        let mut c = ptr::null_mut();
        assert_eq!(robcert_certify(ptr::null(), &mut c), RobcertStatus::NullPointer);
        assert!(c.is_null());
        robcert_matrix_free(m);

        assert_eq!(robcert_matrix_size(ptr::null()), 0);
        assert!(!robcert_certificate_is_robinsonian(ptr::null()));
        robcert_matrix_free(ptr::null_mut());
        robcert_certificate_free(ptr::null_mut());
        robcert_string_free(ptr::null_mut());
    }
}

#[test]
fn header_is_valid_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/robcert.h");
    let text = std::fs::read_to_string(&header).expect("build script writes the header");
    for name in ["robcert_certify", "robcert_last_error_message", "ROBCERT_STATUS_OK", "RobcertMatrix"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let tmp = tempfile::tempdir().unwrap();
    let probe = tmp.path().join("probe.c");
    std::fs::write(&probe, "#include \"robcert.h\"\nint main(void) { return robcert_matrix_size(0) != 0; }\n").unwrap();
    let status = Command::new("cc")
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&probe)
        .status();
    match status {
        Ok(s) => assert!(s.success(), "header does not compile"),
        Err(e) => eprintln!("no C compiler available ({e}); only the header text was checked"),
    }
}
