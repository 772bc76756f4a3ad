use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use plectic_ffi::*;

const DOC: &str = "chart R3 (x, y, z)\nform omega = dx^dy^dz\nstructure omega\n\
                   form a = x*dy\nform b = y*dz\nform c = z*dx\njacobiator a b c\nhamiltonian a\n";

unsafe fn take_string(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    pl_string_free(s);
    out
}

fn parse(src: &str) -> (PlStatus, *mut PlDocument) {
    let src = CString::new(src).unwrap();
    let mut doc = ptr::null_mut();
    let status = unsafe { pl_document_parse(src.as_ptr(), &mut doc) };
    (status, doc)
}

#[test]
fn parse_run_and_report() {
    let (status, doc) = parse(DOC);
    assert_eq!(status, PlStatus::Ok);
    unsafe {
        let mut report = ptr::null_mut();
        assert_eq!(pl_document_run(doc, 2, &mut report), PlStatus::Ok);
        assert_eq!(pl_report_passed(report), 1);
        assert_eq!(pl_report_len(report), 2);
        assert_eq!(pl_report_failures(report), 0);
        let mut text = ptr::null_mut();
        assert_eq!(pl_report_machine_text(report, &mut text), PlStatus::Ok);
        let text = take_string(text);
        assert!(text.starts_with("PASS\tjacobiator(a,b,c).jacobi\t"), "{text}");
        let mut src = ptr::null_mut();
        assert_eq!(pl_document_to_source(doc, &mut src), PlStatus::Ok);
        let (again, doc2) = parse(&take_string(src));
        assert_eq!(again, PlStatus::Ok);
        pl_document_free(doc2);
        pl_report_free(report);
        pl_document_free(doc);
    }
}

#[test]
fn failing_checks_return_fail_with_report() {
    let src = "chart R5 (x1, x2, x3, x4, x5)\nform omega = dx1^dx2^dx3 + dx1^dx4^dx5\nstructure omega\n\
               form a = x2*dx3\nhamiltonian a\n";
    let (status, doc) = parse(src);
    assert_eq!(status, PlStatus::Ok);
    unsafe {
        let mut report = ptr::null_mut();
        assert_eq!(pl_document_run(doc, 0, &mut report), PlStatus::Fail);
        assert!(!report.is_null());
        assert_eq!(pl_report_passed(report), 0);
        assert_eq!(pl_report_failures(report), 1);
        pl_report_free(report);
        pl_document_free(doc);
    }
}

#[test]
fn errors_set_status_and_message() {
    let (status, doc) = parse("chart R3 (x, y, z)\nform a = 2x\n");
    assert_eq!(status, PlStatus::ParseError);
    assert!(doc.is_null());
    let msg = unsafe { CStr::from_ptr(pl_last_error_message()) }
        .to_str()
        .unwrap()
        .to_owned();
    assert!(msg.contains("line 2, column 11"), "{msg}");
    unsafe {
        assert_eq!(
            pl_document_parse(ptr::null(), &mut ptr::null_mut()),
            PlStatus::NullArgument
        );
        assert_eq!(
            pl_document_parse(c"x".as_ptr(), ptr::null_mut()),
            PlStatus::NullArgument
        );
        let bad = [0xffu8, 0];
        assert_eq!(
            pl_document_parse(bad.as_ptr().cast(), &mut ptr::null_mut()),
            PlStatus::InvalidUtf8
        );
        assert_eq!(pl_report_len(ptr::null()), 0);
        pl_document_free(ptr::null_mut());
        pl_report_free(ptr::null_mut());
        pl_string_free(ptr::null_mut());
    }
    let (status, doc) = parse(DOC);
    assert_eq!(status, PlStatus::Ok);
    assert!(pl_last_error_message().is_null());
    unsafe { pl_document_free(doc) };
}

#[test]
fn suites_through_the_abi() {
    unsafe {
        let mut report = ptr::null_mut();
        assert_eq!(pl_suite_run(c"cocycle".as_ptr(), 1, 10, 2, &mut report), PlStatus::Ok);
        assert!(pl_report_len(report) > 0);
        pl_report_free(report);
        assert_eq!(
            pl_suite_run(c"nope".as_ptr(), 1, 10, 2, &mut report),
            PlStatus::UnknownSuite
        );
        assert!(report.is_null());
    }
    let v = unsafe { CStr::from_ptr(pl_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/plectic.h")).unwrap();
    for f in [
        "pl_document_parse",
        "pl_document_free",
        "pl_document_to_source",
        "pl_document_run",
        "pl_suite_run",
        "pl_report_passed",
        "pl_report_len",
        "pl_report_failures",
        "pl_report_machine_text",
        "pl_report_human_text",
        "pl_report_free",
        "pl_string_free",
        "pl_last_error_message",
        "pl_version",
        "typedef struct PlDocument PlDocument;",
        "typedef struct PlReport PlReport;",
        "PL_STATUS_PARSE_ERROR = 2",
    ] {
        assert!(header.contains(f), "header lacks {f}");
    }
}

fn lib_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_static_library() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; C smoke test not run");
        return;
    };
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = lib_dir().join("libplectic_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("plectic_smoke");
    let status = Command::new(cc)
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&out).output().unwrap();
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8(run.stdout)
        .unwrap()
        .starts_with("PASS\tjacobiator(a,b,c).jacobi"));
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| {
            Command::new(c)
                .arg("--version")
                .output()
                .is_ok_and(|o| o.status.success())
        })
        .ok_or(())
}
