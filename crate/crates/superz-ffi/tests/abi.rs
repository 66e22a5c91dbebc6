use std::ffi::{CStr, CString};
use std::ptr;

use superz_ffi::*;

fn parse(kind: SuperzKind, text: &str) -> *mut SuperzPartition {
    let c = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    let st = unsafe { superz_partition_parse(kind, c.as_ptr(), &mut p) };
    assert_eq!(st, SuperzStatus::Ok);
    assert!(!p.is_null());
    p
}

#[test]
fn dimensions_of_small_orbits() {
    let p = parse(SuperzKind::Osp, "5,3,1|3,3");
    let (mut c, mut z, mut f) = (0usize, 0usize, 0usize);
    unsafe {
        assert_eq!(superz_centralizer_dim(p, &mut c), SuperzStatus::Ok);
        assert_eq!(superz_centre_dim(p, &mut z), SuperzStatus::Ok);
        assert_eq!(superz_fixed_dim(p, &mut f), SuperzStatus::Ok);
        superz_partition_free(p);
    }
    assert_eq!((c, z, f), (29, 2, 2));

    let p = parse(SuperzKind::Osp, "1|2");
    let (mut m, mut n) = (0, 0);
    unsafe {
        assert_eq!(superz_partition_dims(p, &mut m, &mut n), SuperzStatus::Ok);
        superz_partition_free(p);
    }
    assert_eq!((m, n), (1, 2));
}

#[test]
fn labels_with_length_query() {
    let p = parse(SuperzKind::Sl, "5,1|3");
    let mut len = 0;
    let st = unsafe { superz_diagram_labels(p, ptr::null_mut(), 0, &mut len) };
    assert_eq!(st, SuperzStatus::BufferTooSmall);
    assert_eq!(len, 8);
    let mut buf = vec![0i64; len];
    let st = unsafe { superz_diagram_labels(p, buf.as_mut_ptr(), buf.len(), &mut len) };
    assert_eq!(st, SuperzStatus::Ok);
    assert_eq!(buf, [2, 0, 2, 0, 0, 2, 0, 2]);
    unsafe { superz_partition_free(p) };
}

#[test]
fn errors_carry_messages() {
    let c = CString::new("2|").unwrap();
    let mut p = ptr::null_mut();
    let st = unsafe { superz_partition_parse(SuperzKind::Osp, c.as_ptr(), &mut p) };
    assert_eq!(st, SuperzStatus::InvalidPartition);
    assert!(p.is_null());
    let msg = unsafe { CStr::from_ptr(superz_last_error()) }.to_str().unwrap().to_owned();
    assert!(msg.contains("even part"), "{msg}");

    let mut d = 0;
    assert_eq!(unsafe { superz_centre_dim(ptr::null(), &mut d) }, SuperzStatus::NullPointer);
    let q = parse(SuperzKind::Sl, "2|1");
    assert_eq!(unsafe { superz_centre_dim(q, ptr::null_mut()) }, SuperzStatus::NullPointer);
    // a successful call clears the message
    assert_eq!(unsafe { superz_centre_dim(q, &mut d) }, SuperzStatus::Ok);
    assert!(superz_last_error().is_null());
    unsafe { superz_partition_free(q) };
}

#[test]
fn report_round_trip() {
    let p = parse(SuperzKind::Osp, "3|2");
    let mut r = ptr::null_mut();
    let mut passed = false;
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(superz_verify(p, false, &mut r), SuperzStatus::Ok);
        assert_eq!(superz_report_passed(r, &mut passed), SuperzStatus::Ok);
        assert_eq!(superz_report_json(r, &mut s), SuperzStatus::Ok);
    }
    assert!(passed);
    let json: serde_json::Value = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    assert!(json["checks"].as_array().unwrap().len() > 5);
    unsafe {
        superz_string_free(s);
        superz_report_free(r);
        superz_partition_free(p);
    }
}
