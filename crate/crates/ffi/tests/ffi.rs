use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use dirac_wp_ffi::*;

fn packet(z: u32, n: u32) -> *mut DwpPacket {
    let mut p = ptr::null_mut();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert_eq!(unsafe { dwp_packet_new(z, n, 2.0, h, h, &mut p) }, DwpStatus::Ok);
    assert!(!p.is_null());
    p
}

fn last_error() -> String {
    let p = dwp_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn autocorrelation_through_handle() {
    let p = packet(92, 20);
    let times = [0.0, 1.0e5, 2.0e8];
    let (mut re, mut im) = ([0.0; 3], [0.0; 3]);
    let s = unsafe { dwp_autocorrelation(p, times.as_ptr(), 3, re.as_mut_ptr(), im.as_mut_ptr()) };
    assert_eq!(s, DwpStatus::Ok);
    assert!((re[0] - 1.0).abs() < 1e-12 && im[0].abs() < 1e-12);
    for i in 1..3 {
        assert!(re[i] * re[i] + im[i] * im[i] <= 1.0 + 1e-12);
    }
    unsafe { dwp_packet_free(p) };
}

#[test]
fn spin_small_norm_and_info() {
    let p = packet(92, 20);
    let mut s = [0.0; 3];
    assert_eq!(unsafe { dwp_spin(p, 0.0, true, s.as_mut_ptr()) }, DwpStatus::Ok);
    assert_eq!(s[1], 0.0);
    assert!(s[0] > 0.99);
    let mut n = [0.0; 3];
    assert_eq!(unsafe { dwp_small_norm(p, n.as_mut_ptr()) }, DwpStatus::Ok);
    assert!(n[2] > 0.0 && n[2] < 0.01);
    let (mut lo, mut hi, mut r) = (0u32, 0u32, 0.0);
    assert_eq!(unsafe { dwp_packet_info(p, &mut lo, &mut hi, &mut r) }, DwpStatus::Ok);
    assert_eq!((lo, hi), (10, 30));
    assert!((r - 400.0 / (92.0 / 137.036)).abs() < 1e-9);
    unsafe { dwp_packet_free(p) };
}

#[test]
fn timescales_and_splitting() {
    let mut t = [0.0; 4];
    let (mut tls, mut tcl) = (0.0, 0.0);
    assert_eq!(unsafe { dwp_timescales(92, 20, 4, t.as_mut_ptr(), &mut tls, &mut tcl) }, DwpStatus::Ok);
    assert!((tls / t[0] / 1685.0 - 1.0).abs() < 0.005);
    let mut de = 0.0;
    assert_eq!(unsafe { dwp_fine_splitting(92, 20, &mut de) }, DwpStatus::Ok);
    assert!((2.0 * std::f64::consts::PI / de - tls).abs() < 1e-6 * tls);
    assert_eq!(unsafe { dwp_timescales(92, 20, 9, t.as_mut_ptr(), ptr::null_mut(), ptr::null_mut()) }, DwpStatus::InvalidArgument);
}

#[test]
fn density_grid_checks_buffers() {
    let p = packet(92, 12);
    let mut up = vec![0.0; 16 * 16];
    let mut down = vec![0.0; 16 * 16];
    let s = unsafe { dwp_density_grid(p, 1.6, 16, 0.0, up.as_mut_ptr(), down.as_mut_ptr(), up.len()) };
    assert_eq!(s, DwpStatus::Ok);
    assert!(up.iter().chain(&down).all(|v| v.is_finite() && *v >= 0.0));
    assert!(up.iter().any(|v| *v > 0.0));
    let s = unsafe { dwp_density_grid(p, 1.6, 32, 0.0, up.as_mut_ptr(), down.as_mut_ptr(), up.len()) };
    assert_eq!(s, DwpStatus::BufferTooSmall);
    assert!(last_error().contains("1024"));
    unsafe { dwp_packet_free(p) };
}

#[test]
fn errors_map_to_codes() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { dwp_packet_new(138, 10, 2.0, 1.0, 0.0, &mut p) }, DwpStatus::Supercritical);
    assert!(p.is_null());
    assert!(last_error().contains("supercritical"));
    assert_eq!(unsafe { dwp_packet_new(92, 20, 2.0, 0.9, 0.9, &mut p) }, DwpStatus::InvalidArgument);
    assert_eq!(unsafe { dwp_packet_new(92, 20, 2.0, 1.0, 0.0, ptr::null_mut()) }, DwpStatus::NullPointer);
    let mut s = [0.0; 3];
    assert_eq!(unsafe { dwp_spin(ptr::null(), 0.0, true, s.as_mut_ptr()) }, DwpStatus::NullPointer);
    // a successful call clears the message
    let mut de = 0.0;
    assert_eq!(unsafe { dwp_fine_splitting(1, 2, &mut de) }, DwpStatus::Ok);
    assert!(dwp_last_error_message().is_null());
    assert_eq!(unsafe { dwp_fine_splitting(1, 1, &mut de) }, DwpStatus::NoSuchState);
    unsafe { dwp_packet_free(ptr::null_mut()) };
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(dwp_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/dirac_wp.h")).unwrap();
    for name in [
        "dwp_packet_new",
        "dwp_packet_free",
        "dwp_autocorrelation",
        "dwp_spin",
        "dwp_small_norm",
        "dwp_timescales",
        "dwp_density_grid",
        "dwp_last_error_message",
        "dwp_version",
        "typedef struct DwpPacket DwpPacket",
        "DWP_STATUS_SUPERCRITICAL = 3",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

const C_PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "dirac_wp.h"

int main(void) {
    DwpPacket *p = NULL;
    if (dwp_packet_new(92, 20, 2.0, sqrt(0.5), sqrt(0.5), &p) != DWP_STATUS_OK) return 1;
    double t[2] = {0.0, 1.0e6}, re[2], im[2];
    if (dwp_autocorrelation(p, t, 2, re, im) != DWP_STATUS_OK) return 2;
    dwp_packet_free(p);
    if (dwp_packet_new(138, 10, 2.0, 1.0, 0.0, &p) != DWP_STATUS_SUPERCRITICAL) return 3;
    if (dwp_last_error_message() == NULL) return 4;
    printf("%.12f %s\n", re[0], dwp_version());
    return 0;
}
"#;

#[test]
fn c_program_links_against_static_library() {
    // the test binary lives in target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = lib_dir.join("libdirac_wp_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let dir = tempfile_dir();
    let src = dir.join("smoke.c");
    let bin = dir.join("smoke");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("C compiler");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), format!("1.000000000000 {}", env!("CARGO_PKG_VERSION")));
    let _ = std::fs::remove_dir_all(dir);
}

fn tempfile_dir() -> PathBuf {
    let d = std::env::temp_dir().join(format!("dwp-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
