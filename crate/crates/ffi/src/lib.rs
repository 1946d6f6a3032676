//! C ABI for `dirac_wp`.
//!
//! Packets live behind an opaque `DwpPacket` handle. Every fallible call
//! returns a `DwpStatus`; on failure a description is kept per thread and
//! can be read with `dwp_last_error_message`. All times are in natural units
//! (`ħ/mc²`).

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use dirac_wp::density::{density_grid, PlaneGridSpec};
use dirac_wp::dirac_coulomb::fine_splitting;
use dirac_wp::packet::{build_tables, timescales, PacketSpec, PacketTables};
use dirac_wp::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DwpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Supercritical = 3,
    NoSuchState = 4,
    Accuracy = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Opaque packet handle.
pub struct DwpPacket {
    tables: PacketTables,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> DwpStatus {
    match err {
        Error::Supercritical { .. } => DwpStatus::Supercritical,
        Error::NoSuchState(_) | Error::UnsupportedOrder(_) => DwpStatus::NoSuchState,
        Error::Accuracy { .. } => DwpStatus::Accuracy,
        _ => DwpStatus::InvalidArgument,
    }
}

/// Runs `f`, mapping errors and panics to status codes.
fn guard<F: FnOnce() -> Result<(), DwpStatus>>(f: F) -> DwpStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DwpStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            DwpStatus::Panic
        }
    }
}

fn fail(err: Error) -> DwpStatus {
    let s = status_of(&err);
    set_error(err.to_string());
    s
}

fn null(what: &str) -> DwpStatus {
    set_error(format!("null pointer: {what}"));
    DwpStatus::NullPointer
}

unsafe fn packet_ref<'a>(p: *const DwpPacket) -> Result<&'a DwpPacket, DwpStatus> {
    p.as_ref().ok_or_else(|| null("packet"))
}

/// Builds a packet and stores the new handle in `*out`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn dwp_packet_new(
    z: u32,
    n_mean: u32,
    sigma: f64,
    a: f64,
    b: f64,
    out: *mut *mut DwpPacket,
) -> DwpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let spec = PacketSpec::new(z, n_mean, sigma, a, b).map_err(fail)?;
        let tables = build_tables(&spec).map_err(fail)?;
        *out = Box::into_raw(Box::new(DwpPacket { tables }));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `packet` must come from `dwp_packet_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dwp_packet_free(packet: *mut DwpPacket) {
    if !packet.is_null() {
        drop(Box::from_raw(packet));
    }
}

/// Window bounds and orbit radius `N²/(Zα)` of a packet.
///
/// # Safety
/// Pointers must be valid; output pointers may be null to skip a value.
#[no_mangle]
pub unsafe extern "C" fn dwp_packet_info(
    packet: *const DwpPacket,
    n_min: *mut u32,
    n_max: *mut u32,
    orbit_radius: *mut f64,
) -> DwpStatus {
    guard(|| {
        let p = packet_ref(packet)?;
        let s = &p.tables.spec;
        if !n_min.is_null() {
            *n_min = s.n_min;
        }
        if !n_max.is_null() {
            *n_max = s.n_max;
        }
        if !orbit_radius.is_null() {
            *orbit_radius = s.orbit_radius();
        }
        Ok(())
    })
}

/// `A(t)` for `len` times; real and imaginary parts go to `re` and `im`.
///
/// # Safety
/// `times`, `re` and `im` must each point to `len` elements.
#[no_mangle]
pub unsafe extern "C" fn dwp_autocorrelation(
    packet: *const DwpPacket,
    times: *const f64,
    len: usize,
    re: *mut f64,
    im: *mut f64,
) -> DwpStatus {
    guard(|| {
        let p = packet_ref(packet)?;
        if len == 0 {
            return Ok(());
        }
        if times.is_null() || re.is_null() || im.is_null() {
            return Err(null("times/re/im"));
        }
        let times = slice::from_raw_parts(times, len);
        let re = slice::from_raw_parts_mut(re, len);
        let im = slice::from_raw_parts_mut(im, len);
        for (i, &t) in times.iter().enumerate() {
            let a = p.tables.autocorrelation(t);
            re[i] = a.re;
            im[i] = a.im;
        }
        Ok(())
    })
}

/// Mean spin `(<σx>, <σy>, <σz>)` at time `t`.
///
/// # Safety
/// `out` must point to three writable doubles.
#[no_mangle]
pub unsafe extern "C" fn dwp_spin(packet: *const DwpPacket, t: f64, include_delta: bool, out: *mut f64) -> DwpStatus {
    guard(|| {
        let p = packet_ref(packet)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let s = p.tables.spin_expect(t, include_delta);
        slice::from_raw_parts_mut(out, 3).copy_from_slice(&s);
        Ok(())
    })
}

/// Small-component weights `(<c3|c3>, <c4|c4>, total)`.
///
/// # Safety
/// `out` must point to three writable doubles.
#[no_mangle]
pub unsafe extern "C" fn dwp_small_norm(packet: *const DwpPacket, out: *mut f64) -> DwpStatus {
    guard(|| {
        let p = packet_ref(packet)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let (c3, c4, total) = p.tables.small_norm();
        slice::from_raw_parts_mut(out, 3).copy_from_slice(&[c3, c4, total]);
        Ok(())
    })
}

/// `T(1..=k_max)` into `t_k`, plus `T_ls` and the non-relativistic Kepler
/// period `T_cl`. `k_max` must be in `1..=6`.
///
/// # Safety
/// `t_k` must point to `k_max` doubles; `t_ls` and `t_cl` may be null.
#[no_mangle]
pub unsafe extern "C" fn dwp_timescales(
    z: u32,
    n: u32,
    k_max: usize,
    t_k: *mut f64,
    t_ls: *mut f64,
    t_cl: *mut f64,
) -> DwpStatus {
    guard(|| {
        if t_k.is_null() {
            return Err(null("t_k"));
        }
        let ts = timescales(z, n, k_max).map_err(fail)?;
        slice::from_raw_parts_mut(t_k, k_max).copy_from_slice(&ts.t);
        if !t_ls.is_null() {
            *t_ls = ts.t_ls;
        }
        if !t_cl.is_null() {
            *t_cl = ts.t_cl;
        }
        Ok(())
    })
}

/// `E(j = l+1/2) - E(j = l-1/2)` of the circular level `n`.
///
/// # Safety
/// `out` must point to one writable double.
#[no_mangle]
pub unsafe extern "C" fn dwp_fine_splitting(z: u32, n: u32, out: *mut f64) -> DwpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = fine_splitting(z, n).map_err(fail)?;
        Ok(())
    })
}

/// Spin-resolved density on the orbit plane. Both buffers hold
/// `resolution²` values in row-major order (`y` outer, `x` inner), with
/// nodes spanning `[-extent, extent]·r_N` on each axis.
///
/// # Safety
/// `spin_up` and `spin_down` must each point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn dwp_density_grid(
    packet: *const DwpPacket,
    extent: f64,
    resolution: usize,
    t: f64,
    spin_up: *mut f64,
    spin_down: *mut f64,
    len: usize,
) -> DwpStatus {
    guard(|| {
        let p = packet_ref(packet)?;
        if spin_up.is_null() || spin_down.is_null() {
            return Err(null("spin_up/spin_down"));
        }
        let grid = PlaneGridSpec::new(extent, resolution).map_err(fail)?;
        let need = resolution * resolution;
        if len < need {
            set_error(format!("buffers hold {len} values, grid needs {need}"));
            return Err(DwpStatus::BufferTooSmall);
        }
        let d = density_grid(&p.tables, grid, t).map_err(fail)?;
        slice::from_raw_parts_mut(spin_up, need).copy_from_slice(&d.spin_up);
        slice::from_raw_parts_mut(spin_down, need).copy_from_slice(&d.spin_down);
        Ok(())
    })
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn dwp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dwp_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}
