//! Special functions used by the Dirac-Coulomb radial and angular factors.
//!
//! Only what the circular packet needs: `ln Γ` for positive arguments, the
//! two terminating orders of the confluent hypergeometric series, and
//! orthonormal spherical harmonics that stay finite for `l` in the hundreds.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A dimensionless complex probability amplitude.
pub type ComplexAmplitude = Complex64;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Shift target for the asymptotic series.
const STIRLING_MIN: f64 = 15.0;
/// Half-width of the Taylor windows around the zeros of `ln Γ` at 1 and 2.
const TAYLOR_RADIUS: f64 = 0.2;
const TAYLOR_TERMS: usize = 26;

/// `B_2k / (2k (2k-1))` for k = 1..8.
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Riemann zeta at integer `k >= 2` by Euler-Maclaurin with a cut at 20.
fn zeta_int(k: u32) -> f64 {
    const CUT: f64 = 20.0;
    // B_2, B_4, ..., B_10
    const BERNOULLI: [f64; 5] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0];
    let s = k as f64;
    let head: f64 = (1..20).map(|n| (n as f64).powf(-s)).sum();
    let mut tail = CUT.powf(1.0 - s) / (s - 1.0) + 0.5 * CUT.powf(-s);
    let mut rising = s; // s (s+1) ... (s+2j-2)
    let mut fact = 2.0; // (2j)!
    for (j, b) in BERNOULLI.iter().enumerate() {
        let j = j as f64 + 1.0;
        tail += b / fact * rising * CUT.powf(-s - 2.0 * j + 1.0);
        rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    }
    head + tail
}

/// Taylor coefficients of `ln Γ(1 + z)`.
fn lgamma_taylor() -> &'static [f64; TAYLOR_TERMS] {
    static TABLE: OnceLock<[f64; TAYLOR_TERMS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut c = [0.0; TAYLOR_TERMS];
        c[1] = -EULER_GAMMA;
        for (k, ck) in c.iter_mut().enumerate().skip(2) {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            *ck = sign * zeta_int(k as u32) / k as f64;
        }
        c
    })
}

fn lgamma_1p(z: f64) -> f64 {
    let c = lgamma_taylor();
    c.iter().rev().fold(0.0, |acc, &ck| acc * z + ck)
}

fn lgamma_stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = STIRLING_COEFFS.iter().rev().fold(0.0, |acc, &c| acc * inv2 + c) * inv;
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + series
}

/// `ln Γ(x)` for `x > 0`.
///
/// Relative accuracy is kept near the zeros at 1 and 2 by switching to the
/// Taylor expansion of `ln Γ(1 + z)` there.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("log_gamma requires finite x > 0, got {x}")));
    }
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    if (x - 1.0).abs() < TAYLOR_RADIUS {
        return Ok(lgamma_1p(x - 1.0));
    }
    if (x - 2.0).abs() < TAYLOR_RADIUS {
        let z = x - 2.0;
        return Ok(lgamma_1p(z) + z.ln_1p());
    }
    if x >= STIRLING_MIN {
        return Ok(lgamma_stirling(x));
    }
    let shift = (STIRLING_MIN - x).ceil() as usize;
    let mut prod = 1.0;
    for k in 0..shift {
        prod *= x + k as f64;
    }
    Ok(lgamma_stirling(x + shift as f64) - prod.ln())
}

/// Terminating Kummer series `F(-n', c, x)` for `n'` in {0, 1}.
pub fn kummer_truncated(n_prime: i64, c: f64, x: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::Domain(format!("kummer_truncated requires c > 0, got {c}")));
    }
    match n_prime {
        0 => Ok(1.0),
        1 => Ok(1.0 - x / c),
        other => Err(Error::UnsupportedOrder(other)),
    }
}

/// Rescale threshold for the upward Legendre recurrence.
const RESCALE: f64 = 1e150;

/// Orthonormal associated Legendre function `P̄_l^m(x)` including the
/// Condon-Shortley phase and the `1/sqrt(4π)` sphere normalization, so that
/// `Y_lm(θ, φ) = P̄_l^m(cos θ) e^{imφ}` for `m >= 0`.
///
/// The sectoral seed is formed in log space and the recurrence carries a
/// running log-scale so high orders near the poles neither overflow nor
/// underflow prematurely.
pub fn normalized_legendre(l: u32, m: u32, x: f64) -> Result<f64> {
    if m > l {
        return Err(Error::Domain(format!("associated Legendre needs m <= l, got l={l}, m={m}")));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("associated Legendre needs |x| <= 1, got {x}")));
    }
    let sin2 = (1.0 - x) * (1.0 + x);
    if m > 0 && sin2 == 0.0 {
        return Ok(0.0);
    }
    let mf = m as f64;
    let mut log_scale = 0.5 * ((2.0 * mf + 1.0) / (4.0 * PI)).ln();
    for k in 1..=m {
        let k = k as f64;
        log_scale += 0.5 * ((2.0 * k - 1.0) / (2.0 * k)).ln();
    }
    if m > 0 {
        log_scale += 0.5 * mf * sin2.ln();
    }
    let cs_sign = if m % 2 == 0 { 1.0 } else { -1.0 };

    // Values relative to exp(log_scale).
    let mut p_prev = 1.0;
    if l == m {
        return Ok(cs_sign * log_scale.exp());
    }
    let mut p_cur = x * (2.0 * mf + 3.0).sqrt();
    let mut a_prev = (2.0 * mf + 3.0).sqrt();
    for ll in (m + 2)..=l {
        let lf = ll as f64;
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let next = a * (x * p_cur - p_prev / a_prev);
        p_prev = p_cur;
        p_cur = next;
        a_prev = a;
        if p_cur.abs() > RESCALE {
            p_cur /= RESCALE;
            p_prev /= RESCALE;
            log_scale += RESCALE.ln();
        }
    }
    if p_cur == 0.0 {
        return Ok(0.0);
    }
    Ok(cs_sign * p_cur.signum() * (log_scale + p_cur.abs().ln()).exp())
}

/// Spherical harmonic `Y_{l,m}(θ, φ)` with the Condon-Shortley phase.
///
/// Negative orders follow `Y_{l,-m} = (-1)^m conj(Y_{l,m})`.
pub fn sph_harm(l: u32, m: i32, theta: f64, phi: f64) -> Result<ComplexAmplitude> {
    let am = m.unsigned_abs();
    if am > l {
        return Err(Error::Domain(format!("sph_harm needs |m| <= l, got l={l}, m={m}")));
    }
    let p = normalized_legendre(l, am, theta.cos())?;
    let y = Complex64::from_polar(p, am as f64 * phi);
    if m >= 0 {
        Ok(y)
    } else if am % 2 == 0 {
        Ok(y.conj())
    } else {
        Ok(-y.conj())
    }
}
