//! Extended-precision reference values shared by the integration tests.
#![allow(dead_code)]

use dirac_wp::dirac_coulomb::ALPHA_DEFAULT;
use twofloat::TwoFloat;

pub fn dd(x: f64) -> TwoFloat {
    TwoFloat::from(x)
}

/// `a / b` to full double-double accuracy. twofloat 0.8's `TwoFloat /
/// TwoFloat` drops the low word of the quotient, so divide by the f64 head
/// and apply one Newton correction.
pub fn div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q = a / b.hi();
    q + (a - q * b) / b.hi()
}

/// `Zα` carried in double-double; `α` is the library's f64 value.
pub fn xi(z: u32) -> TwoFloat {
    dd(z as f64) * dd(ALPHA_DEFAULT)
}

/// Dirac energy `(n' + γ)/sqrt((n' + γ)² + ξ²)` in double-double.
pub fn energy(z: u32, n_prime: u32, kappa: i64) -> TwoFloat {
    let x = xi(z);
    let k = dd(kappa as f64);
    let gamma = (k * k - x * x).sqrt();
    let top = dd(n_prime as f64) + gamma;
    div(top, (top * top + x * x).sqrt())
}

/// `E(n') - E(n' = 1, κ = n-1)` for the circular level `n`, by direct
/// subtraction in double-double.
pub fn splitting(z: u32, n: u32) -> TwoFloat {
    energy(z, 0, -(n as i64)) - energy(z, 1, n as i64 - 1)
}

/// The `j₊` circular branch `sqrt(1 - ξ²/n²)` continued to real `n`.
pub fn energy_jplus(z: u32, n: TwoFloat) -> TwoFloat {
    let x = xi(z);
    (dd(1.0) - div(x * x, n * n)).sqrt()
}

fn binomial(k: u32, j: u32) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (k - i) as f64 / (i + 1) as f64)
}

/// Central difference for the `k`-th derivative, `O(h²)` accurate.
fn central<F: Fn(TwoFloat) -> TwoFloat>(f: &F, x: f64, k: u32, h: f64) -> TwoFloat {
    let mut acc = dd(0.0);
    for j in 0..=k {
        let offset = (k as f64 / 2.0 - j as f64) * h;
        let term = f(dd(x) + dd(offset)) * dd(binomial(k, j));
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc / h.powi(k as i32)
}

/// `k`-th derivative at `x` by three levels of Richardson extrapolation of
/// central differences.
pub fn richardson<F: Fn(TwoFloat) -> TwoFloat>(f: F, x: f64, k: u32, h: f64) -> f64 {
    let d: Vec<TwoFloat> = (0..3).map(|i| central(&f, x, k, h / 2f64.powi(i))).collect();
    let r1 = [d[1] + (d[1] - d[0]) / 3.0, d[2] + (d[2] - d[1]) / 3.0];
    let r2 = r1[1] + (r1[1] - r1[0]) / 15.0;
    r2.hi() + r2.lo()
}
