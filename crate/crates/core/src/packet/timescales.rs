//! Characteristic times of the circular packet.
//!
//! `T(k) = 2π k! / |dᵏE/dnᵏ|` at `n = N`, where `E(n)` is continued smoothly
//! in `n` along a circular branch, and `T_ls = 2π / (E₊ - E₋)`.
//!
//! The derivatives come from exact truncated Taylor arithmetic on the binding
//! energy `1 - E = ξ² / (N(N + D))`, `N = sqrt(D² + ξ²)`, which avoids both
//! finite differences and the cancellation in `1 - ξ²/2n² - ...`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::dirac_coulomb::{Level, PhysicalConstants};
use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 6;
const LEN: usize = MAX_ORDER + 1;

/// Truncated power series in `h` around the expansion point.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Series([f64; LEN]);

impl Series {
    fn linear(c0: f64, c1: f64) -> Self {
        let mut s = [0.0; LEN];
        s[0] = c0;
        s[1] = c1;
        Series(s)
    }

    fn add(&self, o: &Series) -> Series {
        let mut s = self.0;
        for (x, y) in s.iter_mut().zip(o.0) {
            *x += y;
        }
        Series(s)
    }

    fn mul(&self, o: &Series) -> Series {
        let mut s = [0.0; LEN];
        for (i, x) in self.0.iter().enumerate() {
            for (j, y) in o.0.iter().enumerate().take(LEN - i) {
                s[i + j] += x * y;
            }
        }
        Series(s)
    }

    fn recip(&self) -> Series {
        let a = &self.0;
        let mut r = [0.0; LEN];
        r[0] = 1.0 / a[0];
        for k in 1..LEN {
            let acc: f64 = (1..=k).map(|j| a[j] * r[k - j]).sum();
            r[k] = -acc / a[0];
        }
        Series(r)
    }

    fn sqrt(&self) -> Series {
        let a = &self.0;
        let mut r = [0.0; LEN];
        r[0] = a[0].sqrt();
        for k in 1..LEN {
            let acc: f64 = (1..k).map(|j| r[j] * r[k - j]).sum();
            r[k] = (a[k] - acc) / (2.0 * r[0]);
        }
        Series(r)
    }

    fn scale(&self, c: f64) -> Series {
        Series(self.0.map(|x| x * c))
    }
}

/// Continuation of `E(n)` used for the derivative hierarchy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyBranch {
    /// `E(n) = sqrt(1 - ξ²/n²)`: the `n' = 0`, `κ = -n` states that carry the
    /// `a` amplitude.
    #[default]
    JPlus,
    /// Mean of the `j₊` branch and the `n' = 1`, `κ = n-1` branch.
    Averaged,
}

/// Taylor coefficients of the binding energy `1 - E` in `(n - N)`.
fn binding_series(xi: f64, n: f64, radial_excited: bool) -> Series {
    let xi2 = xi * xi;
    // D = γ (+1 for the radially excited branch), γ = sqrt(κ² - ξ²)
    let kappa = if radial_excited { Series::linear(n - 1.0, 1.0) } else { Series::linear(n, 1.0) };
    let gamma = kappa.mul(&kappa).add(&Series::linear(-xi2, 0.0)).sqrt();
    let d = if radial_excited { gamma.add(&Series::linear(1.0, 0.0)) } else { gamma };
    let apparent = d.mul(&d).add(&Series::linear(xi2, 0.0)).sqrt();
    apparent.mul(&apparent.add(&d)).recip().scale(xi2)
}

/// `(1/k!) dᵏE/dnᵏ` at `n`, for `k = 0..=6` (entry 0 is `E` itself).
pub fn energy_taylor(consts: &PhysicalConstants, z: u32, n: f64, branch: EnergyBranch) -> Result<[f64; LEN]> {
    let xi = consts.xi(z);
    let smallest_kappa = match branch {
        EnergyBranch::JPlus => n,
        EnergyBranch::Averaged => n - 1.0,
    };
    if !(xi < smallest_kappa) {
        return Err(Error::Supercritical { z, kappa: smallest_kappa as i64, xi, kappa_abs: smallest_kappa });
    }
    let b = match branch {
        EnergyBranch::JPlus => binding_series(xi, n, false),
        EnergyBranch::Averaged => binding_series(xi, n, false).add(&binding_series(xi, n, true)).scale(0.5),
    };
    let mut e = b.scale(-1.0).0;
    e[0] += 1.0;
    Ok(e)
}

/// `dᵏE/dnᵏ` at `n`, for `k = 1..=k_max`.
pub fn energy_derivatives(consts: &PhysicalConstants, z: u32, n: f64, k_max: usize, branch: EnergyBranch) -> Result<Vec<f64>> {
    if k_max == 0 || k_max > MAX_ORDER {
        return Err(Error::Domain(format!("derivative order must be in 1..={MAX_ORDER}, got {k_max}")));
    }
    let c = energy_taylor(consts, z, n, branch)?;
    let mut fact = 1.0;
    Ok((1..=k_max)
        .map(|k| {
            fact *= k as f64;
            c[k] * fact
        })
        .collect())
}

/// Time units offered on output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum TimeUnit {
    /// `ħ / m_e c²`.
    Natural,
    /// `T(1)`, the relativistic Kepler period.
    Kepler,
    /// Spin-orbit period `T_ls`.
    #[default]
    Tls,
    Seconds,
}

impl TimeUnit {
    pub fn as_str(&self) -> &'static str {
        match self {
            TimeUnit::Natural => "natural",
            TimeUnit::Kepler => "kepler",
            TimeUnit::Tls => "tls",
            TimeUnit::Seconds => "seconds",
        }
    }
}

/// The hierarchy `T(1..=k_max)` and `T_ls` for one `(Z, N)`, in natural units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeScales {
    pub z: u32,
    pub n: u32,
    pub t: Vec<f64>,
    pub t_ls: f64,
    /// Non-relativistic Kepler period `2πN³/(Zα)²`.
    pub t_cl: f64,
    pub compton_time_seconds: f64,
}

pub fn timescales(z: u32, n: u32, k_max: usize) -> Result<TimeScales> {
    TimeScales::new(&PhysicalConstants::default(), z, n, k_max, EnergyBranch::JPlus)
}

impl TimeScales {
    pub fn new(consts: &PhysicalConstants, z: u32, n: u32, k_max: usize, branch: EnergyBranch) -> Result<Self> {
        if n < 2 {
            return Err(Error::NoSuchState(format!("time scales need N >= 2, got {n}")));
        }
        // supercriticality check on the j- partner first, for a clear message
        Level::new(consts, z, 1, n as i64 - 1)?;
        let derivs = energy_derivatives(consts, z, n as f64, k_max, branch)?;
        let mut fact = 1.0;
        let t = derivs
            .iter()
            .enumerate()
            .map(|(i, d)| {
                fact *= (i + 1) as f64;
                2.0 * PI * fact / d.abs()
            })
            .collect();
        let t_ls = 2.0 * PI / consts.fine_splitting(z, n)?;
        let xi = consts.xi(z);
        let t_cl = 2.0 * PI * (n as f64).powi(3) / (xi * xi);
        Ok(Self { z, n, t, t_ls, t_cl, compton_time_seconds: consts.compton_time_seconds })
    }

    /// `T(k)`, 1-based.
    pub fn t_k(&self, k: usize) -> f64 {
        self.t[k - 1]
    }

    pub fn kepler(&self) -> f64 {
        self.t[0]
    }

    pub fn to_kepler(&self, t: f64) -> f64 {
        t / self.t[0]
    }

    pub fn to_tls(&self, t: f64) -> f64 {
        t / self.t_ls
    }

    pub fn to_seconds(&self, t: f64) -> f64 {
        t * self.compton_time_seconds
    }

    /// Natural-unit time `t` expressed in `unit`.
    pub fn to_unit(&self, t: f64, unit: TimeUnit) -> f64 {
        match unit {
            TimeUnit::Natural => t,
            TimeUnit::Kepler => self.to_kepler(t),
            TimeUnit::Tls => self.to_tls(t),
            TimeUnit::Seconds => self.to_seconds(t),
        }
    }

    /// A time given in `unit`, converted to natural units.
    pub fn from_unit(&self, value: f64, unit: TimeUnit) -> f64 {
        match unit {
            TimeUnit::Natural => value,
            TimeUnit::Kepler => value * self.t[0],
            TimeUnit::Tls => value * self.t_ls,
            TimeUnit::Seconds => value / self.compton_time_seconds,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_sqrt_and_recip_invert() {
        let s = Series::linear(4.0, 3.0).mul(&Series::linear(2.0, -1.0));
        let r = s.sqrt().mul(&s.sqrt());
        for (x, y) in r.0.iter().zip(s.0) {
            assert!((x - y).abs() < 1e-14);
        }
        let one = s.mul(&s.recip());
        assert!((one.0[0] - 1.0).abs() < 1e-15);
        assert!(one.0[1..].iter().all(|c| c.abs() < 1e-14));
    }

    #[test]
    fn taylor_matches_reference_coefficients() {
        // 50-digit reference of (1/k!) dᵏ/dnᵏ sqrt(1 - ξ²/n²) at Z = 92, N = 20
        let want = [5.637_170_105_941_626_1e-5, -4.229_467_359_729_971_4e-6, 2.820_970_620_072_962e-7, -1.764_101_707_972_624_7e-8];
        let c = energy_taylor(&PhysicalConstants::default(), 92, 20.0, EnergyBranch::JPlus).unwrap();
        for (k, w) in want.iter().enumerate() {
            assert!(((c[k + 1] - w) / w).abs() < 1e-12, "k={}: {} vs {w}", k + 1, c[k + 1]);
        }
        assert!((c[0] - 0.999_436_441_877_827_2).abs() < 1e-15);
    }

    #[test]
    fn hierarchy_ratios() {
        let ts = timescales(92, 20, 4).unwrap();
        let r: Vec<f64> = ts.t.iter().map(|t| t / ts.t[0]).collect();
        assert!((r[1] / 13.33 - 1.0).abs() < 0.03);
        assert!((r[2] / 200.0 - 1.0).abs() < 0.03);
        assert!((r[3] / 3200.0 - 1.0).abs() < 0.03);
        assert!((ts.t_ls / ts.t[0] / 1685.0 - 1.0).abs() < 0.005);
        let ts3 = timescales(92, 3, 4).unwrap();
        assert!(ts3.t.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn unit_round_trip() {
        let ts = timescales(92, 20, 2).unwrap();
        for unit in [TimeUnit::Natural, TimeUnit::Kepler, TimeUnit::Tls, TimeUnit::Seconds] {
            let t = 3.7e8;
            let back = ts.from_unit(ts.to_unit(t, unit), unit);
            assert!((back - t).abs() < 1e-6);
        }
        // sub-picosecond spin-orbit period
        let s = ts.to_seconds(ts.t_ls);
        assert!((s - 2.42e-13).abs() < 0.01e-13, "{s}");
    }

    #[test]
    fn averaged_branch_and_errors() {
        let c = PhysicalConstants::default();
        let a = TimeScales::new(&c, 92, 20, 3, EnergyBranch::Averaged).unwrap();
        let p = TimeScales::new(&c, 92, 20, 3, EnergyBranch::JPlus).unwrap();
        assert!((a.t[0] / p.t[0] - 1.0).abs() < 0.01);
        assert!(timescales(92, 1, 3).is_err());
        assert!(timescales(92, 20, 7).is_err());
        assert!(timescales(92, 20, 0).is_err());
        assert!(timescales(138, 2, 3).is_err());
    }
}
