use serde::{Deserialize, Serialize};

use crate::dirac_coulomb::{Level, PhysicalConstants};
use crate::error::{Error, Result};

/// Default Gaussian width in `n`.
pub const DEFAULT_SIGMA: f64 = 2.0;
/// Window half-width in units of `σ_G`.
pub const WINDOW_SIGMAS: f64 = 5.0;

/// Physical definition of a circular packet.
///
/// `a` and `b` set the initial spin direction: `a = b = 1/√2` points it
/// along +x, in the orbital plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PacketSpec {
    pub z: u32,
    pub n_mean: u32,
    pub sigma: f64,
    pub a: f64,
    pub b: f64,
    pub n_min: u32,
    pub n_max: u32,
    pub constants: PhysicalConstants,
}

impl PacketSpec {
    /// Packet with the default window `[max(2, N-⌈5σ⌉), N+⌈5σ⌉]`.
    pub fn new(z: u32, n_mean: u32, sigma: f64, a: f64, b: f64) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::InvalidPacket(format!("sigma must be finite and > 0, got {sigma}")));
        }
        let half = (WINDOW_SIGMAS * sigma).ceil() as u32;
        let n_min = n_mean.saturating_sub(half).max(2);
        let n_max = n_mean.saturating_add(half);
        Self::with_window(z, n_mean, sigma, a, b, n_min, n_max)
    }

    /// Spin along +x.
    pub fn along_x(z: u32, n_mean: u32, sigma: f64) -> Result<Self> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(z, n_mean, sigma, h, h)
    }

    pub fn with_window(z: u32, n_mean: u32, sigma: f64, a: f64, b: f64, n_min: u32, n_max: u32) -> Result<Self> {
        let spec = Self { z, n_mean, sigma, a, b, n_min, n_max, constants: PhysicalConstants::default() };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_constants(mut self, constants: PhysicalConstants) -> Result<Self> {
        self.constants = constants;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.z == 0 {
            return Err(Error::InvalidPacket("Z must be >= 1".into()));
        }
        if !(self.sigma > 0.0) || !self.sigma.is_finite() {
            return Err(Error::InvalidPacket(format!("sigma must be finite and > 0, got {}", self.sigma)));
        }
        if !self.a.is_finite() || !self.b.is_finite() || (self.a * self.a + self.b * self.b - 1.0).abs() > 1e-14 {
            return Err(Error::InvalidPacket(format!(
                "spin amplitudes must satisfy a² + b² = 1, got a = {}, b = {}",
                self.a, self.b
            )));
        }
        if self.n_min < 2 {
            return Err(Error::InvalidPacket(format!("window must start at n >= 2, got {}", self.n_min)));
        }
        if self.n_min > self.n_max {
            return Err(Error::InvalidPacket(format!("empty window [{}, {}]", self.n_min, self.n_max)));
        }
        if !(self.n_min..=self.n_max).contains(&self.n_mean) {
            return Err(Error::InvalidPacket(format!(
                "mean N = {} outside window [{}, {}]",
                self.n_mean, self.n_min, self.n_max
            )));
        }
        // The j- state at the bottom of the window has the smallest |κ|.
        Level::new(&self.constants, self.z, 1, self.n_min as i64 - 1)?;
        Ok(())
    }

    pub fn xi(&self) -> f64 {
        self.constants.xi(self.z)
    }

    /// Radius of the classical circular orbit `N²/(Zα)` in Compton lengths.
    pub fn orbit_radius(&self) -> f64 {
        (self.n_mean as f64).powi(2) / self.xi()
    }

    pub fn window(&self) -> std::ops::RangeInclusive<u32> {
        self.n_min..=self.n_max
    }
}

/// Real amplitudes `w_n` over the window, with `Σ w_n² = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Weights {
    pub n_min: u32,
    pub values: Vec<f64>,
}

impl Weights {
    pub fn get(&self, n: u32) -> f64 {
        if n < self.n_min {
            return 0.0;
        }
        self.values.get((n - self.n_min) as usize).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.values.iter().enumerate().map(move |(i, &w)| (self.n_min + i as u32, w))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Gaussian weights `w_n² ∝ exp(-(n-N)²/2σ²)`, renormalized on the window.
pub fn build_weights(spec: &PacketSpec) -> Result<Weights> {
    spec.validate()?;
    let n_mean = spec.n_mean as f64;
    let two_s2 = 2.0 * spec.sigma * spec.sigma;
    let sq: Vec<f64> = spec.window().map(|n| (-(n as f64 - n_mean).powi(2) / two_s2).exp()).collect();
    let total: f64 = sq.iter().sum();
    if !(total > 0.0) {
        return Err(Error::InvalidPacket("window carries no Gaussian weight".into()));
    }
    Ok(Weights { n_min: spec.n_min, values: sq.iter().map(|s| (s / total).sqrt()).collect() })
}
