//! Dirac-Coulomb bound states of a hydrogen-like ion.
//!
//! Natural units throughout: `m_e = ħ = c = 1`, lengths in reduced Compton
//! wavelengths, energies in `m_e c²` (rest mass included).
//!
//! Radial functions are stored in factored form
//!
//! ```text
//! g(r) = sign_g · exp(L_g) · (2λr)^(γ-1) · e^(-λr) · (p0 + p1·2λr)
//! f(r) = sign_f · exp(L_f) · (2λr)^(γ-1) · e^(-λr) · (q0 + q1·2λr)
//! ```
//!
//! so that `Γ(2γ+n'+1)` never has to be formed directly and every radial
//! overlap reduces to a short sum of Gamma moments.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_adaptive, AdaptiveOptions};
use crate::specfun::{kummer_truncated, log_gamma};

/// Fine-structure constant used unless overridden.
pub const ALPHA_DEFAULT: f64 = 1.0 / 137.036;
/// `ħ / (m_e c²)` in seconds.
pub const COMPTON_TIME_SECONDS: f64 = 1.288_088_7e-21;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub alpha: f64,
    pub compton_time_seconds: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self { alpha: ALPHA_DEFAULT, compton_time_seconds: COMPTON_TIME_SECONDS }
    }
}

impl PhysicalConstants {
    pub fn new(alpha: f64, compton_time_seconds: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 0.01) {
            return Err(Error::Domain(format!("alpha must lie in (0, 0.01), got {alpha}")));
        }
        if !(compton_time_seconds > 0.0) || !compton_time_seconds.is_finite() {
            return Err(Error::Domain(format!("compton time must be positive, got {compton_time_seconds}")));
        }
        Ok(Self { alpha, compton_time_seconds })
    }

    /// `ξ = Zα`.
    pub fn xi(&self, z: u32) -> f64 {
        z as f64 * self.alpha
    }

    /// Bound-state energy `E = [1 + (ξ/(n'+γ))²]^(-1/2)`.
    pub fn bound_energy(&self, z: u32, n_prime: u32, kappa: i64) -> Result<f64> {
        Ok(Level::new(self, z, n_prime, kappa)?.energy)
    }

    /// `E(j₊) - E(j₋)` for the circular pair with principal number `n`.
    ///
    /// Uses `E² = D²/(D²+ξ²)` with `D₊ = γ₊`, `D₋ = 1+γ₋` to rewrite the
    /// difference as
    /// `2ξ⁴ / [(n-1+γ₋)(D₊²+ξ²)(D₋²+ξ²)(E₊+E₋)]`, which has no subtraction of
    /// nearly equal quantities.
    pub fn fine_splitting(&self, z: u32, n: u32) -> Result<f64> {
        if n < 2 {
            return Err(Error::NoSuchState(format!("fine splitting needs n >= 2 (no j- state at n = {n})")));
        }
        let plus = Level::new(self, z, 0, -(n as i64))?;
        let minus = Level::new(self, z, 1, n as i64 - 1)?;
        let xi = plus.xi;
        let xi2 = xi * xi;
        let d_plus = plus.gamma;
        let d_minus = 1.0 + minus.gamma;
        let denom = ((n - 1) as f64 + minus.gamma)
            * (d_plus * d_plus + xi2)
            * (d_minus * d_minus + xi2)
            * (plus.energy + minus.energy);
        Ok(2.0 * xi2 * xi2 / denom)
    }

    /// Leading-order splitting `ξ⁴ / (2n⁵)`.
    ///
    /// The first-order estimate `(Zα)²/n⁵` sometimes quoted for this
    /// quantity lacks two powers of `Zα`; this accessor carries the correct
    /// scaling and is exposed only for asymptotic comparisons.
    pub fn leading_order_splitting(&self, z: u32, n: u32) -> f64 {
        let xi = self.xi(z);
        xi.powi(4) / (2.0 * (n as f64).powi(5))
    }
}

/// Total angular momentum branch `j = l ± 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    JPlus,
    JMinus,
}

/// Dirac quantum number `κ` for orbital `l` on the given branch.
pub fn kappa_of(l: u32, branch: Branch) -> Result<i64> {
    match branch {
        Branch::JPlus => Ok(-(l as i64 + 1)),
        Branch::JMinus if l == 0 => Err(Error::NoSuchState("j = l - 1/2 does not exist for l = 0".into())),
        Branch::JMinus => Ok(l as i64),
    }
}

pub fn bound_energy(z: u32, n_prime: u32, kappa: i64) -> Result<f64> {
    PhysicalConstants::default().bound_energy(z, n_prime, kappa)
}

pub fn fine_splitting(z: u32, n: u32) -> Result<f64> {
    PhysicalConstants::default().fine_splitting(z, n)
}

/// Energy-level data shared by every state with the same `(Z, n', κ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub xi: f64,
    pub gamma: f64,
    pub energy: f64,
    /// `1 - E`, formed without cancellation.
    pub binding: f64,
    pub lambda: f64,
    /// Apparent principal number `ξ/λ = sqrt((n'+γ)² + ξ²)`.
    pub apparent_n: f64,
}

impl Level {
    pub fn new(consts: &PhysicalConstants, z: u32, n_prime: u32, kappa: i64) -> Result<Self> {
        if z == 0 {
            return Err(Error::Domain("nuclear charge must be >= 1".into()));
        }
        if kappa == 0 {
            return Err(Error::Domain("kappa must be nonzero".into()));
        }
        let xi = consts.xi(z);
        let kappa_abs = kappa.unsigned_abs() as f64;
        if xi >= kappa_abs {
            return Err(Error::Supercritical { z, kappa, xi, kappa_abs });
        }
        let gamma = ((kappa_abs - xi) * (kappa_abs + xi)).sqrt();
        let d = n_prime as f64 + gamma;
        let apparent_n = (d * d + xi * xi).sqrt();
        let energy = d / apparent_n;
        let lambda = xi / apparent_n;
        let binding = lambda * lambda / (1.0 + energy);
        Ok(Self { xi, gamma, energy, binding, lambda, apparent_n })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub z: u32,
    pub n: u32,
    pub l: u32,
    pub branch: Branch,
    pub kappa: i64,
    pub n_prime: u32,
}

impl QuantumNumbers {
    pub fn from_kappa(z: u32, kappa: i64, n_prime: u32) -> Result<Self> {
        if kappa == 0 {
            return Err(Error::Domain("kappa must be nonzero".into()));
        }
        if kappa > 0 && n_prime == 0 {
            return Err(Error::NoSuchState(format!("kappa = {kappa} > 0 requires n' >= 1")));
        }
        let (l, branch) = if kappa < 0 {
            ((-kappa - 1) as u32, Branch::JPlus)
        } else {
            (kappa as u32, Branch::JMinus)
        };
        let n = n_prime + kappa.unsigned_abs() as u32;
        Ok(Self { z, n, l, branch, kappa, n_prime })
    }

    pub fn is_circular(&self) -> bool {
        self.l + 1 == self.n
    }
}

/// One radial function in factored form (see module docs).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialFactor {
    pub log_prefactor: f64,
    pub sign: f64,
    /// Coefficients of `p0 + p1·(2λr)`.
    pub poly: [f64; 2],
}

/// Large or small radial component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RadialPart {
    Large,
    Small,
}

/// Which product an overlap integrates: `∫r² gA gB` or `∫r² fA fB`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OverlapPart {
    Gg,
    Ff,
}

impl OverlapPart {
    fn radial(self) -> RadialPart {
        match self {
            OverlapPart::Gg => RadialPart::Large,
            OverlapPart::Ff => RadialPart::Small,
        }
    }
}

/// A Dirac-Coulomb bound state with closed-form radial data.
///
/// Built by [`make_circular_state`] for the circular orbits (`l = n-1`) used
/// by the packet. [`CircularState::from_kappa`] accepts any `(κ, n')` with
/// `n' <= 1`, which also covers the first radial excitation of each `j₊`
/// circular level.
#[derive(Debug, Clone, PartialEq)]
pub struct CircularState {
    pub qn: QuantumNumbers,
    pub xi: f64,
    pub gamma: f64,
    pub energy: f64,
    pub binding: f64,
    pub lambda: f64,
    pub g: RadialFactor,
    pub f: RadialFactor,
}

pub fn make_circular_state(z: u32, n: u32, branch: Branch) -> Result<CircularState> {
    CircularState::circular(&PhysicalConstants::default(), z, n, branch)
}

impl CircularState {
    pub fn circular(consts: &PhysicalConstants, z: u32, n: u32, branch: Branch) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoSuchState("principal number must be >= 1".into()));
        }
        let kappa = kappa_of(n - 1, branch)?;
        let n_prime = n - kappa.unsigned_abs() as u32;
        Self::from_kappa(consts, z, kappa, n_prime)
    }

    pub fn from_kappa(consts: &PhysicalConstants, z: u32, kappa: i64, n_prime: u32) -> Result<Self> {
        if n_prime > 1 {
            return Err(Error::UnsupportedOrder(n_prime as i64));
        }
        let qn = QuantumNumbers::from_kappa(z, kappa, n_prime)?;
        let lv = Level::new(consts, z, n_prime, kappa)?;
        let np = n_prime as f64;
        let k = kappa as f64;
        let c = 2.0 * lv.gamma + 1.0;

        // u = ξ/λ - κ, written without cancellation for κ > 0.
        let u = if kappa < 0 {
            lv.apparent_n - k
        } else {
            (np * np + 2.0 * np * lv.gamma) / (lv.apparent_n + k)
        };
        // ξ(ξ - κλ) = λ² N (N - κ) with N = ξ/λ.
        let log_norm_denominator = 2.0 * lv.lambda.ln() + lv.apparent_n.ln() + u.ln();

        // ln n'! vanishes for n' <= 1
        let log_common = 0.5 * std::f64::consts::LN_2 + 2.5 * lv.lambda.ln() - log_gamma(c)?
            + 0.5 * (log_gamma(c + np)? - log_norm_denominator);

        // Brackets in 2λr: g ∝ -n' F(1-n') + u F(-n'), f ∝ -(n' F(1-n') + u F(-n')).
        // F(-n', c, x) is linear for n' = 1 with slope -1/c.
        let slope = kummer_truncated(n_prime as i64, c, 1.0)? - kummer_truncated(n_prime as i64, c, 0.0)?;
        let upper = if n_prime == 1 { 1.0 } else { 0.0 }; // n' F(1-n', c, x) = n' for n' <= 1
        // Overall phase: g > 0 as r -> 0. The j- circular states otherwise
        // come out with g < 0 everywhere, which would make g₊ and g₋ opposite
        // in the non-relativistic limit.
        let phase = if u - upper < 0.0 { -1.0 } else { 1.0 };
        let g = RadialFactor {
            log_prefactor: log_common + 0.5 * (1.0 + lv.energy).ln(),
            sign: phase,
            poly: [u - upper, u * slope],
        };
        let f = RadialFactor {
            log_prefactor: log_common + 0.5 * lv.binding.ln(),
            sign: -phase,
            poly: [u + upper, u * slope],
        };
        Ok(Self {
            qn,
            xi: lv.xi,
            gamma: lv.gamma,
            energy: lv.energy,
            binding: lv.binding,
            lambda: lv.lambda,
            g,
            f,
        })
    }

    pub fn factor(&self, part: RadialPart) -> &RadialFactor {
        match part {
            RadialPart::Large => &self.g,
            RadialPart::Small => &self.f,
        }
    }

    /// `(g(r), f(r))` at `r > 0`.
    pub fn eval_radial(&self, r: f64) -> Result<(f64, f64)> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain(format!("radius must be finite and > 0, got {r}")));
        }
        Ok(self.eval_unchecked(r))
    }

    /// Same as [`eval_radial`](Self::eval_radial) without the argument check;
    /// `r` must be positive.
    #[inline]
    pub fn eval_unchecked(&self, r: f64) -> (f64, f64) {
        let x = 2.0 * self.lambda * r;
        let common = (self.gamma - 1.0) * x.ln() - self.lambda * r;
        let g = self.g.sign * (self.g.log_prefactor + common).exp() * (self.g.poly[0] + self.g.poly[1] * x);
        let f = self.f.sign * (self.f.log_prefactor + common).exp() * (self.f.poly[0] + self.f.poly[1] * x);
        (g, f)
    }

    pub fn eval_part(&self, part: RadialPart, r: f64) -> f64 {
        let (g, f) = self.eval_unchecked(r);
        match part {
            RadialPart::Large => g,
            RadialPart::Small => f,
        }
    }
}

/// `∫₀^∞ r² A(r) B(r) dr` from Gamma moments.
///
/// With `S = γA+γB` and `μ = λA+λB` the integrand is `r^S e^{-μr}` times a
/// quadratic in `r`, so the result is
/// `Γ(S+1)/μ^(S+1) · [c0 + c1 (S+1)/μ + c2 (S+1)(S+2)/μ²]`.
pub fn overlap_closed_form(a: &CircularState, b: &CircularState, part: OverlapPart) -> Result<f64> {
    if a.qn.z != b.qn.z {
        return Err(Error::MismatchedCharge(a.qn.z, b.qn.z));
    }
    let (fa, fb) = (a.factor(part.radial()), b.factor(part.radial()));
    // A(r) = sA exp(CA) r^(γA-1) e^(-λA r) (qA0 + qA1 r)
    let ca = fa.log_prefactor + (a.gamma - 1.0) * (2.0 * a.lambda).ln();
    let cb = fb.log_prefactor + (b.gamma - 1.0) * (2.0 * b.lambda).ln();
    let qa = [fa.poly[0], fa.poly[1] * 2.0 * a.lambda];
    let qb = [fb.poly[0], fb.poly[1] * 2.0 * b.lambda];
    let s = a.gamma + b.gamma;
    let mu = a.lambda + b.lambda;
    let m1 = (s + 1.0) / mu;
    let m2 = m1 * (s + 2.0) / mu;
    let poly = qa[0] * qb[0] + (qa[0] * qb[1] + qa[1] * qb[0]) * m1 + qa[1] * qb[1] * m2;
    let log_mag = ca + cb + log_gamma(s + 1.0)? - (s + 1.0) * mu.ln();
    Ok(fa.sign * fb.sign * log_mag.exp() * poly)
}

/// Upper integration limit leaving a Gamma tail far below 1e-16.
pub fn quadrature_cutoff(a: &CircularState, b: &CircularState) -> f64 {
    let s = a.gamma + b.gamma;
    (s + 40.0 + 10.0 * (s + 1.0).sqrt()) / (a.lambda + b.lambda)
}

/// Quadrature oracle for [`overlap_closed_form`].
pub fn overlap_quadrature(a: &CircularState, b: &CircularState, part: OverlapPart) -> Result<f64> {
    if a.qn.z != b.qn.z {
        return Err(Error::MismatchedCharge(a.qn.z, b.qn.z));
    }
    let rp = part.radial();
    let cutoff = quadrature_cutoff(a, b);
    let opts = AdaptiveOptions { abs_tol: 1e-300, rel_tol: 1e-13, initial_panels: 48, max_depth: 40 };
    integrate_adaptive(
        |r| {
            if r <= 0.0 {
                return 0.0;
            }
            r * r * a.eval_part(rp, r) * b.eval_part(rp, r)
        },
        0.0,
        cutoff,
        opts,
    )
}

/// Radial integrals of one circular `(j₊, j₋)` pair sharing `l`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OverlapSet {
    pub g_plus: f64,
    pub g_minus: f64,
    pub g_pm: f64,
    pub f_plus: f64,
    pub f_minus: f64,
}

impl OverlapSet {
    pub fn closed_form(plus: &CircularState, minus: &CircularState) -> Result<Self> {
        Ok(Self {
            g_plus: overlap_closed_form(plus, plus, OverlapPart::Gg)?,
            g_minus: overlap_closed_form(minus, minus, OverlapPart::Gg)?,
            g_pm: overlap_closed_form(plus, minus, OverlapPart::Gg)?,
            f_plus: overlap_closed_form(plus, plus, OverlapPart::Ff)?,
            f_minus: overlap_closed_form(minus, minus, OverlapPart::Ff)?,
        })
    }

    pub fn quadrature(plus: &CircularState, minus: &CircularState) -> Result<Self> {
        Ok(Self {
            g_plus: overlap_quadrature(plus, plus, OverlapPart::Gg)?,
            g_minus: overlap_quadrature(minus, minus, OverlapPart::Gg)?,
            g_pm: overlap_quadrature(plus, minus, OverlapPart::Gg)?,
            f_plus: overlap_quadrature(plus, plus, OverlapPart::Ff)?,
            f_minus: overlap_quadrature(minus, minus, OverlapPart::Ff)?,
        })
    }
}
