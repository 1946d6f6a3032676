//! Precomputed per-partial-wave data and the analytic observables built on it.
//!
//! Every observable is a single pass over the window: the overlap integrals,
//! energies and angular factors are folded into plain coefficients when the
//! tables are built.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::kets::{partial_wave_kets, Ket};
use super::spec::{build_weights, PacketSpec, Weights};
use crate::dirac_coulomb::{overlap_closed_form, Branch, CircularState, OverlapPart, OverlapSet};
use crate::error::Result;

/// Overrides applied while building tables, for diagnostics only.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableOptions {
    /// Replace every radial overlap by its non-relativistic value
    /// (`G₊ = G₋ = G± = 1`, all small-component integrals zero) while keeping
    /// the Dirac energies.
    pub nonrelativistic_overlaps: bool,
    /// Zero every small-component integral, keeping the large ones.
    pub large_only: bool,
}

/// Time-independent and oscillating parts `c + d cos(ω t)` of a component norm.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NormTerms {
    pub constant: f64,
    pub cosine: f64,
}

/// Data for partial wave `l` (principal number `n = l+1`).
#[derive(Debug, Clone, PartialEq)]
pub struct PartialWave {
    pub l: u32,
    pub weight: f64,
    pub plus: CircularState,
    pub minus: CircularState,
    pub e_plus: f64,
    pub e_minus: f64,
    /// `1 - E` of each branch.
    pub binding_plus: f64,
    pub binding_minus: f64,
    /// `E₊ - E₋`, from the cancellation-free splitting.
    pub omega: f64,
    pub overlaps: OverlapSet,
    /// Per component, coefficients (weight² included) of `e^{-iE₊t}` and
    /// `e^{-iE₋t}` in `<c_i(0)|c_i(t)>`.
    pub acf_plus: [f64; 4],
    pub acf_minus: [f64; 4],
    /// `<c_i(t)|c_i(t)>` contributions (weight² included).
    pub norms: [NormTerms; 4],
    pub sx_const: f64,
    pub sx_cos: f64,
    pub sy_sin: f64,
    pub sz_const: f64,
    pub sz_cos: f64,
    pub kets: Vec<Ket>,
}

/// Coupling between `(l, j₊)` and `(l+2, j₋)` through the small components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossWave {
    pub l: u32,
    /// `E₊(l) - E₋(l+2)` (negative).
    pub omega_tilde: f64,
    /// `∫ r² f₊(l) f₋(l+2) dr`.
    pub f_prime: f64,
    pub k: f64,
}

/// Immutable packet tables.
#[derive(Debug, Clone, PartialEq)]
pub struct PacketTables {
    pub spec: PacketSpec,
    pub weights: Weights,
    pub waves: Vec<PartialWave>,
    pub cross: Vec<CrossWave>,
    pub options: TableOptions,
}

pub fn build_tables(spec: &PacketSpec) -> Result<PacketTables> {
    PacketTables::build(spec, TableOptions::default())
}

impl PacketTables {
    pub fn build(spec: &PacketSpec, options: TableOptions) -> Result<Self> {
        let weights = build_weights(spec)?;
        let consts = &spec.constants;
        let (a, b) = (spec.a, spec.b);
        let (a2, b2) = (a * a, b * b);

        let mut waves = Vec::with_capacity(weights.len());
        for (n, w) in weights.iter() {
            let l = n - 1;
            let lf = l as f64;
            let plus = CircularState::circular(consts, spec.z, n, Branch::JPlus)?;
            let minus = CircularState::circular(consts, spec.z, n, Branch::JMinus)?;
            let omega = consts.fine_splitting(spec.z, n)?;
            let mut o = if options.nonrelativistic_overlaps {
                OverlapSet { g_plus: 1.0, g_minus: 1.0, g_pm: 1.0, f_plus: 0.0, f_minus: 0.0 }
            } else {
                OverlapSet::closed_form(&plus, &minus)?
            };
            if options.large_only {
                o.f_plus = 0.0;
                o.f_minus = 0.0;
            }
            let w2 = w * w;
            let d = 2.0 * lf + 1.0;
            let d3 = 2.0 * lf + 3.0;
            let beta2 = b2 * 2.0 * lf / (d * d);
            let c3_plus = a2 / d3 + b2 * 2.0 / (d * d3);
            let c3_minus = b2 * 2.0 * lf / d;
            let c4_plus = a2 * (2.0 * lf + 2.0) / d3 + b2 / d3;

            let acf_plus = [
                w2 * ((a2 + beta2) * o.g_plus - beta2 * o.g_pm),
                w2 * (b2 * (o.g_plus + 2.0 * lf * o.g_pm) / (d * d)),
                w2 * c3_plus * o.f_plus,
                w2 * c4_plus * o.f_plus,
            ];
            let acf_minus = [
                w2 * beta2 * (o.g_minus - o.g_pm),
                w2 * (b2 * (4.0 * lf * lf * o.g_minus + 2.0 * lf * o.g_pm) / (d * d)),
                w2 * c3_minus * o.f_minus,
                0.0,
            ];
            let norms = [
                NormTerms {
                    constant: w2 * (a2 * o.g_plus + beta2 * (o.g_plus + o.g_minus)),
                    cosine: -w2 * 2.0 * beta2 * o.g_pm,
                },
                NormTerms {
                    constant: w2 * b2 * (o.g_plus + 4.0 * lf * lf * o.g_minus) / (d * d),
                    cosine: w2 * b2 * 4.0 * lf * o.g_pm / (d * d),
                },
                NormTerms { constant: w2 * (c3_plus * o.f_plus + c3_minus * o.f_minus), cosine: 0.0 },
                NormTerms { constant: w2 * c4_plus * o.f_plus, cosine: 0.0 },
            ];
            let two_ab = 2.0 * a * b;
            // σ_z's last small-component term carries F₊: it is <c3|c3> - <c4|c4>
            // evaluated from the explicit kets.
            let sz_const = w2
                * (a2 * o.g_plus + b2 * (2.0 * lf - 1.0) / (d * d) * (o.g_plus - 2.0 * lf * o.g_minus)
                    + b2 * 2.0 * lf / d * o.f_minus
                    - (a2 * d / d3 + b2 * (2.0 * lf - 1.0) / (d * d3)) * o.f_plus);
            waves.push(PartialWave {
                l,
                weight: w,
                e_plus: plus.energy,
                e_minus: minus.energy,
                binding_plus: plus.binding,
                binding_minus: minus.binding,
                omega,
                overlaps: o,
                acf_plus,
                acf_minus,
                norms,
                sx_const: w2 * (two_ab / d * o.g_plus - two_ab / d3 * o.f_plus),
                sx_cos: w2 * two_ab / d * 2.0 * lf * o.g_pm,
                sy_sin: w2 * two_ab * 2.0 * lf / d * o.g_pm,
                sz_const,
                sz_cos: -w2 * b2 * 8.0 * lf / (d * d) * o.g_pm,
                kets: partial_wave_kets(l, a, b),
                plus,
                minus,
            });
        }

        let mut cross = Vec::new();
        for (i, lo) in waves.iter().enumerate() {
            let Some(hi) = waves.get(i + 2) else { break };
            let lf = lo.l as f64;
            let f_prime = if options.nonrelativistic_overlaps || options.large_only {
                0.0
            } else {
                overlap_closed_form(&lo.plus, &hi.minus, OverlapPart::Ff)?
            };
            let ang = ((2.0 * lf + 2.0) * (2.0 * lf + 4.0) / ((2.0 * lf + 3.0) * (2.0 * lf + 5.0))).sqrt();
            cross.push(CrossWave {
                l: lo.l,
                omega_tilde: hi.binding_minus - lo.binding_plus,
                f_prime,
                k: 2.0 * a * b * lo.weight * hi.weight * f_prime * ang,
            });
        }

        Ok(Self { spec: *spec, weights, waves, cross, options })
    }

    /// `A(t) = <Ψ(0)|Ψ(t)>` with `t` in natural units.
    pub fn autocorrelation(&self, t: f64) -> Complex64 {
        self.autocorrelation_components(t).iter().sum()
    }

    /// The four terms `<c_i(0)|c_i(t)>`.
    pub fn autocorrelation_components(&self, t: f64) -> [Complex64; 4] {
        // e^{-iEt} = e^{-it} e^{i(1-E)t}; the rest-mass phase is applied once.
        let mut acc = [Complex64::new(0.0, 0.0); 4];
        for w in &self.waves {
            let ep = Complex64::cis(w.binding_plus * t);
            let em = Complex64::cis(w.binding_minus * t);
            for (i, slot) in acc.iter_mut().enumerate() {
                *slot += ep * w.acf_plus[i] + em * w.acf_minus[i];
            }
        }
        let rest = Complex64::cis(-t);
        acc.map(|c| c * rest)
    }

    /// `<c_i(t)|c_i(t)>` for the four components.
    pub fn component_norms(&self, t: f64) -> [f64; 4] {
        let mut out = [0.0; 4];
        for w in &self.waves {
            let c = (w.omega * t).cos();
            for (i, slot) in out.iter_mut().enumerate() {
                *slot += w.norms[i].constant + w.norms[i].cosine * c;
            }
        }
        out
    }

    /// Mean spin `(<σx>, <σy>, <σz>)` at time `t`.
    ///
    /// With `include_delta` the small `Δl = 2` couplings
    /// `δσx = Σ K cos(ω̃t)`, `δσy = -Σ K sin(ω̃t)` are added (the sign of
    /// `δσy` follows from `2 Im <c3|c4>` with `ω̃ = E₊(l) - E₋(l+2)`).
    pub fn spin_expect(&self, t: f64, include_delta: bool) -> [f64; 3] {
        let (mut sx, mut sy, mut sz) = (0.0, 0.0, 0.0);
        for w in &self.waves {
            let (s, c) = (w.omega * t).sin_cos();
            sx += w.sx_const + w.sx_cos * c;
            sy += w.sy_sin * s;
            sz += w.sz_const + w.sz_cos * c;
        }
        if include_delta {
            let [dx, dy] = self.delta_sigma(t);
            sx += dx;
            sy += dy;
        }
        [sx, sy, sz]
    }

    /// `(δσx, δσy)` alone.
    pub fn delta_sigma(&self, t: f64) -> [f64; 2] {
        self.cross.iter().fold([0.0, 0.0], |[x, y], c| {
            let (s, co) = (c.omega_tilde * t).sin_cos();
            [x + c.k * co, y - c.k * s]
        })
    }

    /// Time-independent small-component weights `(<c3|c3>, <c4|c4>, sum)`.
    pub fn small_norm(&self) -> (f64, f64, f64) {
        let c3: f64 = self.waves.iter().map(|w| w.norms[2].constant).sum();
        let c4: f64 = self.waves.iter().map(|w| w.norms[3].constant).sum();
        (c3, c4, c3 + c4)
    }

    pub fn wave(&self, l: u32) -> Option<&PartialWave> {
        self.waves.iter().find(|w| w.l == l)
    }
}

pub fn autocorrelation(tables: &PacketTables, t: f64) -> Complex64 {
    tables.autocorrelation(t)
}

pub fn spin_expect(tables: &PacketTables, t: f64, include_delta: bool) -> [f64; 3] {
    tables.spin_expect(t, include_delta)
}

pub fn small_norm(tables: &PacketTables) -> (f64, f64, f64) {
    tables.small_norm()
}
