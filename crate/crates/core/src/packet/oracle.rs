//! Brute-force evaluation from the explicit kets, with radial overlaps by
//! adaptive quadrature. Slow; used to cross-check the folded tables.

use std::collections::HashMap;

use num_complex::Complex64;

use super::kets::{partial_wave_kets, Ket};
use super::spec::{build_weights, PacketSpec};
use crate::dirac_coulomb::{overlap_quadrature, Branch, CircularState, OverlapPart, RadialPart};
use crate::error::Result;

struct Term {
    ket: Ket,
    weight: f64,
    binding: f64,
    state: usize,
}

/// Ket-level model of a packet.
pub struct KetOracle {
    terms: Vec<Term>,
    /// `(i, j, ∫r² R_i R_j)` for every pair of terms sharing `(l_orb, m)`.
    pairs: Vec<(usize, usize, f64)>,
}

impl KetOracle {
    pub fn new(spec: &PacketSpec) -> Result<Self> {
        let weights = build_weights(spec)?;
        let mut states = Vec::new();
        let mut terms = Vec::new();
        for (n, w) in weights.iter() {
            for branch in [Branch::JPlus, Branch::JMinus] {
                states.push(CircularState::circular(&spec.constants, spec.z, n, branch)?);
            }
            let base = states.len() - 2;
            for ket in partial_wave_kets(n - 1, spec.a, spec.b) {
                let state = base + usize::from(ket.branch == Branch::JMinus);
                terms.push(Term { ket, weight: w, binding: states[state].binding, state });
            }
        }

        let mut groups: HashMap<(u32, i32), Vec<usize>> = HashMap::new();
        for (i, t) in terms.iter().enumerate() {
            groups.entry((t.ket.l_orb, t.ket.m)).or_default().push(i);
        }
        let mut cache: HashMap<(usize, usize, RadialPart), f64> = HashMap::new();
        let mut pairs = Vec::new();
        for idx in groups.values() {
            for &i in idx {
                for &j in idx {
                    let (ti, tj) = (&terms[i], &terms[j]);
                    if ti.ket.part != tj.ket.part {
                        continue;
                    }
                    let key = (ti.state.min(tj.state), ti.state.max(tj.state), ti.ket.part);
                    let v = match cache.get(&key) {
                        Some(v) => *v,
                        None => {
                            let part = match ti.ket.part {
                                RadialPart::Large => OverlapPart::Gg,
                                RadialPart::Small => OverlapPart::Ff,
                            };
                            let v = overlap_quadrature(&states[key.0], &states[key.1], part)?;
                            cache.insert(key, v);
                            v
                        }
                    };
                    pairs.push((i, j, v));
                }
            }
        }
        pairs.sort_by_key(|p| (p.0, p.1));
        Ok(Self { terms, pairs })
    }

    fn amplitude(&self, i: usize, t: f64) -> Complex64 {
        let term = &self.terms[i];
        term.ket.coeff * term.weight * Complex64::cis(term.binding * t)
    }

    /// Matrix `M[i][j] = <c_i(t)|c_j(t)>`, up to the common rest-mass phase
    /// which cancels.
    pub fn component_products(&self, t: f64) -> [[Complex64; 4]; 4] {
        let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
        for &(i, j, v) in &self.pairs {
            let (ci, cj) = (self.terms[i].ket.component, self.terms[j].ket.component);
            m[ci][cj] += self.amplitude(i, t).conj() * self.amplitude(j, t) * v;
        }
        m
    }

    /// `<Ψ(0)|Ψ(t)>`.
    pub fn autocorrelation(&self, t: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(i, j, v) in &self.pairs {
            if self.terms[i].ket.component == self.terms[j].ket.component {
                acc += self.amplitude(i, 0.0).conj() * self.amplitude(j, t) * v;
            }
        }
        acc * Complex64::cis(-t)
    }

    /// Mean spin from `Σ = diag(σ, σ)` applied to the kets.
    pub fn spin(&self, t: f64) -> [f64; 3] {
        let m = self.component_products(t);
        let upper = m[0][1] + m[2][3];
        [2.0 * upper.re, 2.0 * upper.im, (m[0][0] - m[1][1] + m[2][2] - m[3][3]).re]
    }

    pub fn norms(&self, t: f64) -> [f64; 4] {
        let m = self.component_products(t);
        [m[0][0].re, m[1][1].re, m[2][2].re, m[3][3].re]
    }
}

/// Convenience wrapper: oracle autocorrelation at a single time.
pub fn autocorrelation_oracle(spec: &PacketSpec, t: f64) -> Result<Complex64> {
    Ok(KetOracle::new(spec)?.autocorrelation(t))
}
