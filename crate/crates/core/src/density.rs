//! Component fields in space and spin-resolved density on the orbit plane.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dirac_coulomb::{Branch, RadialPart};
use crate::error::{Error, Result};
use crate::packet::PacketTables;
use crate::specfun::{normalized_legendre, sph_harm};

/// Default half-width of the grid in units of `r_N`.
pub const DEFAULT_EXTENT: f64 = 1.6;

/// Square grid on the equatorial plane `θ = π/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneGridSpec {
    /// Half-width in units of the orbit radius `r_N = N²/(Zα)`.
    pub extent: f64,
    /// Points per axis; nodes run from `-extent` to `+extent` inclusive.
    pub resolution: usize,
}

impl Default for PlaneGridSpec {
    fn default() -> Self {
        Self { extent: DEFAULT_EXTENT, resolution: 128 }
    }
}

impl PlaneGridSpec {
    pub fn new(extent: f64, resolution: usize) -> Result<Self> {
        let g = Self { extent, resolution };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.extent > 0.0) || !self.extent.is_finite() {
            return Err(Error::Domain(format!("grid extent must be finite and > 0, got {}", self.extent)));
        }
        if self.resolution < 16 {
            return Err(Error::Domain(format!("grid resolution must be >= 16, got {}", self.resolution)));
        }
        Ok(())
    }

    /// Node coordinate along either axis, in units of `r_N`.
    pub fn coordinate(&self, i: usize) -> f64 {
        -self.extent + 2.0 * self.extent * i as f64 / (self.resolution - 1) as f64
    }
}

/// Row-major densities: entry `iy * resolution + ix` sits at
/// `(coordinate(ix), coordinate(iy))`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityGrid {
    pub grid: PlaneGridSpec,
    /// Orbit radius in Compton lengths.
    pub r_n: f64,
    /// Natural-unit time.
    pub time: f64,
    /// `|c1|² + |c3|²`.
    pub spin_up: Vec<f64>,
    /// `|c2|² + |c4|²`.
    pub spin_down: Vec<f64>,
}

impl DensityGrid {
    pub fn resolution(&self) -> usize {
        self.grid.resolution
    }

    pub fn total(&self, i: usize) -> f64 {
        self.spin_up[i] + self.spin_down[i]
    }

    /// Index and `(x, y)` (units of `r_N`) of the largest total density.
    pub fn peak(&self) -> (usize, f64, f64) {
        let (i, _) = (0..self.spin_up.len())
            .map(|i| (i, self.total(i)))
            .fold((0, f64::MIN), |best, cur| if cur.1 > best.1 { cur } else { best });
        let n = self.grid.resolution;
        (i, self.grid.coordinate(i % n), self.grid.coordinate(i / n))
    }
}

/// `(c1, c2, c3, c4)` at the point `(r, θ, φ)` and natural-unit time `t`.
pub fn amplitudes(tables: &PacketTables, r: f64, theta: f64, phi: f64, t: f64) -> Result<[Complex64; 4]> {
    let mut c = [Complex64::new(0.0, 0.0); 4];
    for w in &tables.waves {
        let plus = w.plus.eval_radial(r)?;
        let minus = w.minus.eval_radial(r)?;
        let phase_plus = Complex64::cis(-w.e_plus * t);
        let phase_minus = Complex64::cis(-w.e_minus * t);
        for k in &w.kets {
            let (radial, phase) = match k.branch {
                Branch::JPlus => (plus, phase_plus),
                Branch::JMinus => (minus, phase_minus),
            };
            let rv = match k.part {
                RadialPart::Large => radial.0,
                RadialPart::Small => radial.1,
            };
            c[k.component] += k.coeff * w.weight * rv * phase * sph_harm(k.l_orb, k.m, theta, phi)?;
        }
    }
    Ok(c)
}

/// One ket with everything except `R(r) e^{imφ}` folded in.
struct PlaneKet {
    component: usize,
    state: usize,
    part: RadialPart,
    m: usize,
    factor: Complex64,
}

struct PlaneKernel<'a> {
    tables: &'a PacketTables,
    kets: Vec<PlaneKet>,
    max_m: usize,
    r_n: f64,
    r_floor: f64,
}

impl<'a> PlaneKernel<'a> {
    fn new(tables: &'a PacketTables, t: f64) -> Result<Self> {
        let mut kets = Vec::new();
        let mut max_m = 0;
        for (wi, w) in tables.waves.iter().enumerate() {
            // the global rest-mass phase is dropped; only |c|² is needed
            let phase_plus = Complex64::cis(w.binding_plus * t);
            let phase_minus = Complex64::cis(w.binding_minus * t);
            for k in &w.kets {
                let (state, phase) = match k.branch {
                    Branch::JPlus => (2 * wi, phase_plus),
                    Branch::JMinus => (2 * wi + 1, phase_minus),
                };
                let m = k.m as usize;
                max_m = max_m.max(m);
                let legendre = normalized_legendre(k.l_orb, m as u32, 0.0)?;
                if legendre == 0.0 {
                    continue;
                }
                kets.push(PlaneKet { component: k.component, state, part: k.part, m, factor: k.coeff * w.weight * legendre * phase });
            }
        }
        let r_n = tables.spec.orbit_radius();
        Ok(Self { tables, kets, max_m, r_n, r_floor: 1e-9 * r_n })
    }

    fn node(&self, x: f64, y: f64, radial: &mut Vec<(f64, f64)>, powers: &mut Vec<Complex64>) -> (f64, f64) {
        let r = (x * x + y * y).sqrt().max(self.r_floor);
        let phi = y.atan2(x);
        radial.clear();
        for w in &self.tables.waves {
            radial.push(w.plus.eval_unchecked(r));
            radial.push(w.minus.eval_unchecked(r));
        }
        powers.clear();
        let e = Complex64::cis(phi);
        let mut p = Complex64::new(1.0, 0.0);
        for _ in 0..=self.max_m {
            powers.push(p);
            p *= e;
        }
        let mut c = [Complex64::new(0.0, 0.0); 4];
        for k in &self.kets {
            let (g, f) = radial[k.state];
            let rv = if k.part == RadialPart::Large { g } else { f };
            c[k.component] += k.factor * (rv * powers[k.m]);
        }
        (c[0].norm_sqr() + c[2].norm_sqr(), c[1].norm_sqr() + c[3].norm_sqr())
    }

    fn row(&self, grid: &PlaneGridSpec, iy: usize) -> Vec<(f64, f64)> {
        let y = grid.coordinate(iy) * self.r_n;
        let mut radial = Vec::with_capacity(2 * self.tables.waves.len());
        let mut powers = Vec::with_capacity(self.max_m + 1);
        (0..grid.resolution).map(|ix| self.node(grid.coordinate(ix) * self.r_n, y, &mut radial, &mut powers)).collect()
    }
}

fn assemble(grid: PlaneGridSpec, r_n: f64, time: f64, rows: Vec<Vec<(f64, f64)>>) -> DensityGrid {
    let (spin_up, spin_down) = rows.into_iter().flatten().unzip();
    DensityGrid { grid, r_n, time, spin_up, spin_down }
}

/// Density grid at natural-unit time `t`, rows evaluated in parallel.
pub fn density_grid(tables: &PacketTables, grid: PlaneGridSpec, t: f64) -> Result<DensityGrid> {
    grid.validate()?;
    let kernel = PlaneKernel::new(tables, t)?;
    let rows: Vec<_> = (0..grid.resolution).into_par_iter().map(|iy| kernel.row(&grid, iy)).collect();
    Ok(assemble(grid, kernel.r_n, t, rows))
}

/// Single-threaded [`density_grid`]; the result is bit-identical.
pub fn density_grid_serial(tables: &PacketTables, grid: PlaneGridSpec, t: f64) -> Result<DensityGrid> {
    grid.validate()?;
    let kernel = PlaneKernel::new(tables, t)?;
    let rows: Vec<_> = (0..grid.resolution).map(|iy| kernel.row(&grid, iy)).collect();
    Ok(assemble(grid, kernel.r_n, t, rows))
}
