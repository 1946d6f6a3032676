//! Gaussian superpositions of circular Dirac-Coulomb states and their
//! observables.

pub mod kets;
pub mod oracle;
pub mod spec;
pub mod tables;
pub mod timescales;

pub use kets::{partial_wave_kets, Ket};
pub use oracle::{autocorrelation_oracle, KetOracle};
pub use spec::{build_weights, PacketSpec, Weights, DEFAULT_SIGMA, WINDOW_SIGMAS};
pub use tables::{
    autocorrelation, build_tables, small_norm, spin_expect, CrossWave, NormTerms, PacketTables, PartialWave,
    TableOptions,
};
pub use timescales::{energy_derivatives, energy_taylor, timescales, EnergyBranch, TimeScales, TimeUnit};
