//! Circular wave packets built from exact Dirac-Coulomb bound states of
//! hydrogen-like ions, with analytic time evolution of the autocorrelation,
//! the mean spin vector, the small-component weight and the spatial density.

pub mod cli;
pub mod density;
pub mod dirac_coulomb;
pub mod error;
pub mod packet;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
