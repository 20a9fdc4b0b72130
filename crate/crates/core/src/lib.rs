//! Pseudospectral simulator for the (2+1)-dimensional Chern-Simons-Higgs
//! system in temporal gauge on a periodic square, with diagnostics and a
//! lab for space-time Fourier norms.

pub mod diagnostics;
pub mod dynamics;
pub mod error;
pub mod estimates;
pub mod gauge;
pub mod io;
pub mod model;
pub mod spectral;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
