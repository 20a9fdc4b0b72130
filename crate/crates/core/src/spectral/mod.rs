//! Periodic-grid Fourier calculus.

mod field;
mod grid;
mod helmholtz;
mod multiplier;

pub use field::{GaugeField, Repr, ScalarField};
pub use grid::TorusGrid;
pub use helmholtz::{helmholtz_decompose, project, HelmholtzParts, Projector};
pub use multiplier::{
    apply_multiplier, curl, dealias, dealias_gauge, divergence, gradient, sobolev_norm, Symbol,
};
