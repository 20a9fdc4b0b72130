//! Physical state, potentials, covariant observables and half-wave splitting.

pub mod data;
mod halfwave;
mod matter;
mod potential;
mod state;

pub use halfwave::{half_wave_merge, half_wave_split, HalfWavePair};
pub(crate) use matter::{covariant_gradient_raw, currents};
pub use matter::{
    adf_from_matter, charge_density, constraint_residual, covariant_gradient,
    covariant_sobolev_ratio, energy, energy_parts, i_functional, make_compatible_data,
    neutralize_charge, CurlPolicy, EnergyParts,
};
pub use potential::Potential;
pub use state::CshState;
