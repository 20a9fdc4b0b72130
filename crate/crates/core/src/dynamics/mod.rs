//! Right-hand sides, time integrators and the evolution driver.

mod evolve;
mod integrate;
mod rhs;

pub use evolve::{
    evolve, evolve_observed, step_halfwave, step_rk4, Formulation, SchemeConfig, Trajectory,
};
pub use integrate::{
    lawson_rk4, rk4, DirectVars, HalfWaveVars, LinearFlow, OdeVars, ReducedVars,
};
pub use rhs::{
    adf_time_derivative, rhs_acf_nullform, rhs_direct, rhs_reformulated, DirectRates, Model,
    NullFormTerms, ReducedRates,
};
