//! Space-time norms on sampled fields and empirical checks of the
//! Strichartz-type estimate family, the angle bound and the null symbol.

mod inequality;
mod norms;
mod sample;
mod symbols;

pub use inequality::{estimate_ratio, Inequality};
pub use norms::{
    mixed_norm, modulation, norm, space_time_transform, temporal_frequencies, xsb_norm,
    NormFamily, NormSpec, DEFAULT_PLUS, MIN_TIME_SAMPLES,
};
pub use sample::{free_wave_sample, Band, Dispersion, SpaceTimeSample, WaveSign, Window};
pub use symbols::{angle, angle_bound_check, null_symbol_check, Sides};
