//! Shared fixtures for unit tests.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::model::data::{random_band, random_curl_free, with_h1_norm};
use crate::model::{make_compatible_data, neutralize_charge, CshState, CurlPolicy};
use crate::spectral::{GaugeField, TorusGrid};

/// Compatible band-limited state with `phi`, `d_t phi` of unit `H^1` size.
pub fn random_state(seed: u64, n: usize, k_max: u32) -> CshState {
    let grid = TorusGrid::standard(n).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phi0 = with_h1_norm(&random_band(&grid, k_max, false, &mut rng), 1.0);
    let phi1 = with_h1_norm(&random_band(&grid, k_max, false, &mut rng), 1.0);
    let phi1 = neutralize_charge(&phi0, &phi1);
    let a_cf = random_curl_free(&grid, k_max, &mut rng).scale(0.3);
    make_compatible_data(&phi0, &phi1, &a_cf, [0.2, -0.1], CurlPolicy::Reject).unwrap()
}

/// `phi = e^{i x1}`, `d_t phi = -i sqrt 2 phi`, `A = 0`.
pub fn plane_wave_state(n: usize) -> CshState {
    let grid = TorusGrid::standard(n).unwrap();
    let phi = crate::model::data::plane_wave(&grid, [1, 0], 1.0);
    let phi_t = phi.scale_complex(Complex64::new(0.0, -(2f64.sqrt())));
    CshState::from_gauge(0.0, phi, phi_t, &GaugeField::zeros(&grid))
}
