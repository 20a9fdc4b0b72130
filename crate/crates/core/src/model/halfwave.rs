use num_complex::Complex64;

use crate::spectral::{apply_multiplier, ScalarField, Symbol};

/// Half-wave components `phi_+-` with `phi = phi_+ + phi_-` and
/// `d_t phi = i <grad> (phi_+ - phi_-)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfWavePair {
    pub plus: ScalarField,
    pub minus: ScalarField,
}

/// `phi_+- = (phi -+ i <grad>^{-1} d_t phi) / 2`.
pub fn half_wave_split(phi: &ScalarField, phi_t: &ScalarField) -> HalfWavePair {
    let phi = phi.spectral();
    let w = apply_multiplier(&phi_t.spectral(), Symbol::Bracket(-1.0))
        .scale_complex(Complex64::new(0.0, 1.0));
    HalfWavePair {
        plus: phi.sub(&w).scale(0.5).physical(),
        minus: phi.add(&w).scale(0.5).physical(),
    }
}

/// Inverse of [`half_wave_split`]; returns `(phi, d_t phi)`.
pub fn half_wave_merge(pair: &HalfWavePair) -> (ScalarField, ScalarField) {
    let (p, m) = (pair.plus.spectral(), pair.minus.spectral());
    let phi = p.add(&m);
    let phi_t = apply_multiplier(&p.sub(&m), Symbol::Bracket(1.0))
        .scale_complex(Complex64::new(0.0, 1.0));
    (phi.physical(), phi_t.physical())
}
