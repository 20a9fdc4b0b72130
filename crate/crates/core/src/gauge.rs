//! Residual (time-independent) gauge transformations in temporal gauge.

use num_complex::Complex64;

use crate::model::CshState;
use crate::spectral::{apply_multiplier, divergence, gradient, GaugeField, ScalarField, Symbol};

/// Static real gauge function `chi`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeFunction {
    chi: ScalarField,
}

impl GaugeFunction {
    /// Keeps the real part of `chi`.
    pub fn new(chi: &ScalarField) -> Self {
        Self {
            chi: chi.physical().real_part(),
        }
    }

    pub fn chi(&self) -> &ScalarField {
        &self.chi
    }

    pub fn negated(&self) -> Self {
        Self {
            chi: self.chi.scale(-1.0),
        }
    }

    /// `grad chi`; the constant mode of `chi` drops out.
    pub fn gradient(&self) -> GaugeField {
        gradient(&self.chi).real_part()
    }
}

/// `phi -> e^{i chi} phi`, `d_t phi -> e^{i chi} d_t phi`, `A -> A + grad chi`.
pub fn apply_gauge(state: &CshState, g: &GaugeFunction) -> CshState {
    let phase = g.chi.map(|c| Complex64::from_polar(1.0, c.re));
    let phi = state.phi().mul(&phase);
    let phi_t = state.phi_t().mul(&phase);
    let a = state.a_mean_free().add(&g.gradient());
    CshState::from_mean_free_gauge(state.time(), phi, phi_t, a, state.a_mean())
}

/// `chi = (-Delta)^{-1} div A`, which removes the mean-free curl-free part
/// of `A`. The constant mode of `A` is untouched.
pub fn coulomb_chi(a: &GaugeField) -> GaugeFunction {
    let div = divergence(a);
    let chi = apply_multiplier(&div, Symbol::NegInvLaplacian).physical();
    GaugeFunction::new(&chi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::data::{random_band, random_gauge};
    use crate::model::{
        constraint_residual, covariant_gradient_raw, energy, i_functional, Potential,
    };
    use crate::spectral::{curl, helmholtz_decompose, TorusGrid};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_state(seed: u64, n: usize) -> CshState {
        crate::testutil::random_state(seed, n, 4)
    }

    #[test]
    fn constant_chi_rotates_phase_only() {
        let s = random_state(1, 16);
        let c = 0.7;
        let g = GaugeFunction::new(&ScalarField::constant(s.grid(), Complex64::new(c, 0.0)));
        let t = apply_gauge(&s, &g);
        let rot = Complex64::from_polar(1.0, c);
        for (a, b) in t.phi().values().iter().zip(s.phi().values()) {
            assert!((a - rot * b).norm() < 1e-14);
        }
        assert!(t.gauge_field().sub(&s.gauge_field()).sup_norm() < 1e-14);
    }

    #[test]
    fn sine_chi_on_zero_matter() {
        let grid = TorusGrid::standard(16).unwrap();
        let s = CshState::zero(&grid);
        let g = GaugeFunction::new(&ScalarField::from_real_fn(&grid, |x, _| x.sin()));
        let a = apply_gauge(&s, &g).gauge_field();
        let expect = GaugeField::from_real_fns(&grid, |x, _| x.cos(), |_, _| 0.0);
        assert!(a.sub(&expect).sup_norm() < 1e-13);
    }

    #[test]
    fn coulomb_of_gradient() {
        let grid = TorusGrid::standard(16).unwrap();
        let a = GaugeField::from_real_fns(&grid, |x, _| x.cos(), |_, _| 0.0);
        let g = coulomb_chi(&a);
        let expect = ScalarField::from_real_fn(&grid, |x, _| -x.sin());
        assert!(g.chi().sub(&expect).sup_norm() < 1e-13);
        assert!(a.add(&g.gradient()).sup_norm() < 1e-13);
    }

    #[test]
    fn coulomb_of_divergence_free_is_zero() {
        let grid = TorusGrid::standard(16).unwrap();
        let a = GaugeField::from_real_fns(&grid, |_, y| y.sin(), |x, _| (2.0 * x).cos());
        assert!(coulomb_chi(&a).chi().sup_norm() < 1e-14);
    }

    #[test]
    fn adf_unchanged_by_gauge() {
        let s = random_state(2, 32);
        let grid = s.grid().clone();
        let chi = random_band(&grid, 3, true, &mut ChaCha8Rng::seed_from_u64(9));
        let t = apply_gauge(&s, &GaugeFunction::new(&chi));
        assert!(t.a_df().sub(s.a_df()).sup_norm() < 1e-12);
        assert_eq!(t.a_mean(), s.a_mean());
    }

    #[test]
    fn observables_are_invariant() {
        let s = random_state(3, 64);
        let grid = s.grid().clone();
        let chi = random_band(&grid, 3, true, &mut ChaCha8Rng::seed_from_u64(4)).scale(0.5);
        let t = apply_gauge(&s, &GaugeFunction::new(&chi));
        let v = Potential::quartic();
        let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(1.0);
        assert!(rel(energy(&s, &v), energy(&t, &v)) < 1e-10);
        assert!(rel(i_functional(&s), i_functional(&t)) < 1e-10);
        assert!((constraint_residual(&s).1 - constraint_residual(&t).1).abs() < 1e-10);
        let ds = covariant_gradient_raw(s.phi(), &s.gauge_field());
        let dt = covariant_gradient_raw(t.phi(), &t.gauge_field());
        for j in 0..2 {
            for (a, b) in ds[j].values().iter().zip(dt[j].values()) {
                assert!((a.norm() - b.norm()).abs() < 1e-10);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn gauge_inverse_round_trip(seed in 0u64..1000) {
            let s = random_state(seed, 16);
            let chi = random_band(s.grid(), 4, true, &mut ChaCha8Rng::seed_from_u64(seed + 1));
            let g = GaugeFunction::new(&chi);
            let back = apply_gauge(&apply_gauge(&s, &g), &g.negated());
            prop_assert!(back.phi().sub(s.phi()).sup_norm() < 1e-12);
            prop_assert!(back.phi_t().sub(s.phi_t()).sup_norm() < 1e-12);
            prop_assert!(back.gauge_field().sub(&s.gauge_field()).sup_norm() < 1e-12);
        }

        #[test]
        fn coulomb_removes_curl_free_part(seed in 0u64..1000) {
            let grid = TorusGrid::standard(16).unwrap();
            let a = random_gauge(&grid, 5, &mut ChaCha8Rng::seed_from_u64(seed));
            let fixed = a.add(&coulomb_chi(&a).gradient());
            let parts = helmholtz_decompose(&fixed);
            prop_assert!(parts.cf.l2_norm() <= 1e-12);
            prop_assert!(curl(&fixed).sub(&curl(&a)).sup_norm() < 1e-12);
            let (m0, m1) = (fixed.mean(), a.mean());
            prop_assert!((m0[0] - m1[0]).abs() < 1e-14 && (m0[1] - m1[1]).abs() < 1e-14);
        }
    }
}
