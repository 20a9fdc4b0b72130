//! Covariant calculus and the observables built from it.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{
    apply_multiplier, curl, dealias, project, GaugeField, Projector, ScalarField, Symbol,
};

use super::potential::Potential;
use super::state::CshState;

/// `Im(conj(phi) phi_t)`, as a real field.
pub fn charge_density(phi: &ScalarField, phi_t: &ScalarField) -> ScalarField {
    let (p, q) = (phi.physical(), phi_t.physical());
    p.zip_map(&q, |a, b| Complex64::new((a.conj() * b).im, 0.0))
}

/// Divergence-free gauge field fixed by the Gauss constraint:
/// `A_df = (-2 Delta^{-1} d2 rho, 2 Delta^{-1} d1 rho)` with
/// `rho = Im(conj(phi) phi_t)`.
pub fn adf_from_matter(phi: &ScalarField, phi_t: &ScalarField) -> GaugeField {
    let rho = charge_density(phi, phi_t).spectral();
    GaugeField::new(
        apply_multiplier(&rho, Symbol::InvLaplacianDeriv(1)).scale(-2.0),
        apply_multiplier(&rho, Symbol::InvLaplacianDeriv(0)).scale(2.0),
    )
    .real_part()
}

/// `D_j phi = d_j phi - i A_j phi` without truncation.
pub(crate) fn covariant_gradient_raw(phi: &ScalarField, a: &GaugeField) -> [ScalarField; 2] {
    let phi = phi.physical();
    let a = a.physical();
    let minus_i = Complex64::new(0.0, -1.0);
    [0, 1].map(|j| {
        let d = apply_multiplier(&phi, Symbol::Deriv(j));
        let aphi = a.component(j).mul(&phi);
        d.zip_map(&aphi, |x, y| x + minus_i * y)
    })
}

/// `D_j phi = d_j phi - i A_j phi`: derivative taken spectrally, product
/// formed pointwise, result dealiased.
pub fn covariant_gradient(phi: &ScalarField, a: &GaugeField) -> [ScalarField; 2] {
    covariant_gradient_raw(phi, a).map(|f| dealias(&f))
}

/// Currents `J_j = Im(conj(phi) D_j phi)`.
pub(crate) fn currents(phi: &ScalarField, dphi: &[ScalarField; 2]) -> [ScalarField; 2] {
    let phi = phi.physical();
    [0, 1].map(|j| {
        phi.zip_map(&dphi[j].physical(), |a, b| {
            Complex64::new((a.conj() * b).im, 0.0)
        })
    })
}

/// The three pieces of the conserved energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyParts {
    /// `||d_t phi||^2`.
    pub kinetic: f64,
    /// `sum_j ||D_j phi||^2`.
    pub gradient: f64,
    /// `int V(|phi|^2) dx`.
    pub potential: f64,
}

impl EnergyParts {
    pub fn total(&self) -> f64 {
        self.kinetic + self.gradient + self.potential
    }

    /// `sum_mu ||D_mu phi||^2`.
    pub fn covariant(&self) -> f64 {
        self.kinetic + self.gradient
    }
}

pub fn energy_parts(state: &CshState, v: &Potential) -> EnergyParts {
    let dphi = covariant_gradient_raw(state.phi(), &state.gauge_field());
    let kinetic = state.phi_t().l2_norm().powi(2);
    let gradient = dphi.iter().map(|d| d.l2_norm().powi(2)).sum();
    let potential = state
        .phi()
        .values()
        .iter()
        .map(|c| v.value(c.norm_sqr()))
        .sum::<f64>()
        * state.grid().cell_area();
    EnergyParts {
        kinetic,
        gradient,
        potential,
    }
}

/// `E = int |d_t phi|^2 + sum_j |D_j phi|^2 + V(|phi|^2) dx`.
pub fn energy(state: &CshState, v: &Potential) -> f64 {
    energy_parts(state, v).total()
}

/// Gauss constraint residual `d1 A2 - d2 A1 - 2 Im(conj(phi) phi_t)` and
/// its `L^2` norm.
pub fn constraint_residual(state: &CshState) -> (ScalarField, f64) {
    let c = curl(&state.gauge_field()).physical();
    let rho = charge_density(state.phi(), state.phi_t());
    let r = c.zip_map(&rho, |a, b| Complex64::new(a.re - 2.0 * b.re, 0.0));
    let l2 = r.l2_norm();
    (r, l2)
}

/// `I = ||phi|| + sum_j ||D_j phi|| + ||d_t phi||`.
pub fn i_functional(state: &CshState) -> f64 {
    let dphi = covariant_gradient_raw(state.phi(), &state.gauge_field());
    state.phi().l2_norm() + dphi.iter().map(|d| d.l2_norm()).sum::<f64>() + state.phi_t().l2_norm()
}

/// What [`make_compatible_data`] does with a curl-carrying input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurlPolicy {
    Reject,
    Project,
}

const CURL_TOLERANCE: f64 = 1e-10;
const CHARGE_TOLERANCE: f64 = 1e-12;

/// Builds initial data obeying the Gauss constraint:
/// `A(0) = a_cf + adf_from_matter(phi0, phi1) + a_mean`.
///
/// On the torus the constraint forces `int Im(conj(phi0) phi1) = 0`; data
/// violating that are rejected.
pub fn make_compatible_data(
    phi0: &ScalarField,
    phi1: &ScalarField,
    a_cf: &GaugeField,
    a_mean: [f64; 2],
    policy: CurlPolicy,
) -> Result<CshState> {
    let a_cf = a_cf.physical();
    let curl_norm = curl(&a_cf).l2_norm();
    let a_cf = if curl_norm > CURL_TOLERANCE * a_cf.l2_norm().max(1.0) {
        match policy {
            CurlPolicy::Reject => return Err(Error::NotCurlFree(curl_norm)),
            CurlPolicy::Project => project(&a_cf, Projector::CurlFree),
        }
    } else {
        // Mean-free by convention; the constant mode travels in `a_mean`.
        project(&a_cf, Projector::CurlFree)
    };
    let rho = charge_density(phi0, phi1);
    let mean = rho.mean().re;
    if mean.abs() > CHARGE_TOLERANCE * rho.sup_norm().max(1.0) {
        return Err(Error::Obstruction { mean });
    }
    Ok(CshState::reduced(
        0.0,
        phi0.clone(),
        phi1.clone(),
        a_cf,
        a_mean,
    ))
}

/// Removes the mean of `Im(conj(phi0) phi1)` by subtracting a multiple of
/// `i phi0` from `phi1`. Band limits are preserved.
pub fn neutralize_charge(phi0: &ScalarField, phi1: &ScalarField) -> ScalarField {
    let (p0, p1) = (phi0.physical(), phi1.physical());
    let rho_mean = charge_density(&p0, &p1).mean().re;
    let dens = p0.map(|c| Complex64::new(c.norm_sqr(), 0.0)).mean().re;
    if dens == 0.0 {
        return p1;
    }
    let c = rho_mean / dens;
    p1.zip_map(&p0, |b, a| b - Complex64::new(0.0, c) * a)
}

/// `||phi||_{L^4} / (||phi||_{L^2}^{1/2} (sum_j ||D_j phi||_{L^2})^{1/2})`.
pub fn covariant_sobolev_ratio(phi: &ScalarField, a: &GaugeField) -> Result<f64> {
    let dphi = covariant_gradient_raw(phi, a);
    let grad: f64 = dphi.iter().map(|d| d.l2_norm()).sum();
    let denom = (phi.l2_norm() * grad).sqrt();
    if denom == 0.0 {
        return Err(Error::Degenerate(
            "covariant Sobolev ratio needs a non-constant nonzero field".into(),
        ));
    }
    Ok(phi.lp_norm(4.0) / denom)
}
