//! Right-hand sides of the temporal-gauge system.
//!
//! Sign convention (Euclidean spatial contractions throughout):
//!
//! ```text
//! d_t A_1 = -2 Im(conj(phi) D_2 phi),   d_t A_2 = 2 Im(conj(phi) D_1 phi)
//! d_t^2 phi = sum_j D_j D_j phi - phi V'(|phi|^2)
//!           = Delta phi - 2i A.grad phi - i (div A) phi - |A|^2 phi - phi V'(|phi|^2)
//! ```
//!
//! With this choice the energy is conserved and the Gauss constraint
//! `d1 A2 - d2 A1 = 2 Im(conj(phi) d_t phi)` is propagated.

use num_complex::Complex64;

use crate::model::{adf_from_matter, charge_density, covariant_gradient_raw, currents, CshState, Potential};
use crate::spectral::{
    apply_multiplier, dealias, dealias_gauge, divergence, project, GaugeField, Projector,
    ScalarField, Symbol,
};

/// Interaction settings shared by every right-hand side.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub potential: Potential,
    /// When off, the matter field evolves freely and the gauge field is frozen.
    pub gauge_coupling: bool,
    /// When off, the `phi V'(|phi|^2)` term is dropped.
    pub potential_on: bool,
    /// Two-thirds truncation of every nonlinear rate.
    pub dealias: bool,
}

impl Model {
    /// Fully coupled model with dealiasing.
    pub fn coupled(potential: Potential) -> Self {
        Self {
            potential,
            gauge_coupling: true,
            potential_on: true,
            dealias: true,
        }
    }

    /// Free Klein-Gordon matter with the given potential, gauge sector off.
    pub fn uncoupled(potential: Potential) -> Self {
        Self {
            gauge_coupling: false,
            ..Self::coupled(potential)
        }
    }

    fn truncate(&self, f: ScalarField) -> ScalarField {
        if self.dealias {
            dealias(&f)
        } else {
            f
        }
    }

    fn truncate_gauge(&self, a: GaugeField) -> GaugeField {
        if self.dealias {
            dealias_gauge(&a)
        } else {
            a
        }
    }
}

/// Second time derivative of `phi` and the direct law for `d_t A`.
pub(crate) struct Forces {
    pub accel: ScalarField,
    pub gauge_rate: GaugeField,
}

/// Evaluates the matter acceleration and the gauge rate for a given total
/// gauge field `a`.
pub(crate) fn forces(phi: &ScalarField, a: &GaugeField, model: &Model) -> Forces {
    let grid = phi.grid().clone();
    let phi = phi.physical();
    let lap = apply_multiplier(&phi, Symbol::Laplacian);
    let mut accel = lap;

    let gauge_rate = if model.gauge_coupling {
        let a = a.physical();
        let d1 = apply_multiplier(&phi, Symbol::Deriv(0));
        let d2 = apply_multiplier(&phi, Symbol::Deriv(1));
        let div_a = divergence(&a).physical();
        let i = Complex64::new(0.0, 1.0);
        let (a1, a2) = (a.a1.values(), a.a2.values());
        let (p, g1, g2, dv) = (phi.values(), d1.values(), d2.values(), div_a.values());
        for (idx, out) in accel.values_mut().iter_mut().enumerate() {
            let (b1, b2) = (a1[idx].re, a2[idx].re);
            *out += -2.0 * i * (b1 * g1[idx] + b2 * g2[idx])
                - i * dv[idx].re * p[idx]
                - (b1 * b1 + b2 * b2) * p[idx];
        }
        let dphi = covariant_gradient_raw(&phi, &a);
        let j = currents(&phi, &dphi);
        GaugeField::new(j[1].scale(-2.0), j[0].scale(2.0))
    } else {
        GaugeField::zeros(&grid)
    };

    if model.potential_on {
        for (out, p) in accel.values_mut().iter_mut().zip(phi.values()) {
            *out -= p * model.potential.derivative(p.norm_sqr());
        }
    }

    Forces {
        accel: model.truncate(accel),
        gauge_rate: model.truncate_gauge(gauge_rate).real_part(),
    }
}

/// Time derivatives of the direct system `(phi, d_t phi, A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectRates {
    pub dphi: ScalarField,
    pub dphi_t: ScalarField,
    pub da: GaugeField,
}

pub fn rhs_direct(state: &CshState, model: &Model) -> DirectRates {
    let f = forces(state.phi(), &state.gauge_field(), model);
    DirectRates {
        dphi: state.phi_t().clone(),
        dphi_t: f.accel,
        da: f.gauge_rate,
    }
}

/// Time derivatives of the reduced system `(phi, d_t phi, A_cf, mean)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedRates {
    pub dphi: ScalarField,
    pub dphi_t: ScalarField,
    pub da_cf: GaugeField,
    pub dmean: [f64; 2],
}

/// Total gauge field of the reduced system.
pub(crate) fn assemble_gauge(
    phi: &ScalarField,
    phi_t: &ScalarField,
    a_cf: &GaugeField,
    mean: [f64; 2],
) -> GaugeField {
    adf_from_matter(phi, phi_t).add(a_cf).add_constant(mean)
}

pub(crate) fn reduced_rates(
    phi: &ScalarField,
    phi_t: &ScalarField,
    a_cf: &GaugeField,
    mean: [f64; 2],
    model: &Model,
) -> (ScalarField, GaugeField, [f64; 2]) {
    let a = assemble_gauge(phi, phi_t, a_cf, mean);
    let f = forces(phi, &a, model);
    let da_cf = project(&f.gauge_rate, Projector::CurlFree);
    let dmean = f.gauge_rate.mean();
    (f.accel, da_cf, dmean)
}

/// The divergence-free part is rebuilt from the matter fields; only the
/// curl-free part and the constant mode are integrated.
pub fn rhs_reformulated(state: &CshState, model: &Model) -> ReducedRates {
    let (dphi_t, da_cf, dmean) =
        reduced_rates(state.phi(), state.phi_t(), state.a_cf(), state.a_mean(), model);
    ReducedRates {
        dphi: state.phi_t().clone(),
        dphi_t,
        da_cf,
        dmean,
    }
}

/// The curl-free gauge rate split into its null-form, cross and cubic
/// pieces, each of the form `Delta^{-1} grad S`.
#[derive(Debug, Clone, PartialEq)]
pub struct NullFormTerms {
    /// `2 Delta^{-1} grad Q` with `Q = Im(d2 conj(phi) d1 phi - d1 conj(phi) d2 phi)`.
    pub null: GaugeField,
    /// `2 Delta^{-1} grad (A2 d1|phi|^2 - A1 d2|phi|^2)`.
    pub cross: GaugeField,
    /// `4 Delta^{-1} grad (Im(conj(phi) d_t phi) |phi|^2)`.
    pub cubic: GaugeField,
}

impl NullFormTerms {
    pub fn total(&self) -> GaugeField {
        self.null.add(&self.cross).add(&self.cubic)
    }
}

fn inv_lap_grad(s: &ScalarField) -> GaugeField {
    let s = s.spectral();
    GaugeField::new(
        apply_multiplier(&s, Symbol::InvLaplacianDeriv(0)),
        apply_multiplier(&s, Symbol::InvLaplacianDeriv(1)),
    )
    .real_part()
}

/// Expanded form of `d_t A_cf`. Equal to the curl-free projection of the
/// direct law whenever the Gauss constraint holds (the cubic term uses it).
pub fn rhs_acf_nullform(state: &CshState, dealias_terms: bool) -> NullFormTerms {
    let phi = state.phi();
    let a = state.gauge_field();
    let d1 = apply_multiplier(phi, Symbol::Deriv(0));
    let d2 = apply_multiplier(phi, Symbol::Deriv(1));
    let q = d2.zip_map(&d1, |b2, b1| Complex64::new((b2.conj() * b1 - b1.conj() * b2).im, 0.0));
    let dens = phi.map(|c| Complex64::new(c.norm_sqr(), 0.0));
    let dd1 = apply_multiplier(&dens, Symbol::Deriv(0));
    let dd2 = apply_multiplier(&dens, Symbol::Deriv(1));
    let cross = a
        .a2
        .mul(&dd1)
        .sub(&a.a1.mul(&dd2))
        .map(|c| Complex64::new(c.re, 0.0));
    let cubic = charge_density(phi, state.phi_t()).mul(&dens);
    let prep = |f: ScalarField, w: f64| {
        let f = f.scale(w);
        if dealias_terms {
            dealias(&f)
        } else {
            f
        }
    };
    NullFormTerms {
        null: inv_lap_grad(&prep(q, 2.0)),
        cross: inv_lap_grad(&prep(cross, 2.0)),
        cubic: inv_lap_grad(&prep(cubic, 4.0)),
    }
}

/// `d_t A_df = (-2 Delta^{-1} d2 div J, 2 Delta^{-1} d1 div J)` with
/// `J_j = Im(conj(phi) D_j phi)`.
pub fn adf_time_derivative(state: &CshState) -> GaugeField {
    let dphi = covariant_gradient_raw(state.phi(), &state.gauge_field());
    let j = currents(state.phi(), &dphi);
    let div_j = divergence(&GaugeField::new(j[0].clone(), j[1].clone())).spectral();
    GaugeField::new(
        apply_multiplier(&div_j, Symbol::InvLaplacianDeriv(1)).scale(-2.0),
        apply_multiplier(&div_j, Symbol::InvLaplacianDeriv(0)).scale(2.0),
    )
    .real_part()
}
