use crate::spectral::{helmholtz_decompose, GaugeField, ScalarField, TorusGrid};

use super::matter::adf_from_matter;

/// Dynamical state at one time in temporal gauge (`A_0 = 0`).
///
/// The gauge field is held as its curl-free part, its divergence-free part
/// and its constant mode. The assembled mean-free field `a_df + a_cf` is
/// kept alongside so that persisted samples round-trip exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct CshState {
    time: f64,
    phi: ScalarField,
    phi_t: ScalarField,
    a_cf: GaugeField,
    a_df: GaugeField,
    a_mean: [f64; 2],
    a_mean_free: GaugeField,
}

impl CshState {
    /// State of the reduced system: the divergence-free part is derived
    /// from the matter fields, never supplied.
    pub fn reduced(
        time: f64,
        phi: ScalarField,
        phi_t: ScalarField,
        a_cf: GaugeField,
        a_mean: [f64; 2],
    ) -> Self {
        let phi = phi.physical();
        let phi_t = phi_t.physical();
        let a_cf = a_cf.physical();
        let a_df = adf_from_matter(&phi, &phi_t);
        let a_mean_free = a_df.add(&a_cf);
        Self {
            time,
            phi,
            phi_t,
            a_cf,
            a_df,
            a_mean,
            a_mean_free,
        }
    }

    /// State carrying an arbitrary gauge field, split by Helmholtz projection.
    pub fn from_gauge(time: f64, phi: ScalarField, phi_t: ScalarField, a: &GaugeField) -> Self {
        let parts = helmholtz_decompose(a);
        let a_mean_free = a.add_constant([-parts.mean[0], -parts.mean[1]]).real_part();
        Self {
            time,
            phi: phi.physical(),
            phi_t: phi_t.physical(),
            a_cf: parts.cf,
            a_df: parts.df,
            a_mean: parts.mean,
            a_mean_free,
        }
    }

    /// As [`from_gauge`](Self::from_gauge), with the mean-free field taken
    /// verbatim rather than reassembled.
    pub fn from_mean_free_gauge(
        time: f64,
        phi: ScalarField,
        phi_t: ScalarField,
        a_mean_free: GaugeField,
        a_mean: [f64; 2],
    ) -> Self {
        let a_mean_free = a_mean_free.physical();
        let parts = helmholtz_decompose(&a_mean_free);
        Self {
            time,
            phi: phi.physical(),
            phi_t: phi_t.physical(),
            a_cf: parts.cf,
            a_df: parts.df,
            a_mean,
            a_mean_free,
        }
    }

    pub fn zero(grid: &TorusGrid) -> Self {
        Self::reduced(
            0.0,
            ScalarField::zeros(grid),
            ScalarField::zeros(grid),
            GaugeField::zeros(grid),
            [0.0, 0.0],
        )
    }

    pub fn grid(&self) -> &TorusGrid {
        self.phi.grid()
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn with_time(mut self, time: f64) -> Self {
        self.time = time;
        self
    }

    pub fn phi(&self) -> &ScalarField {
        &self.phi
    }

    pub fn phi_t(&self) -> &ScalarField {
        &self.phi_t
    }

    pub fn a_cf(&self) -> &GaugeField {
        &self.a_cf
    }

    pub fn a_df(&self) -> &GaugeField {
        &self.a_df
    }

    pub fn a_mean(&self) -> [f64; 2] {
        self.a_mean
    }

    /// `a_df + a_cf`, without the constant mode.
    pub fn a_mean_free(&self) -> &GaugeField {
        &self.a_mean_free
    }

    /// Total gauge field `A = a_df + a_cf + a_mean`.
    pub fn gauge_field(&self) -> GaugeField {
        self.a_mean_free.add_constant(self.a_mean)
    }

    pub fn is_finite(&self) -> bool {
        self.phi.is_finite()
            && self.phi_t.is_finite()
            && self.a_mean_free.is_finite()
            && self.a_mean.iter().all(|v| v.is_finite())
    }
}
