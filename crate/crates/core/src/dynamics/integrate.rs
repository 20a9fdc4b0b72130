//! Time steppers: classical RK4 for the second-order forms and an
//! integrating-factor RK4 for the half-wave form.

use num_complex::Complex64;

use crate::model::{half_wave_merge, half_wave_split, CshState, HalfWavePair};
use crate::spectral::{apply_multiplier, GaugeField, ScalarField, Symbol};

use super::rhs::{forces, reduced_rates, Model};

/// Evolved variables that support the linear combinations RK4 needs.
pub trait OdeVars: Clone {
    /// `self += a * x`
    fn axpy(&mut self, a: f64, x: &Self);
    fn is_finite(&self) -> bool;
}

/// One classical fourth-order Runge-Kutta step of `y' = f(y)`.
pub fn rk4<V: OdeVars>(y: &V, dt: f64, f: impl Fn(&V) -> V) -> V {
    let k1 = f(y);
    let mut y2 = y.clone();
    y2.axpy(0.5 * dt, &k1);
    let k2 = f(&y2);
    let mut y3 = y.clone();
    y3.axpy(0.5 * dt, &k2);
    let k3 = f(&y3);
    let mut y4 = y.clone();
    y4.axpy(dt, &k3);
    let k4 = f(&y4);

    let mut out = y.clone();
    out.axpy(dt / 6.0, &k1);
    out.axpy(dt / 3.0, &k2);
    out.axpy(dt / 3.0, &k3);
    out.axpy(dt / 6.0, &k4);
    out
}

/// Variables whose stiff linear part has an exact flow `e^{hL}`.
pub trait LinearFlow: OdeVars {
    fn propagate(&self, h: f64) -> Self;
}

/// Lawson (integrating-factor) RK4 for `y' = L y + N(y)`: RK4 applied to
/// `v = e^{-tL} y`, with `n` returning `N(y)`. Exact when `N = 0`.
pub fn lawson_rk4<V: LinearFlow>(y: &V, dt: f64, n: impl Fn(&V) -> V) -> V {
    let half = 0.5 * dt;
    let k1 = n(y);

    let mut a = y.clone();
    a.axpy(half, &k1);
    let a = a.propagate(half);
    let k2 = n(&a);

    let y_half = y.propagate(half);
    let mut b = y_half.clone();
    b.axpy(half, &k2);
    let k3 = n(&b);

    let mut c = y_half.clone();
    c.axpy(dt, &k3);
    let c = c.propagate(half);
    let k4 = n(&c);

    // y_{n+1} = E(h) y + h/6 (E(h) k1 + 2 E(h/2)(k2 + k3) + k4)
    let mut mid = k2.clone();
    mid.axpy(1.0, &k3);
    let mut inner = y.clone();
    inner.axpy(dt / 6.0, &k1);
    let mut out = inner.propagate(half);
    out.axpy(dt / 3.0, &mid);
    let mut out = out.propagate(half);
    out.axpy(dt / 6.0, &k4);
    out
}

/// `(phi, d_t phi, A)` of the direct system; `a` includes the mean.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectVars {
    pub phi: ScalarField,
    pub phi_t: ScalarField,
    pub a: GaugeField,
}

impl DirectVars {
    pub fn from_state(s: &CshState) -> Self {
        Self {
            phi: s.phi().clone(),
            phi_t: s.phi_t().clone(),
            a: s.gauge_field(),
        }
    }

    pub fn to_state(&self, time: f64) -> CshState {
        CshState::from_gauge(time, self.phi.clone(), self.phi_t.clone(), &self.a)
    }

    pub fn rate(&self, model: &Model) -> Self {
        let f = forces(&self.phi, &self.a, model);
        Self {
            phi: self.phi_t.clone(),
            phi_t: f.accel,
            a: f.gauge_rate,
        }
    }
}

impl OdeVars for DirectVars {
    fn axpy(&mut self, a: f64, x: &Self) {
        self.phi.axpy(a, &x.phi);
        self.phi_t.axpy(a, &x.phi_t);
        self.a.axpy(a, &x.a);
    }

    fn is_finite(&self) -> bool {
        self.phi.is_finite() && self.phi_t.is_finite() && self.a.is_finite()
    }
}

/// `(phi, d_t phi, A_cf, mean)` of the reduced system.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedVars {
    pub phi: ScalarField,
    pub phi_t: ScalarField,
    pub a_cf: GaugeField,
    pub mean: [f64; 2],
}

impl ReducedVars {
    pub fn from_state(s: &CshState) -> Self {
        Self {
            phi: s.phi().clone(),
            phi_t: s.phi_t().clone(),
            a_cf: s.a_cf().clone(),
            mean: s.a_mean(),
        }
    }

    pub fn to_state(&self, time: f64) -> CshState {
        CshState::reduced(
            time,
            self.phi.clone(),
            self.phi_t.clone(),
            self.a_cf.clone(),
            self.mean,
        )
    }

    pub fn rate(&self, model: &Model) -> Self {
        let (accel, da_cf, dmean) =
            reduced_rates(&self.phi, &self.phi_t, &self.a_cf, self.mean, model);
        let (da_cf, dmean) = if model.gauge_coupling {
            (da_cf, dmean)
        } else {
            (GaugeField::zeros(self.phi.grid()), [0.0, 0.0])
        };
        Self {
            phi: self.phi_t.clone(),
            phi_t: accel,
            a_cf: da_cf,
            mean: dmean,
        }
    }
}

impl OdeVars for ReducedVars {
    fn axpy(&mut self, a: f64, x: &Self) {
        self.phi.axpy(a, &x.phi);
        self.phi_t.axpy(a, &x.phi_t);
        self.a_cf.axpy(a, &x.a_cf);
        self.mean[0] += a * x.mean[0];
        self.mean[1] += a * x.mean[1];
    }

    fn is_finite(&self) -> bool {
        self.phi.is_finite()
            && self.phi_t.is_finite()
            && self.a_cf.is_finite()
            && self.mean.iter().all(|v| v.is_finite())
    }
}

/// Half-wave form `(phi_+, phi_-, A_cf, mean)`.
///
/// `(i d_t +- <grad>) phi_+- = +- (1/2) <grad>^{-1} (N + phi)` where `N` is
/// the right-hand side of the wave equation `box phi = N`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfWaveVars {
    pub pair: HalfWavePair,
    pub a_cf: GaugeField,
    pub mean: [f64; 2],
}

impl HalfWaveVars {
    pub fn from_state(s: &CshState) -> Self {
        Self {
            pair: half_wave_split(s.phi(), s.phi_t()),
            a_cf: s.a_cf().clone(),
            mean: s.a_mean(),
        }
    }

    pub fn to_state(&self, time: f64) -> CshState {
        let (phi, phi_t) = half_wave_merge(&self.pair);
        CshState::reduced(time, phi, phi_t, self.a_cf.clone(), self.mean)
    }

    /// The non-propagator part of the half-wave system.
    pub fn nonlinear_rate(&self, model: &Model) -> Self {
        let (phi, phi_t) = half_wave_merge(&self.pair);
        let (accel, da_cf, dmean) = reduced_rates(&phi, &phi_t, &self.a_cf, self.mean, model);
        // box phi = accel - Delta phi; the half-wave source is N + phi.
        let lap = apply_multiplier(&phi, Symbol::Laplacian);
        let source = accel.sub(&lap).add(&phi);
        let g = apply_multiplier(&source, Symbol::Bracket(-1.0)).scale(0.5);
        let minus_i = Complex64::new(0.0, -1.0);
        let (da_cf, dmean) = if model.gauge_coupling {
            (da_cf, dmean)
        } else {
            (GaugeField::zeros(phi.grid()), [0.0, 0.0])
        };
        Self {
            pair: HalfWavePair {
                plus: g.scale_complex(minus_i),
                minus: g.scale_complex(-minus_i),
            },
            a_cf: da_cf,
            mean: dmean,
        }
    }
}

fn propagate_phase(f: &ScalarField, h: f64, sign: f64) -> ScalarField {
    let mut s = f.spectral();
    let grid = s.grid().clone();
    for (idx, c) in s.values_mut().iter_mut().enumerate() {
        let (k1, k2) = grid.k_at(idx);
        let omega = (1.0 + k1 * k1 + k2 * k2).sqrt();
        *c *= Complex64::from_polar(1.0, sign * omega * h);
    }
    s.physical()
}

impl OdeVars for HalfWaveVars {
    fn axpy(&mut self, a: f64, x: &Self) {
        self.pair.plus.axpy(a, &x.pair.plus);
        self.pair.minus.axpy(a, &x.pair.minus);
        self.a_cf.axpy(a, &x.a_cf);
        self.mean[0] += a * x.mean[0];
        self.mean[1] += a * x.mean[1];
    }

    fn is_finite(&self) -> bool {
        self.pair.plus.is_finite()
            && self.pair.minus.is_finite()
            && self.a_cf.is_finite()
            && self.mean.iter().all(|v| v.is_finite())
    }
}

impl LinearFlow for HalfWaveVars {
    /// `phi_+ -> e^{i h <grad>} phi_+`, `phi_- -> e^{-i h <grad>} phi_-`.
    fn propagate(&self, h: f64) -> Self {
        Self {
            pair: HalfWavePair {
                plus: propagate_phase(&self.pair.plus, h, 1.0),
                minus: propagate_phase(&self.pair.minus, h, -1.0),
            },
            a_cf: self.a_cf.clone(),
            mean: self.mean,
        }
    }
}
