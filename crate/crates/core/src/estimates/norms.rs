use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::spectral::sobolev_norm;

use super::sample::SpaceTimeSample;

/// Minimum number of time samples for a temporal transform.
pub const MIN_TIME_SAMPLES: usize = 8;

/// Default concrete offset realizing `a+ = a + eps`.
pub const DEFAULT_PLUS: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormFamily {
    /// `<xi>^s <tau + |xi|>^b`
    XPlus,
    /// `<xi>^s <tau - |xi|>^b`
    XMinus,
    /// `<xi>^s <|tau| - |xi|>^b`
    XWave,
    /// `<xi>^s <tau>^b`
    XTau0,
    /// `L^q_x L^r_t`
    Mixed,
    /// `L^q_{xt}`
    Lebesgue,
    /// `sup_t ||u(t)||_{H^s}`
    Sobolev,
}

impl NormFamily {
    pub fn is_xsb(&self) -> bool {
        matches!(
            self,
            NormFamily::XPlus | NormFamily::XMinus | NormFamily::XWave | NormFamily::XTau0
        )
    }
}

/// Norm selector. Exponents use `f64::INFINITY` as the sup sentinel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormSpec {
    pub family: NormFamily,
    pub s: f64,
    pub b: f64,
    pub q: f64,
    pub r: f64,
    pub epsilon: f64,
}

impl NormSpec {
    pub fn xsb(family: NormFamily, s: f64, b: f64) -> Self {
        Self {
            family,
            s,
            b,
            q: 2.0,
            r: 2.0,
            epsilon: DEFAULT_PLUS,
        }
    }

    pub fn mixed(q: f64, r: f64) -> Self {
        Self {
            family: NormFamily::Mixed,
            s: 0.0,
            b: 0.0,
            q,
            r,
            epsilon: DEFAULT_PLUS,
        }
    }

    pub fn lebesgue(q: f64) -> Self {
        Self {
            family: NormFamily::Lebesgue,
            ..Self::mixed(q, q)
        }
    }

    pub fn sobolev(s: f64) -> Self {
        Self {
            family: NormFamily::Sobolev,
            s,
            ..Self::mixed(2.0, f64::INFINITY)
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |p: f64| p >= 1.0 && !p.is_nan();
        if !ok(self.q) || !ok(self.r) {
            return Err(Error::Parameter(format!(
                "exponents must be >= 1 (got q = {}, r = {})",
                self.q, self.r
            )));
        }
        if !(self.s.is_finite() && self.b.is_finite()) {
            return Err(Error::Parameter("s and b must be finite".into()));
        }
        Ok(())
    }
}

fn bracket(x: f64) -> f64 {
    (1.0 + x * x).sqrt()
}

/// Signed temporal frequencies in FFT order for `nt` samples spaced `dt`.
pub fn temporal_frequencies(nt: usize, dt: f64) -> Vec<f64> {
    let base = 2.0 * std::f64::consts::PI / (nt as f64 * dt);
    (0..nt)
        .map(|l| {
            let m = if l < nt.div_ceil(2) { l as i64 } else { l as i64 - nt as i64 };
            m as f64 * base
        })
        .collect()
}

/// Space-time Fourier coefficients of the windowed sample, indexed
/// `[spatial mode][temporal mode]`, normalized as amplitudes:
/// `G(tau_l, k) = nt^{-1} sum_j w_j u_k(t_j) e^{-i tau_l t_j}`.
pub fn space_time_transform(u: &SpaceTimeSample) -> Vec<Vec<Complex64>> {
    let nt = u.nt();
    let weights = u.window_weights();
    let spectra: Vec<Vec<Complex64>> = u
        .slices()
        .iter()
        .zip(&weights)
        .map(|(s, &w)| s.scale(w).spectral().into_values())
        .collect();
    let fft = FftPlanner::new().plan_fft_forward(nt);
    let inv = 1.0 / nt as f64;
    (0..u.grid().len())
        .map(|idx| {
            let mut line: Vec<Complex64> = spectra.iter().map(|s| s[idx]).collect();
            fft.process(&mut line);
            line.iter_mut().for_each(|c| *c *= inv);
            line
        })
        .collect()
}

/// Discrete `X^{s,b}` norm:
/// `||.||^2 = L^2 (nt dt) sum_{k,l} <xi_k>^{2s} m(tau_l, xi_k)^{2b} |G(tau_l, k)|^2`.
/// With `s = b = 0` this is the windowed `L^2_{xt}` norm with the rectangle
/// rule in time.
pub fn xsb_norm(u: &SpaceTimeSample, spec: &NormSpec) -> Result<f64> {
    if !spec.family.is_xsb() {
        return Err(Error::Parameter(format!(
            "{:?} is not an X^(s,b) family",
            spec.family
        )));
    }
    spec.validate()?;
    if u.nt() < MIN_TIME_SAMPLES {
        return Err(Error::Resolution(format!(
            "temporal window has {} samples, need at least {MIN_TIME_SAMPLES}",
            u.nt()
        )));
    }
    let grid = u.grid();
    let taus = temporal_frequencies(u.nt(), u.dt());
    let g = space_time_transform(u);
    let mut sum = 0.0;
    for (idx, line) in g.iter().enumerate() {
        let (k1, k2) = grid.k_at(idx);
        let xi = (k1 * k1 + k2 * k2).sqrt();
        let space = bracket(xi).powf(2.0 * spec.s);
        for (c, &tau) in line.iter().zip(&taus) {
            let m = modulation(spec.family, tau, xi);
            sum += space * m.powf(2.0 * spec.b) * c.norm_sqr();
        }
    }
    let l = grid.period();
    Ok((l * l * u.nt() as f64 * u.dt() * sum).sqrt())
}

/// Modulation weight `<tau +- |xi|>`, `<|tau| - |xi|>` or `<tau>`.
pub fn modulation(family: NormFamily, tau: f64, xi: f64) -> f64 {
    match family {
        NormFamily::XPlus => bracket(tau + xi),
        NormFamily::XMinus => bracket(tau - xi),
        NormFamily::XWave => bracket(tau.abs() - xi),
        NormFamily::XTau0 => bracket(tau),
        _ => 1.0,
    }
}

fn trapezoid_weights(nt: usize, dt: f64) -> Vec<f64> {
    let mut w = vec![dt; nt];
    if nt > 1 {
        w[0] = 0.5 * dt;
        w[nt - 1] = 0.5 * dt;
    }
    w
}

/// `L^q_x L^r_t` norm of the raw (untapered) samples: trapezoid rule in
/// time, grid quadrature in space, inner norm in time.
pub fn mixed_norm(u: &SpaceTimeSample, q: f64, r: f64) -> Result<f64> {
    NormSpec::mixed(q, r).validate()?;
    let cell = u.grid().cell_area();
    let wt = trapezoid_weights(u.nt(), u.dt());
    let inner: Vec<f64> = (0..u.grid().len())
        .map(|idx| {
            let vals = u.slices().iter().map(|s| s.values()[idx].norm());
            if r.is_infinite() {
                vals.fold(0.0, f64::max)
            } else {
                vals.zip(&wt).map(|(v, w)| w * v.powf(r)).sum::<f64>().powf(1.0 / r)
            }
        })
        .collect();
    Ok(if q.is_infinite() {
        inner.into_iter().fold(0.0, f64::max)
    } else {
        (cell * inner.iter().map(|v| v.powf(q)).sum::<f64>()).powf(1.0 / q)
    })
}

/// Evaluates any [`NormSpec`] on `u`.
pub fn norm(u: &SpaceTimeSample, spec: &NormSpec) -> Result<f64> {
    spec.validate()?;
    match spec.family {
        f if f.is_xsb() => xsb_norm(u, spec),
        NormFamily::Mixed => mixed_norm(u, spec.q, spec.r),
        NormFamily::Lebesgue => mixed_norm(u, spec.q, spec.q),
        _ => Ok(u
            .slices()
            .iter()
            .map(|s| sobolev_norm(s, spec.s, false))
            .fold(0.0, f64::max)),
    }
}
