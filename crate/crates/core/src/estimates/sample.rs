use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::spectral::{Repr, ScalarField, TorusGrid};

/// Taper applied in time before temporal transforms. The taper is not
/// renormalized: norms are those of `w(t) u(t, x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Window {
    Rectangular,
    /// `w = (1 - cos(pi t / (f T))) / 2` over the first and last fraction
    /// `f` of `[0, T]`, and 1 in between.
    RaisedCosine { fraction: f64 },
}

impl Default for Window {
    fn default() -> Self {
        Window::RaisedCosine { fraction: 0.1 }
    }
}

impl Window {
    pub fn weight(&self, t: f64, t_end: f64) -> f64 {
        match *self {
            Window::Rectangular => 1.0,
            Window::RaisedCosine { fraction } => {
                let edge = fraction * t_end;
                let d = t.min(t_end - t).max(0.0);
                if edge <= 0.0 || d >= edge {
                    1.0
                } else {
                    0.5 * (1.0 - (std::f64::consts::PI * d / edge).cos())
                }
            }
        }
    }
}

/// Complex samples `u(t_j, x)` at `t_j = j dt`, `j = 0..nt`, covering
/// `[0, T]` with `T = (nt - 1) dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimeSample {
    grid: TorusGrid,
    dt: f64,
    slices: Vec<ScalarField>,
    window: Window,
}

impl SpaceTimeSample {
    pub fn new(grid: &TorusGrid, dt: f64, slices: Vec<ScalarField>, window: Window) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::Parameter("time step must be positive".into()));
        }
        if slices.is_empty() {
            return Err(Error::Parameter("sample has no time slices".into()));
        }
        if slices.iter().any(|s| s.grid() != grid) {
            return Err(Error::Usage("slice on a different grid".into()));
        }
        Ok(Self {
            grid: grid.clone(),
            dt,
            slices: slices.into_iter().map(|s| s.physical()).collect(),
            window,
        })
    }

    /// Samples `f(t, x1, x2)` at every grid point and time.
    pub fn from_fn(
        grid: &TorusGrid,
        dt: f64,
        nt: usize,
        window: Window,
        f: impl Fn(f64, f64, f64) -> Complex64,
    ) -> Result<Self> {
        let slices = (0..nt)
            .map(|j| {
                let t = j as f64 * dt;
                ScalarField::from_fn(grid, |x1, x2| f(t, x1, x2))
            })
            .collect();
        Self::new(grid, dt, slices, window)
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn nt(&self) -> usize {
        self.slices.len()
    }

    pub fn t_end(&self) -> f64 {
        (self.nt() - 1) as f64 * self.dt
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.nt()).map(|j| j as f64 * self.dt).collect()
    }

    pub fn slices(&self) -> &[ScalarField] {
        &self.slices
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn window_weights(&self) -> Vec<f64> {
        let t_end = self.t_end();
        self.times()
            .into_iter()
            .map(|t| self.window.weight(t, t_end))
            .collect()
    }

    /// The tapered sample `w(t) u`, carrying a rectangular window.
    pub fn windowed(&self) -> Self {
        let slices = self
            .slices
            .iter()
            .zip(self.window_weights())
            .map(|(s, w)| s.scale(w))
            .collect();
        Self {
            grid: self.grid.clone(),
            dt: self.dt,
            slices,
            window: Window::Rectangular,
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            slices: self.slices.iter().map(|s| s.scale(c)).collect(),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveSign {
    Plus,
    Minus,
}

impl WaveSign {
    pub fn value(&self) -> f64 {
        match self {
            WaveSign::Plus => 1.0,
            WaveSign::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dispersion {
    /// `omega = |k|`
    Wave,
    /// `omega = <k>`
    KleinGordon,
}

/// Annulus `k_min <= |k| <= k_max` in wavenumber units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band {
    pub k_min: f64,
    pub k_max: f64,
}

/// Free wave `u(t) = e^{-+ i t omega(grad)} u0`, `-` for [`WaveSign::Plus`]
/// so that the sample sits on the cone `tau = -+|xi|`. `u0` has complex
/// Gaussian coefficients on the annulus and unit `L^2` norm. Coefficients
/// are drawn in a fixed order over the integer lattice, so a seed gives the
/// same `u0` at every resolution that holds the band.
#[allow(clippy::too_many_arguments)]
pub fn free_wave_sample(
    grid: &TorusGrid,
    band: Band,
    seed: u64,
    sign: WaveSign,
    dispersion: Dispersion,
    t_end: f64,
    nt: usize,
    window: Window,
) -> Result<SpaceTimeSample> {
    if nt < 2 || t_end.is_nan() || t_end <= 0.0 {
        return Err(Error::Parameter("need t_end > 0 and at least two time samples".into()));
    }
    let scale = 2.0 * std::f64::consts::PI / grid.period();
    let half = (grid.n() / 2) as i64;
    let reach = (band.k_max / scale).floor() as i64;
    if reach >= half {
        return Err(Error::Resolution(format!(
            "band |k| <= {} exceeds the grid's Nyquist range",
            band.k_max
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = grid.n() as i64;
    let mut modes = Vec::new();
    for m1 in -reach..=reach {
        for m2 in -reach..=reach {
            let k = scale * ((m1 * m1 + m2 * m2) as f64).sqrt();
            if k < band.k_min || k > band.k_max {
                continue;
            }
            let c = Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng));
            let idx = (m1.rem_euclid(n) * n + m2.rem_euclid(n)) as usize;
            let omega = match dispersion {
                Dispersion::Wave => k,
                Dispersion::KleinGordon => (1.0 + k * k).sqrt(),
            };
            modes.push((idx, c, omega));
        }
    }
    if modes.is_empty() {
        return Err(Error::Parameter("empty wavenumber band".into()));
    }
    let norm = grid.period() * modes.iter().map(|m| m.1.norm_sqr()).sum::<f64>().sqrt();
    let dt = t_end / (nt - 1) as f64;
    let s = -sign.value();
    let slices = (0..nt)
        .map(|j| {
            let t = j as f64 * dt;
            let mut coeffs = vec![Complex64::new(0.0, 0.0); grid.len()];
            for &(idx, c, omega) in &modes {
                coeffs[idx] = c / norm * Complex64::from_polar(1.0, s * omega * t);
            }
            ScalarField::from_values(grid, coeffs, Repr::Spectral).map(|f| f.physical())
        })
        .collect::<Result<Vec<_>>>()?;
    SpaceTimeSample::new(grid, dt, slices, window)
}
