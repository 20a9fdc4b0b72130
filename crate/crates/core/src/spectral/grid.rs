use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Uniform `n x n` sampling of the periodic square `[0, L)^2`.
///
/// Samples are stored row-major with the first axis (`x1`) as the slow
/// index: value `(i, j)` sits at `x = (i h, j h)` and offset `i * n + j`.
/// Spectral index `i` maps to the signed mode `m = i` for `i < n/2` and
/// `m = i - n` otherwise, so `m` ranges over `[-n/2, n/2)`.
#[derive(Clone)]
pub struct TorusGrid {
    n: usize,
    period: f64,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for TorusGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TorusGrid")
            .field("n", &self.n)
            .field("period", &self.period)
            .finish()
    }
}

impl PartialEq for TorusGrid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.period.to_bits() == other.period.to_bits()
    }
}

impl TorusGrid {
    pub fn new(n: usize, period: f64) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::Parameter(format!(
                "grid size must be even and >= 4, got {n}"
            )));
        }
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::Parameter(format!(
                "grid period must be positive, got {period}"
            )));
        }
        let mut planner = FftPlanner::new();
        Ok(Self {
            n,
            period,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        })
    }

    /// Grid on `[0, 2 pi)^2`, where wavenumbers are integers.
    pub fn standard(n: usize) -> Result<Self> {
        Self::new(n, 2.0 * PI)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.period / self.n as f64
    }

    /// Area element of the trapezoid rule.
    pub fn cell_area(&self) -> f64 {
        let h = self.spacing();
        h * h
    }

    pub fn area(&self) -> f64 {
        self.period * self.period
    }

    pub fn coordinate(&self, i: usize) -> f64 {
        i as f64 * self.spacing()
    }

    /// Signed mode number for a spectral index along one axis.
    pub fn mode(&self, i: usize) -> i64 {
        let n = self.n as i64;
        let i = i as i64;
        if i < n / 2 {
            i
        } else {
            i - n
        }
    }

    pub fn is_nyquist(&self, i: usize) -> bool {
        i == self.n / 2
    }

    /// Wavenumber `2 pi m / L` along one axis.
    pub fn wavenumber(&self, i: usize) -> f64 {
        2.0 * PI * self.mode(i) as f64 / self.period
    }

    /// Wavenumber used by odd symbols: the unpaired Nyquist entry is zero.
    pub fn odd_wavenumber(&self, i: usize) -> f64 {
        if self.is_nyquist(i) {
            0.0
        } else {
            self.wavenumber(i)
        }
    }

    /// `(k1, k2)` at flat offset `idx`.
    pub fn k_at(&self, idx: usize) -> (f64, f64) {
        (self.wavenumber(idx / self.n), self.wavenumber(idx % self.n))
    }

    pub fn odd_k_at(&self, idx: usize) -> (f64, f64) {
        (
            self.odd_wavenumber(idx / self.n),
            self.odd_wavenumber(idx % self.n),
        )
    }

    pub fn modes_at(&self, idx: usize) -> (i64, i64) {
        (self.mode(idx / self.n), self.mode(idx % self.n))
    }

    /// Largest `<k>` on the lattice; sets the explicit stability bound.
    pub fn max_bracket_k(&self) -> f64 {
        let kmax = 2.0 * PI * (self.n / 2) as f64 / self.period;
        (1.0 + 2.0 * kmax * kmax).sqrt()
    }

    /// In-place 2-D transform. `forward` divides by `n^2` so that the
    /// result holds the amplitudes `c_m` of `f(x) = sum c_m e^{i k_m x}`.
    pub(crate) fn fft2(&self, data: &mut [Complex64], forward: bool) {
        let n = self.n;
        debug_assert_eq!(data.len(), n * n);
        let plan = if forward { &self.forward } else { &self.inverse };
        plan.process(data);
        transpose(data, n);
        plan.process(data);
        transpose(data, n);
        if forward {
            let scale = 1.0 / (n * n) as f64;
            data.iter_mut().for_each(|c| *c *= scale);
        }
    }
}

fn transpose(data: &mut [Complex64], n: usize) {
    for i in 0..n {
        for j in (i + 1)..n {
            data.swap(i * n + j, j * n + i);
        }
    }
}
