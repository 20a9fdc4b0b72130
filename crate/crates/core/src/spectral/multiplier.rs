use num_complex::Complex64;

use super::field::{GaugeField, ScalarField};
use super::grid::TorusGrid;

/// Fourier multipliers evaluated on the wavenumber lattice.
///
/// Odd symbols (`Deriv`, `InvLaplacianDeriv`) and the inverse Laplacian use
/// the odd wavenumber (Nyquist entry zeroed); radial symbols use the true
/// lattice. Inverse symbols are zero at `k = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Symbol {
    /// `d/dx_j`, symbol `i k_j`. Axis index 0 or 1.
    Deriv(usize),
    /// `|grad|^alpha`, symbol `|k|^alpha`.
    AbsGrad(f64),
    /// `<grad>^alpha`, symbol `(1 + |k|^2)^(alpha/2)`.
    Bracket(f64),
    /// `Delta^{-1} d/dx_j`, symbol `-i k_j / |k|^2`.
    InvLaplacianDeriv(usize),
    /// `(-Delta)^{-1}`, symbol `1 / |k|^2`.
    NegInvLaplacian,
    /// `Delta`, symbol `-|k|^2`.
    Laplacian,
}

impl Symbol {
    pub fn eval(&self, grid: &TorusGrid, idx: usize) -> Complex64 {
        let (k1, k2) = grid.k_at(idx);
        let (o1, o2) = grid.odd_k_at(idx);
        let ksq = k1 * k1 + k2 * k2;
        let osq = o1 * o1 + o2 * o2;
        let axis = |j: usize| if j == 0 { o1 } else { o2 };
        match *self {
            Symbol::Deriv(j) => Complex64::new(0.0, axis(j)),
            Symbol::AbsGrad(alpha) => {
                if ksq == 0.0 {
                    Complex64::new(if alpha == 0.0 { 1.0 } else { 0.0 }, 0.0)
                } else {
                    Complex64::new(ksq.powf(alpha / 2.0), 0.0)
                }
            }
            Symbol::Bracket(alpha) => Complex64::new((1.0 + ksq).powf(alpha / 2.0), 0.0),
            Symbol::InvLaplacianDeriv(j) => {
                if osq == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(0.0, -axis(j) / osq)
                }
            }
            Symbol::NegInvLaplacian => {
                if osq == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(1.0 / osq, 0.0)
                }
            }
            Symbol::Laplacian => Complex64::new(-ksq, 0.0),
        }
    }
}

/// Multiplies the spectrum of `f` by `symbol`; the result keeps the
/// representation of the input.
pub fn apply_multiplier(f: &ScalarField, symbol: Symbol) -> ScalarField {
    let repr = f.repr();
    let mut s = f.spectral();
    let grid = s.grid().clone();
    for (idx, c) in s.values_mut().iter_mut().enumerate() {
        *c *= symbol.eval(&grid, idx);
    }
    s.into_repr(repr)
}

/// Two-thirds rule: zero every mode with `max(|m1|, |m2|) > n/3`.
pub fn dealias(f: &ScalarField) -> ScalarField {
    let repr = f.repr();
    let mut s = f.spectral();
    let grid = s.grid().clone();
    let n = grid.n() as i64;
    for (idx, c) in s.values_mut().iter_mut().enumerate() {
        let (m1, m2) = grid.modes_at(idx);
        if 3 * m1.abs().max(m2.abs()) > n {
            *c = Complex64::new(0.0, 0.0);
        }
    }
    s.into_repr(repr)
}

pub fn dealias_gauge(a: &GaugeField) -> GaugeField {
    GaugeField::new(dealias(&a.a1), dealias(&a.a2))
}

pub fn gradient(f: &ScalarField) -> GaugeField {
    GaugeField::new(
        apply_multiplier(f, Symbol::Deriv(0)),
        apply_multiplier(f, Symbol::Deriv(1)),
    )
}

pub fn divergence(a: &GaugeField) -> ScalarField {
    apply_multiplier(&a.a1, Symbol::Deriv(0)).add(&apply_multiplier(&a.a2, Symbol::Deriv(1)))
}

/// Scalar curl `d1 A2 - d2 A1`.
pub fn curl(a: &GaugeField) -> ScalarField {
    apply_multiplier(&a.a2, Symbol::Deriv(0)).sub(&apply_multiplier(&a.a1, Symbol::Deriv(1)))
}

/// Sobolev norm `|| <k>^s c ||` (or `|| |k|^s c ||` skipping `k = 0`),
/// scaled so that `s = 0` reproduces the quadrature `L^2` norm.
pub fn sobolev_norm(f: &ScalarField, s: f64, homogeneous: bool) -> f64 {
    let spec = f.spectral();
    let grid = spec.grid();
    let mut sum = 0.0;
    for (idx, c) in spec.values().iter().enumerate() {
        let (k1, k2) = grid.k_at(idx);
        let ksq = k1 * k1 + k2 * k2;
        let w = if homogeneous {
            if ksq == 0.0 {
                continue;
            }
            ksq.powf(s)
        } else {
            (1.0 + ksq).powf(s)
        };
        sum += w * c.norm_sqr();
    }
    grid.period() * sum.sqrt()
}
