use num_complex::Complex64;

use super::field::{GaugeField, Repr, ScalarField};

/// Result of splitting a gauge field into divergence-free, curl-free and
/// constant parts.
#[derive(Debug, Clone, PartialEq)]
pub struct HelmholtzParts {
    pub df: GaugeField,
    pub cf: GaugeField,
    pub mean: [f64; 2],
}

/// Which projector to apply in [`project`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projector {
    /// `Delta^{-1} grad div`, i.e. `-(-Delta)^{-1} grad div`.
    CurlFree,
    /// `(-Delta)^{-1} curl curl`.
    DivergenceFree,
}

/// Applies a Helmholtz projector mode by mode. The `k = 0` mode is
/// dropped by both projectors. The projectors use the odd wavenumber, so on
/// the Nyquist row/column the surviving axis decides the split and a mode
/// with no surviving axis counts as divergence-free.
pub fn project(a: &GaugeField, which: Projector) -> GaugeField {
    let s = a.spectral();
    let grid = s.grid().clone();
    let zero = Complex64::new(0.0, 0.0);
    let (c1, c2) = (s.a1.values(), s.a2.values());
    let mut out1 = Vec::with_capacity(grid.len());
    let mut out2 = Vec::with_capacity(grid.len());
    for idx in 0..grid.len() {
        let (k1, k2) = grid.odd_k_at(idx);
        let ksq = k1 * k1 + k2 * k2;
        let (v1, v2) = (c1[idx], c2[idx]);
        let (cf1, cf2) = if ksq == 0.0 {
            (zero, zero)
        } else {
            let dot = v1 * k1 + v2 * k2;
            (dot * (k1 / ksq), dot * (k2 / ksq))
        };
        let (r1, r2) = match which {
            Projector::CurlFree => (cf1, cf2),
            Projector::DivergenceFree if idx == 0 => (zero, zero),
            Projector::DivergenceFree => (v1 - cf1, v2 - cf2),
        };
        out1.push(r1);
        out2.push(r2);
    }
    let build = |v| {
        ScalarField::from_values(&grid, v, Repr::Spectral)
            .expect("grid-sized buffer")
            .into_repr(Repr::Physical)
    };
    GaugeField::new(build(out1), build(out2)).real_part()
}

/// `A = A_df + A_cf + mean`.
pub fn helmholtz_decompose(a: &GaugeField) -> HelmholtzParts {
    HelmholtzParts {
        df: project(a, Projector::DivergenceFree),
        cf: project(a, Projector::CurlFree),
        mean: a.mean(),
    }
}
