use num_complex::Complex64;

use super::grid::TorusGrid;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Repr {
    Physical,
    Spectral,
}

/// Complex samples (physical) or Fourier amplitudes (spectral) on a torus grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: TorusGrid,
    values: Vec<Complex64>,
    repr: Repr,
}

impl ScalarField {
    pub fn zeros(grid: &TorusGrid) -> Self {
        Self {
            grid: grid.clone(),
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
            repr: Repr::Physical,
        }
    }

    pub fn from_values(grid: &TorusGrid, values: Vec<Complex64>, repr: Repr) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Usage(format!(
                "expected {} values, got {}",
                grid.len(),
                values.len()
            )));
        }
        Ok(Self {
            grid: grid.clone(),
            values,
            repr,
        })
    }

    /// Samples `f(x1, x2)` at the grid points.
    pub fn from_fn(grid: &TorusGrid, f: impl Fn(f64, f64) -> Complex64) -> Self {
        let n = grid.n();
        let values = (0..grid.len())
            .map(|idx| f(grid.coordinate(idx / n), grid.coordinate(idx % n)))
            .collect();
        Self {
            grid: grid.clone(),
            values,
            repr: Repr::Physical,
        }
    }

    pub fn from_real_fn(grid: &TorusGrid, f: impl Fn(f64, f64) -> f64) -> Self {
        Self::from_fn(grid, |x1, x2| Complex64::new(f(x1, x2), 0.0))
    }

    pub fn constant(grid: &TorusGrid, c: Complex64) -> Self {
        Self {
            grid: grid.clone(),
            values: vec![c; grid.len()],
            repr: Repr::Physical,
        }
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn repr(&self) -> Repr {
        self.repr
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Physical samples to Fourier amplitudes.
    pub fn to_spectral(mut self) -> Result<Self> {
        if self.repr != Repr::Physical {
            return Err(Error::Usage(
                "to_spectral expects a physical-space field".into(),
            ));
        }
        self.grid.fft2(&mut self.values, true);
        self.repr = Repr::Spectral;
        Ok(self)
    }

    pub fn from_spectral(mut self) -> Result<Self> {
        if self.repr != Repr::Spectral {
            return Err(Error::Usage(
                "from_spectral expects a spectral-space field".into(),
            ));
        }
        self.grid.fft2(&mut self.values, false);
        self.repr = Repr::Physical;
        Ok(self)
    }

    /// Converts to the requested representation, whatever the current one.
    pub fn into_repr(self, repr: Repr) -> Self {
        match (self.repr, repr) {
            (Repr::Physical, Repr::Spectral) => self.to_spectral().expect("checked repr"),
            (Repr::Spectral, Repr::Physical) => self.from_spectral().expect("checked repr"),
            _ => self,
        }
    }

    pub fn spectral(&self) -> Self {
        self.clone().into_repr(Repr::Spectral)
    }

    pub fn physical(&self) -> Self {
        self.clone().into_repr(Repr::Physical)
    }

    fn same_layout(&self, other: &Self) {
        assert_eq!(self.grid, other.grid, "fields live on different grids");
        assert_eq!(self.repr, other.repr, "fields in different representations");
    }

    pub fn zip_map(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        self.same_layout(other);
        Self {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            repr: self.repr,
        }
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|&a| f(a)).collect(),
            repr: self.repr,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_map(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_map(other, |a, b| a - b)
    }

    /// Pointwise product; both operands must be physical.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.repr, Repr::Physical, "pointwise product needs physical fields");
        self.zip_map(other, |a, b| a * b)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|a| a * s)
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        self.map(|a| a * s)
    }

    /// `self += a * x`
    pub fn axpy(&mut self, a: f64, x: &Self) {
        self.same_layout(x);
        for (y, &xv) in self.values.iter_mut().zip(&x.values) {
            *y += xv * a;
        }
    }

    pub fn conj(&self) -> Self {
        assert_eq!(self.repr, Repr::Physical);
        self.map(|a| a.conj())
    }

    /// Drops imaginary parts (physical fields only).
    pub fn real_part(&self) -> Self {
        assert_eq!(self.repr, Repr::Physical);
        self.map(|a| Complex64::new(a.re, 0.0))
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Largest imaginary part of a physical field.
    pub fn max_imag(&self) -> f64 {
        self.physical()
            .values
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.im.abs()))
    }

    /// Largest violation of `c(-m) = conj(c(m))` among paired modes.
    pub fn hermitian_defect(&self) -> f64 {
        let s = self.spectral();
        let n = self.grid.n();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let (ni, nj) = ((n - i) % n, (n - j) % n);
                let d = (s.values[i * n + j] - s.values[ni * n + nj].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Trapezoid-rule integral over the torus.
    pub fn integral(&self) -> Complex64 {
        let p = self.physical();
        p.values.iter().sum::<Complex64>() * self.grid.cell_area()
    }

    pub fn mean(&self) -> Complex64 {
        match self.repr {
            Repr::Spectral => self.values[0],
            Repr::Physical => self.values.iter().sum::<Complex64>() / self.grid.len() as f64,
        }
    }

    /// Quadrature `L^p` norm; `p = inf` gives the sup norm.
    pub fn lp_norm(&self, p: f64) -> f64 {
        let phys = self.physical();
        if p.is_infinite() {
            return phys.values.iter().fold(0.0_f64, |m, c| m.max(c.norm()));
        }
        let sum: f64 = phys.values.iter().map(|c| c.norm().powf(p)).sum();
        (sum * self.grid.cell_area()).powf(1.0 / p)
    }

    pub fn l2_norm(&self) -> f64 {
        match self.repr {
            Repr::Physical => {
                let sum: f64 = self.values.iter().map(|c| c.norm_sqr()).sum();
                (sum * self.grid.cell_area()).sqrt()
            }
            Repr::Spectral => {
                let sum: f64 = self.values.iter().map(|c| c.norm_sqr()).sum();
                self.grid.period() * sum.sqrt()
            }
        }
    }

    pub fn sup_norm(&self) -> f64 {
        self.lp_norm(f64::INFINITY)
    }

    /// Quadrature `<self, other> = int conj(self) other dx`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let (a, b) = (self.physical(), other.physical());
        a.values
            .iter()
            .zip(&b.values)
            .map(|(x, y)| x.conj() * y)
            .sum::<Complex64>()
            * self.grid.cell_area()
    }
}

/// Spatial gauge potential `(A1, A2)`, both components real-valued.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeField {
    pub a1: ScalarField,
    pub a2: ScalarField,
}

impl GaugeField {
    pub fn new(a1: ScalarField, a2: ScalarField) -> Self {
        Self { a1, a2 }
    }

    pub fn zeros(grid: &TorusGrid) -> Self {
        Self::new(ScalarField::zeros(grid), ScalarField::zeros(grid))
    }

    pub fn from_real_fns(
        grid: &TorusGrid,
        f1: impl Fn(f64, f64) -> f64,
        f2: impl Fn(f64, f64) -> f64,
    ) -> Self {
        Self::new(
            ScalarField::from_real_fn(grid, f1),
            ScalarField::from_real_fn(grid, f2),
        )
    }

    pub fn constant(grid: &TorusGrid, c: [f64; 2]) -> Self {
        Self::from_real_fns(grid, |_, _| c[0], |_, _| c[1])
    }

    pub fn grid(&self) -> &TorusGrid {
        self.a1.grid()
    }

    pub fn component(&self, j: usize) -> &ScalarField {
        match j {
            0 => &self.a1,
            1 => &self.a2,
            _ => panic!("gauge component index {j} out of range"),
        }
    }

    pub fn physical(&self) -> Self {
        Self::new(self.a1.physical(), self.a2.physical())
    }

    pub fn spectral(&self) -> Self {
        Self::new(self.a1.spectral(), self.a2.spectral())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.a1.add(&other.a1), self.a2.add(&other.a2))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.a1.sub(&other.a1), self.a2.sub(&other.a2))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.a1.scale(s), self.a2.scale(s))
    }

    pub fn axpy(&mut self, a: f64, x: &Self) {
        self.a1.axpy(a, &x.a1);
        self.a2.axpy(a, &x.a2);
    }

    pub fn add_constant(&self, c: [f64; 2]) -> Self {
        let p = self.physical();
        Self::new(
            p.a1.map(|v| v + c[0]),
            p.a2.map(|v| v + c[1]),
        )
    }

    /// Spatial mean of each component.
    pub fn mean(&self) -> [f64; 2] {
        [self.a1.mean().re, self.a2.mean().re]
    }

    pub fn l2_norm(&self) -> f64 {
        self.a1.l2_norm().hypot(self.a2.l2_norm())
    }

    pub fn sup_norm(&self) -> f64 {
        self.a1.sup_norm().max(self.a2.sup_norm())
    }

    pub fn is_finite(&self) -> bool {
        self.a1.is_finite() && self.a2.is_finite()
    }

    /// Componentwise `L^2` inner product.
    pub fn inner(&self, other: &Self) -> f64 {
        self.a1.inner(&other.a1).re + self.a2.inner(&other.a2).re
    }

    /// Clears imaginary round-off left by spectral round trips.
    pub fn real_part(&self) -> Self {
        let p = self.physical();
        Self::new(p.a1.real_part(), p.a2.real_part())
    }
}
