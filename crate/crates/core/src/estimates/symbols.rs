use crate::error::{Error, Result};

use super::sample::WaveSign;

fn bracket(x: f64) -> f64 {
    (1.0 + x * x).sqrt()
}

fn norm(v: [f64; 2]) -> f64 {
    v[0].hypot(v[1])
}

/// Angle between two vectors in `[0, pi]`.
pub fn angle(a: [f64; 2], b: [f64; 2]) -> Result<f64> {
    if norm(a) == 0.0 || norm(b) == 0.0 {
        return Err(Error::Domain("angle with a zero vector".into()));
    }
    let cross = a[0] * b[1] - a[1] * b[0];
    let dot = a[0] * b[0] + a[1] * b[1];
    Ok(cross.abs().atan2(dot))
}

/// Both sides of an inequality, for ratio statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sides {
    pub lhs: f64,
    pub rhs: f64,
}

impl Sides {
    pub fn ratio(&self) -> f64 {
        self.lhs / self.rhs
    }
}

/// Angle bound for the resonant interaction of two half waves:
/// `angle(s1 xi1, s2 xi2)` against
/// `((<tau1 + s1|xi1|> + <tau2 + s2|xi2|>) / m)^{1/2} + (<|tau3| - |xi3|> / m)^{1/2 - eps}`
/// with `m = min(<xi1>, <xi2>)`, `xi3 = -xi1 - xi2`, `tau3 = -tau1 - tau2`.
pub fn angle_bound_check(
    xi1: [f64; 2],
    tau1: f64,
    sign1: WaveSign,
    xi2: [f64; 2],
    tau2: f64,
    sign2: WaveSign,
    eps: f64,
) -> Result<Sides> {
    let (s1, s2) = (sign1.value(), sign2.value());
    let lhs = angle([s1 * xi1[0], s1 * xi1[1]], [s2 * xi2[0], s2 * xi2[1]])?;
    let (n1, n2) = (norm(xi1), norm(xi2));
    let xi3 = [-xi1[0] - xi2[0], -xi1[1] - xi2[1]];
    let tau3 = -tau1 - tau2;
    let m = bracket(n1).min(bracket(n2));
    let first = ((bracket(tau1 + s1 * n1) + bracket(tau2 + s2 * n2)) / m).sqrt();
    let second = (bracket(tau3.abs() - norm(xi3)) / m).powf(0.5 - eps);
    Ok(Sides {
        lhs,
        rhs: first + second,
    })
}

/// `|xi_1 eta_2 - xi_2 eta_1|` against `|xi| |eta| angle(xi, eta)`.
pub fn null_symbol_check(xi: [f64; 2], eta: [f64; 2]) -> Result<Sides> {
    let theta = angle(xi, eta)?;
    Ok(Sides {
        lhs: (xi[0] * eta[1] - xi[1] * eta[0]).abs(),
        rhs: norm(xi) * norm(eta) * theta,
    })
}
