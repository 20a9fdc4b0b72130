use crate::error::{Error, Result};

/// Polynomial Higgs potential `V(r) = sum_{k>=1} c_k r^k`, so `V(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    /// `coeffs[k-1] = c_k`.
    coeffs: Vec<f64>,
    /// Sign-condition parameter for `V(r) >= -alpha^2 r`.
    pub alpha: f64,
}

impl Potential {
    pub fn new(coeffs: Vec<f64>, alpha: f64) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Parameter("potential coefficients must be finite".into()));
        }
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::Parameter(format!("alpha must be >= 0, got {alpha}")));
        }
        Ok(Self { coeffs, alpha })
    }

    pub fn zero() -> Self {
        Self {
            coeffs: Vec::new(),
            alpha: 0.0,
        }
    }

    /// `V(r) = r^2`.
    pub fn quartic() -> Self {
        Self {
            coeffs: vec![0.0, 1.0],
            alpha: 0.0,
        }
    }

    /// `V(r) = r`: a unit mass term.
    pub fn mass() -> Self {
        Self {
            coeffs: vec![1.0],
            alpha: 0.0,
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn value(&self, r: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| (acc + c) * r)
    }

    pub fn derivative(&self, r: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .fold(0.0, |acc, (k, &c)| acc * r + (k + 1) as f64 * c)
    }

    /// True when `V'` is constant, i.e. the matter equation is linear.
    pub fn is_linear(&self) -> bool {
        self.coeffs.iter().skip(1).all(|&c| c == 0.0)
    }

    pub fn eval_potential(&self, r: &[f64]) -> Result<Vec<f64>> {
        check_domain(r)?;
        Ok(r.iter().map(|&x| self.value(x)).collect())
    }

    pub fn eval_potential_prime(&self, r: &[f64]) -> Result<Vec<f64>> {
        check_domain(r)?;
        Ok(r.iter().map(|&x| self.derivative(x)).collect())
    }

    /// Smallest value of `V(r) + alpha^2 r` over `samples` uniform points in
    /// `[0, r_max]`, with the location where it is attained.
    pub fn sign_condition_margin(&self, alpha: f64, r_max: f64, samples: usize) -> (f64, f64) {
        let samples = samples.max(2);
        (0..samples)
            .map(|i| {
                let r = r_max * i as f64 / (samples - 1) as f64;
                (self.value(r) + alpha * alpha * r, r)
            })
            .fold((f64::INFINITY, 0.0), |best, cur| if cur.0 < best.0 { cur } else { best })
    }

    /// Checks `V(r) >= -alpha^2 r` by sampling `[0, r_max]` and inspecting
    /// the top-degree coefficient for the behaviour beyond `r_max`.
    pub fn check_sign_condition(&self, alpha: f64, r_max: f64, samples: usize) -> bool {
        let (margin, _) = self.sign_condition_margin(alpha, r_max, samples);
        if margin < 0.0 {
            return false;
        }
        let mut shifted = self.coeffs.clone();
        if shifted.is_empty() {
            shifted.push(0.0);
        }
        shifted[0] += alpha * alpha;
        match shifted.iter().rposition(|&c| c != 0.0) {
            None => true,
            Some(top) => shifted[top] > 0.0,
        }
    }
}

fn check_domain(r: &[f64]) -> Result<()> {
    match r.iter().find(|&&x| x < 0.0 || x.is_nan()) {
        Some(bad) => Err(Error::Domain(format!(
            "potential evaluated at negative argument {bad}"
        ))),
        None => Ok(()),
    }
}
