use crate::error::{Error, Result};
use crate::model::covariant_sobolev_ratio;
use crate::spectral::GaugeField;

use super::norms::{mixed_norm, xsb_norm, NormFamily, NormSpec};
use super::sample::SpaceTimeSample;

/// The Strichartz-type family `||u||_{L^q_x L^r_t} <~ ||u||_{X^{s,b}_{|tau|=|xi|}}`
/// and the covariant Sobolev inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inequality {
    /// `L^6_{xt}` by `X^{1/2, 1/2+}`.
    Str,
    /// `L^6_x L^2_t` by `X^{1/6, 1/2+}`.
    T,
    /// `L^2_{xt}` by `X^{0,0}` (an identity).
    I0,
    /// `L^6_x L^{2+}_t` by `X^{1/6+, 1/2+}`.
    I1,
    /// `L^4_x L^4_t` by `X^{3/8, 3/8+}`.
    I2,
    /// `L^4_x L^{2+}_t` by `X^{1/8+, 3/8+}`.
    I3,
    /// `L^{4+}_x L^{2+}_t` by `X^{1/8+, 3/8+}`.
    I4,
    /// `L^3_x L^2_t` by `X^{1/12, 1/4+}`.
    I5,
    /// `L^{2/(1-e)}_x L^2_t` by `X^{e/4, 3e/4+}`, with `e` the same offset.
    I6,
    /// `sup_t ||u||_{L^4} / (||u||_{L^2}^{1/2} ||D u||_{L^2}^{1/2})` with `A = 0`.
    CovariantSobolev,
}

impl Inequality {
    pub const ALL: [Inequality; 10] = [
        Inequality::Str,
        Inequality::T,
        Inequality::I0,
        Inequality::I1,
        Inequality::I2,
        Inequality::I3,
        Inequality::I4,
        Inequality::I5,
        Inequality::I6,
        Inequality::CovariantSobolev,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Inequality::Str => "Str",
            Inequality::T => "T",
            Inequality::I0 => "I0",
            Inequality::I1 => "I1",
            Inequality::I2 => "I2",
            Inequality::I3 => "I3",
            Inequality::I4 => "I4",
            Inequality::I5 => "I5",
            Inequality::I6 => "I6",
            Inequality::CovariantSobolev => "covariant-sobolev",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|i| i.name().eq_ignore_ascii_case(s))
    }

    /// `(q, r)` of the space-time Lebesgue side and `(s, b)` of the
    /// `X^{s,b}_{|tau|=|xi|}` side, with `a+ = a + eps`.
    pub fn exponents(&self, eps: f64) -> Option<([f64; 2], [f64; 2])> {
        let half = 0.5;
        Some(match self {
            Inequality::Str => ([6.0, 6.0], [half, half + eps]),
            Inequality::T => ([6.0, 2.0], [1.0 / 6.0, half + eps]),
            Inequality::I0 => ([2.0, 2.0], [0.0, 0.0]),
            Inequality::I1 => ([6.0, 2.0 + eps], [1.0 / 6.0 + eps, half + eps]),
            Inequality::I2 => ([4.0, 4.0], [3.0 / 8.0, 3.0 / 8.0 + eps]),
            Inequality::I3 => ([4.0, 2.0 + eps], [1.0 / 8.0 + eps, 3.0 / 8.0 + eps]),
            Inequality::I4 => ([4.0 + eps, 2.0 + eps], [1.0 / 8.0 + eps, 3.0 / 8.0 + eps]),
            Inequality::I5 => ([3.0, 2.0], [1.0 / 12.0, 0.25 + eps]),
            Inequality::I6 => ([2.0 / (1.0 - eps), 2.0], [eps / 4.0, 0.75 * eps + eps]),
            Inequality::CovariantSobolev => return None,
        })
    }
}

/// Left side over right side of `inequality` on `u`. Both sides are
/// evaluated on the tapered sample.
pub fn estimate_ratio(u: &SpaceTimeSample, inequality: Inequality, eps: f64) -> Result<f64> {
    let Some(([q, r], [s, b])) = inequality.exponents(eps) else {
        let zero = GaugeField::zeros(u.grid());
        return u
            .slices()
            .iter()
            .map(|f| covariant_sobolev_ratio(f, &zero))
            .try_fold(0.0, |m, r| r.map(|r| f64::max(m, r)));
    };
    let lhs = mixed_norm(&u.windowed(), q, r)?;
    let rhs = xsb_norm(u, &NormSpec::xsb(NormFamily::XWave, s, b))?;
    if rhs == 0.0 {
        return Err(Error::Degenerate(format!(
            "{} denominator vanishes",
            inequality.name()
        )));
    }
    Ok(lhs / rhs)
}
