//! Scalar observables along trajectories and the a priori bound checks.

use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::model::{constraint_residual, energy_parts, i_functional, CshState, Potential};
use crate::spectral::{apply_multiplier, sobolev_norm, GaugeField, Symbol};

/// Default regularity offset in `|grad|^eps A in H^{1/2}`.
pub const DEFAULT_EPSILON: f64 = 0.1;

/// Relative slack allowed before a proved inequality counts as violated.
pub const BOUND_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub energy: f64,
    pub constraint_l2: f64,
    pub i_functional: f64,
    pub phi_l2: f64,
    pub phi_h1: f64,
    pub phit_l2: f64,
    /// `|| |grad|^eps A_cf ||_{H^{1/2}}`.
    pub acf_norm: f64,
    /// `|| |grad|^eps A_df ||_{H^{1/2}}`.
    pub adf_norm: f64,
    /// `int V(|phi|^2)`; not persisted in the CSV.
    pub potential_energy: Option<f64>,
}

impl DiagnosticsRecord {
    pub fn is_finite(&self) -> bool {
        [
            self.t,
            self.energy,
            self.constraint_l2,
            self.i_functional,
            self.phi_l2,
            self.phi_h1,
            self.phit_l2,
            self.acf_norm,
            self.adf_norm,
        ]
        .iter()
        .all(|v| v.is_finite())
    }
}

/// `(sum_j || |grad|^eps a_j ||_{H^{1/2}}^2)^{1/2}`.
pub fn gauge_norm(a: &GaugeField, epsilon: f64) -> f64 {
    (0..2)
        .map(|j| {
            let f = apply_multiplier(a.component(j), Symbol::AbsGrad(epsilon));
            sobolev_norm(&f, 0.5, false).powi(2)
        })
        .sum::<f64>()
        .sqrt()
}

pub fn record(state: &CshState, v: &Potential) -> DiagnosticsRecord {
    record_with_epsilon(state, v, DEFAULT_EPSILON)
}

pub fn record_with_epsilon(state: &CshState, v: &Potential, epsilon: f64) -> DiagnosticsRecord {
    let parts = energy_parts(state, v);
    DiagnosticsRecord {
        t: state.time(),
        energy: parts.total(),
        constraint_l2: constraint_residual(state).1,
        i_functional: i_functional(state),
        phi_l2: state.phi().l2_norm(),
        phi_h1: sobolev_norm(state.phi(), 1.0, false),
        phit_l2: state.phi_t().l2_norm(),
        acf_norm: gauge_norm(state.a_cf(), epsilon),
        adf_norm: gauge_norm(state.a_df(), epsilon),
        potential_energy: Some(parts.potential),
    }
}

/// Outcome of an a priori bound check. `min_slack` is the smallest value of
/// `rhs - lhs` seen over the series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCheck {
    pub holds: bool,
    pub min_slack: f64,
    /// Time at which `min_slack` occurred.
    pub worst_t: f64,
}

fn check_series(
    series: &[DiagnosticsRecord],
    alpha: f64,
    mut sides: impl FnMut(&DiagnosticsRecord, &DiagnosticsRecord) -> Result<(f64, f64)>,
) -> Result<BoundCheck> {
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::Parameter(format!("alpha must be positive, got {alpha}")));
    }
    let Some(first) = series.first() else {
        return Err(Error::Usage("empty diagnostics series".into()));
    };
    let mut out = BoundCheck {
        holds: true,
        min_slack: f64::INFINITY,
        worst_t: first.t,
    };
    for r in series {
        let (lhs, rhs) = sides(first, r)?;
        let slack = rhs - lhs;
        if slack < out.min_slack {
            out.min_slack = slack;
            out.worst_t = r.t;
        }
        if slack < -BOUND_SLACK * rhs.abs().max(1.0) {
            out.holds = false;
        }
    }
    Ok(out)
}

/// `||phi(t)||^2 <= e^{2 alpha |t|} (||phi(0)||^2 + |t| alpha^{-1} |E(0)|)`,
/// with `t` measured from the first record.
pub fn gronwall_check(series: &[DiagnosticsRecord], alpha: f64) -> Result<BoundCheck> {
    check_series(series, alpha, |first, r| {
        let t = (r.t - first.t).abs();
        let rhs = (2.0 * alpha * t).exp() * (first.phi_l2.powi(2) + t / alpha * first.energy.abs());
        Ok((r.phi_l2.powi(2), rhs))
    })
}

/// `sum_mu ||D_mu phi(t)||^2 = E(t) - int V <= |E(0)| + alpha^2 ||phi(t)||^2`.
pub fn energy_bound_check(series: &[DiagnosticsRecord], alpha: f64) -> Result<BoundCheck> {
    check_series(series, alpha, |first, r| {
        let pot = r.potential_energy.ok_or_else(|| {
            Error::Usage("energy_bound_check needs records carrying the potential energy".into())
        })?;
        Ok((r.energy - pot, first.energy.abs() + alpha * alpha * r.phi_l2.powi(2)))
    })
}

/// Differences between two trajectories at one record time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldDifference {
    pub t: f64,
    pub phi_sup: f64,
    pub phi_l2: f64,
    pub phi_t_sup: f64,
    pub phi_t_l2: f64,
    pub a_sup: f64,
    pub a_l2: f64,
    /// `sup ||phi_a| - |phi_b||`.
    pub modulus_sup: f64,
}

impl FieldDifference {
    /// Largest sup-norm difference over `phi`, `d_t phi` and `A`.
    pub fn max_sup(&self) -> f64 {
        self.phi_sup.max(self.phi_t_sup).max(self.a_sup)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ComparisonReport {
    pub rows: Vec<FieldDifference>,
}

impl ComparisonReport {
    pub fn max_sup(&self) -> f64 {
        self.rows.iter().map(|r| r.max_sup()).fold(0.0, f64::max)
    }
}

pub fn compare_states(a: &CshState, b: &CshState) -> Result<FieldDifference> {
    if a.grid() != b.grid() {
        return Err(Error::Usage("states live on different grids".into()));
    }
    let dphi = a.phi().sub(b.phi());
    let dphi_t = a.phi_t().sub(b.phi_t());
    let da = a.gauge_field().sub(&b.gauge_field());
    let modulus_sup = a
        .phi()
        .values()
        .iter()
        .zip(b.phi().values())
        .map(|(x, y)| (x.norm() - y.norm()).abs())
        .fold(0.0, f64::max);
    Ok(FieldDifference {
        t: a.time(),
        phi_sup: dphi.sup_norm(),
        phi_l2: dphi.l2_norm(),
        phi_t_sup: dphi_t.sup_norm(),
        phi_t_l2: dphi_t.l2_norm(),
        a_sup: da.sup_norm(),
        a_l2: da.l2_norm(),
        modulus_sup,
    })
}

pub fn compare_trajectories(a: &Trajectory, b: &Trajectory) -> Result<ComparisonReport> {
    if a.snapshots.len() != b.snapshots.len() {
        return Err(Error::Usage(format!(
            "trajectories have {} and {} snapshots",
            a.snapshots.len(),
            b.snapshots.len()
        )));
    }
    let rows = a
        .snapshots
        .iter()
        .zip(&b.snapshots)
        .map(|(x, y)| {
            if (x.time() - y.time()).abs() > 1e-9 * x.time().abs().max(1.0) {
                return Err(Error::Usage(format!(
                    "record times differ: {} vs {}",
                    x.time(),
                    y.time()
                )));
            }
            compare_states(x, y)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComparisonReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{evolve, Formulation, SchemeConfig};
    use crate::gauge::{apply_gauge, GaugeFunction};
    use crate::model::data::plane_wave;
    use crate::model::{energy, make_compatible_data, CurlPolicy};
    use crate::spectral::{ScalarField, TorusGrid};
    use num_complex::Complex64;

    fn linear_mode(n: usize) -> (CshState, SchemeConfig) {
        let grid = TorusGrid::standard(n).unwrap();
        let phi = plane_wave(&grid, [1, 0], 1.0);
        let omega = 2f64.sqrt();
        let phi_t = phi.scale_complex(Complex64::new(0.0, -omega));
        let state = CshState::from_gauge(0.0, phi, phi_t, &GaugeField::zeros(&grid));
        let mut scheme = SchemeConfig::new(Formulation::Reformulated, 1e-2, 0.2);
        scheme.gauge_coupling = false;
        (state, scheme)
    }

    #[test]
    fn zero_state_records_zero() {
        let grid = TorusGrid::standard(8).unwrap();
        let r = record(&CshState::zero(&grid), &Potential::quartic());
        for v in [r.energy, r.constraint_l2, r.i_functional, r.phi_l2, r.phi_h1, r.phit_l2, r.acf_norm, r.adf_norm] {
            assert_eq!(v, 0.0);
        }
    }

    #[test]
    fn record_aggregates_individual_operations() {
        let grid = TorusGrid::standard(16).unwrap();
        let phi = ScalarField::from_fn(&grid, |x, y| Complex64::new(x.cos(), (2.0 * y).sin()) * 0.3);
        let phi_t = ScalarField::from_fn(&grid, |x, y| Complex64::new((x + y).sin(), 0.0) * 0.1);
        let phi_t = crate::model::neutralize_charge(&phi, &phi_t);
        let a = GaugeField::from_real_fns(&grid, |x, _| 0.2 * x.sin(), |_, y| 0.1 * y.cos());
        let s = make_compatible_data(&phi, &phi_t, &a, [0.0, 0.0], CurlPolicy::Project).unwrap();
        let v = Potential::quartic();
        let r = record(&s, &v);
        assert_eq!(r.energy, energy(&s, &v));
        assert_eq!(r.i_functional, i_functional(&s));
        assert_eq!(r.phi_l2, s.phi().l2_norm());
        assert_eq!(r.constraint_l2, constraint_residual(&s).1);
        assert!(r.is_finite());
    }

    #[test]
    fn linear_mode_energy_is_constant() {
        let (s, scheme) = linear_mode(16);
        let traj = evolve(&s, &scheme, &Potential::mass()).unwrap();
        let e0 = traj.records[0].energy;
        // |phi|^2 = 1: E = (2 + 1 + 1) * area.
        let area = s.grid().area();
        assert!((e0 - 4.0 * area).abs() < 1e-10 * area);
        for r in &traj.records {
            assert!((r.energy - e0).abs() < 1e-8 * e0);
        }
    }

    #[test]
    fn bounds_hold_on_zero_and_linear() {
        let grid = TorusGrid::standard(8).unwrap();
        let zero = vec![record(&CshState::zero(&grid), &Potential::zero())];
        assert!(gronwall_check(&zero, 1.0).unwrap().holds);
        assert!(energy_bound_check(&zero, 1.0).unwrap().holds);

        let (s, scheme) = linear_mode(16);
        let traj = evolve(&s, &scheme, &Potential::mass()).unwrap();
        assert!(gronwall_check(&traj.records, 1.0).unwrap().holds);
        assert!(energy_bound_check(&traj.records, 1.0).unwrap().holds);
    }

    #[test]
    fn energy_bound_is_tight_without_potential() {
        let (s, _) = linear_mode(16);
        let r = record(&s, &Potential::zero());
        let c = energy_bound_check(std::slice::from_ref(&r), 1e-8).unwrap();
        assert!(c.holds);
        assert!(c.min_slack.abs() < 1e-9 * r.energy);
    }

    #[test]
    fn nonpositive_alpha_rejected() {
        let grid = TorusGrid::standard(8).unwrap();
        let s = vec![record(&CshState::zero(&grid), &Potential::zero())];
        assert!(matches!(gronwall_check(&s, 0.0), Err(Error::Parameter(_))));
        assert!(matches!(energy_bound_check(&s, -1.0), Err(Error::Parameter(_))));
    }

    #[test]
    fn missing_potential_energy_is_an_error() {
        let grid = TorusGrid::standard(8).unwrap();
        let mut r = record(&CshState::zero(&grid), &Potential::zero());
        r.potential_energy = None;
        assert!(energy_bound_check(&[r], 1.0).is_err());
    }

    #[test]
    fn comparison_of_gauge_transform() {
        let (s, scheme) = linear_mode(16);
        let traj = evolve(&s, &scheme, &Potential::mass()).unwrap();
        let same = compare_trajectories(&traj, &traj).unwrap();
        assert_eq!(same.max_sup(), 0.0);

        let g = GaugeFunction::new(&ScalarField::from_real_fn(s.grid(), |x, y| x.sin() + y.cos()));
        let moved = Trajectory {
            snapshots: traj.snapshots.iter().map(|st| apply_gauge(st, &g)).collect(),
            ..traj.clone()
        };
        let diff = compare_trajectories(&traj, &moved).unwrap();
        for row in &diff.rows {
            assert!(row.phi_sup > 0.1);
            assert!(row.modulus_sup < 1e-14);
        }
    }

    #[test]
    fn comparison_rejects_mismatched_grids() {
        let a = CshState::zero(&TorusGrid::standard(8).unwrap());
        let b = CshState::zero(&TorusGrid::standard(16).unwrap());
        assert!(matches!(compare_states(&a, &b), Err(Error::Usage(_))));
    }
}
