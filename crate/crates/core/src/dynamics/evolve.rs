use crate::diagnostics::{record, DiagnosticsRecord};
use crate::error::{BlowUp, Error, Result};
use crate::model::{constraint_residual, CshState, Potential};

use super::integrate::{lawson_rk4, rk4, DirectVars, HalfWaveVars, OdeVars, ReducedVars};
use super::rhs::Model;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formulation {
    /// `(phi, d_t phi, A)` with the full gauge law.
    Direct,
    /// `(phi, d_t phi, A_cf, mean)`; `A_df` rebuilt from the matter fields.
    Reformulated,
    /// Half-wave components with an exact propagator for `<grad>`.
    HalfWave,
}

impl Formulation {
    pub fn name(&self) -> &'static str {
        match self {
            Formulation::Direct => "direct",
            Formulation::Reformulated => "reformulated",
            Formulation::HalfWave => "halfwave",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "direct" => Some(Formulation::Direct),
            "reformulated" => Some(Formulation::Reformulated),
            "halfwave" => Some(Formulation::HalfWave),
            _ => None,
        }
    }

    /// Stability constant `c` in `dt <= c / max <k>`. RK4 is stable on the
    /// imaginary axis up to `2 sqrt 2`; the half-wave stepper integrates the
    /// dispersive part exactly and has no grid-dependent bound.
    pub fn cfl_constant(&self) -> f64 {
        match self {
            Formulation::Direct | Formulation::Reformulated => 2.8,
            Formulation::HalfWave => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchemeConfig {
    pub formulation: Formulation,
    pub dt: f64,
    pub t_end: f64,
    pub dealias: bool,
    /// Record a snapshot every this many steps.
    pub record_every: usize,
    pub gauge_coupling: bool,
    pub potential_on: bool,
}

impl SchemeConfig {
    pub fn new(formulation: Formulation, dt: f64, t_end: f64) -> Self {
        Self {
            formulation,
            dt,
            t_end,
            dealias: true,
            record_every: 1,
            gauge_coupling: true,
            potential_on: true,
        }
    }

    pub fn with_record_every(mut self, stride: usize) -> Self {
        self.record_every = stride;
        self
    }

    pub fn model(&self, potential: &Potential) -> Model {
        Model {
            potential: potential.clone(),
            gauge_coupling: self.gauge_coupling,
            potential_on: self.potential_on,
            dealias: self.dealias,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::Parameter("scheme.dt must be positive".into()));
        }
        if !(self.t_end.is_finite() && self.t_end >= 0.0) {
            return Err(Error::Parameter("scheme.t_end must be >= 0".into()));
        }
        if self.record_every < 1 {
            return Err(Error::Parameter("scheme.record_every must be >= 1".into()));
        }
        self.steps().map(|_| ())
    }

    /// Number of steps; `t_end` must be a whole multiple of `dt`.
    pub fn steps(&self) -> Result<usize> {
        let steps = (self.t_end / self.dt).round();
        if (steps * self.dt - self.t_end).abs() > 1e-9 * self.t_end.max(1.0) {
            return Err(Error::Parameter(format!(
                "scheme.t_end ({}) must be a whole multiple of scheme.dt ({})",
                self.t_end, self.dt
            )));
        }
        Ok(steps as usize)
    }

    pub fn stability_bound(&self, grid: &crate::spectral::TorusGrid) -> f64 {
        self.formulation.cfl_constant() / grid.max_bracket_k()
    }
}

/// Snapshots at a uniform stride plus the diagnostics taken at each one.
#[derive(Debug, Clone, Default)]
pub struct Trajectory {
    pub snapshots: Vec<CshState>,
    pub records: Vec<DiagnosticsRecord>,
    pub warnings: Vec<String>,
}

impl Trajectory {
    pub fn times(&self) -> Vec<f64> {
        self.snapshots.iter().map(|s| s.time()).collect()
    }

    pub fn last(&self) -> Option<&CshState> {
        self.snapshots.last()
    }
}

enum Stepper {
    Direct(DirectVars),
    Reduced(ReducedVars),
    Half(HalfWaveVars),
}

impl Stepper {
    fn new(state: &CshState, formulation: Formulation) -> Self {
        match formulation {
            Formulation::Direct => Stepper::Direct(DirectVars::from_state(state)),
            Formulation::Reformulated => Stepper::Reduced(ReducedVars::from_state(state)),
            Formulation::HalfWave => Stepper::Half(HalfWaveVars::from_state(state)),
        }
    }

    fn step(&self, dt: f64, model: &Model) -> Self {
        match self {
            Stepper::Direct(v) => Stepper::Direct(rk4(v, dt, |y| y.rate(model))),
            Stepper::Reduced(v) => Stepper::Reduced(rk4(v, dt, |y| y.rate(model))),
            Stepper::Half(v) => Stepper::Half(lawson_rk4(v, dt, |y| y.nonlinear_rate(model))),
        }
    }

    fn is_finite(&self) -> bool {
        match self {
            Stepper::Direct(v) => v.is_finite(),
            Stepper::Reduced(v) => v.is_finite(),
            Stepper::Half(v) => v.is_finite(),
        }
    }

    fn state(&self, time: f64) -> CshState {
        match self {
            Stepper::Direct(v) => v.to_state(time),
            Stepper::Reduced(v) => v.to_state(time),
            Stepper::Half(v) => v.to_state(time),
        }
    }
}

/// One RK4 step of the direct or reduced system from `state`.
pub fn step_rk4(state: &CshState, formulation: Formulation, model: &Model, dt: f64) -> Result<CshState> {
    let formulation = match formulation {
        Formulation::HalfWave => Formulation::Reformulated,
        f => f,
    };
    single_step(state, formulation, model, dt)
}

/// One integrating-factor step of the half-wave system.
pub fn step_halfwave(vars: &HalfWaveVars, model: &Model, dt: f64, time: f64) -> Result<HalfWaveVars> {
    let next = lawson_rk4(vars, dt, |y| y.nonlinear_rate(model));
    if !next.is_finite() {
        return Err(blow_up(time + dt, vars.to_state(time), Trajectory::default()));
    }
    Ok(next)
}

fn single_step(state: &CshState, formulation: Formulation, model: &Model, dt: f64) -> Result<CshState> {
    let next = Stepper::new(state, formulation).step(dt, model);
    let time = state.time() + dt;
    if !next.is_finite() {
        return Err(blow_up(time, state.clone(), Trajectory::default()));
    }
    Ok(next.state(time))
}

fn blow_up(time: f64, last_good: CshState, partial: Trajectory) -> Error {
    Error::BlowUp(Box::new(BlowUp {
        time,
        last_good,
        partial,
    }))
}

/// Residual above which the initial data are flagged as incompatible.
const COMPATIBILITY_WARN: f64 = 1e-10;

pub fn evolve(initial: &CshState, scheme: &SchemeConfig, potential: &Potential) -> Result<Trajectory> {
    evolve_observed(initial, scheme, potential, None)
}

/// As [`evolve`], additionally handing every intermediate state (including
/// the initial one) to `observer`.
pub fn evolve_observed(
    initial: &CshState,
    scheme: &SchemeConfig,
    potential: &Potential,
    mut observer: Option<&mut dyn FnMut(&CshState)>,
) -> Result<Trajectory> {
    scheme.validate()?;
    let bound = scheme.stability_bound(initial.grid());
    if scheme.dt > bound {
        return Err(Error::Unstable {
            dt: scheme.dt,
            bound,
        });
    }
    let steps = scheme.steps()?;
    let model = scheme.model(potential);
    let t0 = initial.time();

    let mut traj = Trajectory::default();
    if scheme.gauge_coupling {
        let (_, residual) = constraint_residual(initial);
        if residual > COMPATIBILITY_WARN {
            traj.warnings.push(format!(
                "initial data violate the Gauss constraint (residual {residual:.3e})"
            ));
        }
    }

    let mut current = Stepper::new(initial, scheme.formulation);
    let first = current.state(t0);
    if let Some(obs) = observer.as_mut() {
        obs(&first);
    }
    traj.records.push(record(&first, potential));
    traj.snapshots.push(first);

    for k in 1..=steps {
        let time = t0 + k as f64 * scheme.dt;
        let next = current.step(scheme.dt, &model);
        if !next.is_finite() {
            let last_good = current.state(time - scheme.dt);
            return Err(blow_up(time, last_good, traj));
        }
        current = next;
        let is_record = k % scheme.record_every == 0;
        if observer.is_some() || is_record {
            let state = current.state(time);
            if let Some(obs) = observer.as_mut() {
                obs(&state);
            }
            if is_record {
                traj.records.push(record(&state, potential));
                traj.snapshots.push(state);
            }
        }
    }
    Ok(traj)
}
