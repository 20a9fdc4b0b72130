//! Run orchestration behind the CLI subcommands.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diagnostics::{
    compare_states, energy_bound_check, gronwall_check, record_with_epsilon, BoundCheck,
    DiagnosticsRecord,
};
use crate::dynamics::{evolve, Trajectory};
use crate::error::{Error, Result};
use crate::estimates::{estimate_ratio, free_wave_sample, Band, Dispersion, Inequality, WaveSign, Window};
use crate::gauge::{apply_gauge, coulomb_chi, GaugeFunction};
use crate::model::data::{
    gaussian_bump, plane_wave, random_band, random_curl_free, with_h1_norm,
};
use crate::model::{
    constraint_residual, energy, i_functional, make_compatible_data, neutralize_charge, CshState,
    CurlPolicy, Potential,
};
use crate::spectral::{GaugeField, ScalarField};

use super::config::{serialize_config, InitialSpec, RunConfig, SnapshotPolicy};
use super::csv::write_diagnostics;
use super::snapshot::{read_snapshot, write_snapshot};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_BLOW_UP: i32 = 2;

/// Exit status for the outcome of a subcommand.
pub fn exit_code<T>(outcome: &Result<T>) -> i32 {
    match outcome {
        Ok(_) => EXIT_OK,
        Err(Error::BlowUp(_)) => EXIT_BLOW_UP,
        Err(_) => EXIT_ERROR,
    }
}

/// Frequency of the free plane wave `amplitude e^{i k.x}` when the gauge
/// sector is off: `omega^2 = |k|^2 + V'(amplitude^2)`.
fn plane_wave_frequency(config: &RunConfig, mode: [i64; 2], amplitude: f64) -> Result<f64> {
    let scale = 2.0 * std::f64::consts::PI / config.grid.period;
    let k2 = scale * scale * (mode[0] * mode[0] + mode[1] * mode[1]) as f64;
    let mass = if config.scheme.potential_on {
        config.potential_model()?.derivative(amplitude * amplitude)
    } else {
        0.0
    };
    let omega2 = k2 + mass;
    if omega2 < 0.0 {
        return Err(Error::Parameter(format!(
            "plane wave mode {mode:?} is unstable (omega^2 = {omega2})"
        )));
    }
    Ok(omega2.sqrt())
}

/// Initial state described by `config.initial`, made compatible with the
/// Gauss constraint.
pub fn build_initial(config: &RunConfig) -> Result<CshState> {
    let grid = config.torus()?;
    let zero_a = GaugeField::zeros(&grid);
    match &config.initial {
        InitialSpec::Zero => Ok(CshState::zero(&grid)),
        InitialSpec::PlaneWave { mode, amplitude } => {
            let omega = plane_wave_frequency(config, *mode, *amplitude)?;
            let phi = plane_wave(&grid, *mode, *amplitude);
            let phi_t = phi.scale_complex(Complex64::new(0.0, -omega));
            if config.scheme.gauge_coupling {
                make_compatible_data(&phi, &phi_t, &zero_a, [0.0, 0.0], CurlPolicy::Reject)
            } else {
                Ok(CshState::from_gauge(0.0, phi, phi_t, &zero_a))
            }
        }
        InitialSpec::GaussianBump {
            center,
            width,
            amplitude,
            a_mean,
        } => {
            let phi = gaussian_bump(&grid, *center, *width, *amplitude);
            let phi_t = ScalarField::zeros(&grid);
            make_compatible_data(&phi, &phi_t, &zero_a, *a_mean, CurlPolicy::Reject)
        }
        InitialSpec::RandomBand {
            seed,
            k_max,
            phi_h1,
            phit_h1,
            a_scale,
            a_mean,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let phi0 = with_h1_norm(&random_band(&grid, *k_max, false, &mut rng), *phi_h1);
            let phi1 = with_h1_norm(&random_band(&grid, *k_max, false, &mut rng), *phit_h1);
            let phi1 = neutralize_charge(&phi0, &phi1);
            let a_cf = random_curl_free(&grid, *k_max, &mut rng).scale(*a_scale);
            make_compatible_data(&phi0, &phi1, &a_cf, *a_mean, CurlPolicy::Reject)
        }
        InitialSpec::FromSnapshot { path } => {
            let state = read_snapshot(path)?;
            if *state.grid() != grid {
                return Err(Error::Usage(format!(
                    "snapshot {} has n = {}, L = {}; the configuration asks for n = {}, L = {}",
                    path.display(),
                    state.grid().n(),
                    state.grid().period(),
                    grid.n(),
                    grid.period()
                )));
            }
            Ok(state)
        }
    }
}

/// Closed-form solution at time `t` when the configuration is the free
/// plane-wave test mode.
pub fn linear_solution(config: &RunConfig, t: f64) -> Result<Option<ScalarField>> {
    match config.initial {
        InitialSpec::PlaneWave { mode, amplitude } if !config.scheme.gauge_coupling => {
            let omega = plane_wave_frequency(config, mode, amplitude)?;
            let phase = Complex64::from_polar(1.0, -omega * t);
            Ok(Some(plane_wave(&config.torus()?, mode, amplitude).scale_complex(phase)))
        }
        _ => Ok(None),
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Overrides `output.dir`.
    pub out: Option<PathBuf>,
    pub quiet: bool,
}

impl RunOptions {
    fn out_dir(&self, config: &RunConfig) -> PathBuf {
        self.out.clone().unwrap_or_else(|| config.output.dir.clone())
    }
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub out_dir: PathBuf,
    pub formulation: &'static str,
    pub steps: usize,
    pub final_time: f64,
    pub records: Vec<DiagnosticsRecord>,
    pub warnings: Vec<String>,
    /// `max |E(t) - E(0)| / |E(0)|` (absolute when `E(0) = 0`).
    pub energy_drift: f64,
    pub max_constraint: f64,
    /// Sup-norm error of `phi` against the closed form (test mode only).
    pub linear_error: Option<f64>,
    pub gronwall: Option<BoundCheck>,
    pub energy_bound: Option<BoundCheck>,
}

impl fmt::Display for RunSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "formulation: {}", self.formulation)?;
        writeln!(f, "steps: {}", self.steps)?;
        writeln!(f, "final_time: {:.16e}", self.final_time)?;
        writeln!(f, "records: {}", self.records.len())?;
        writeln!(f, "energy_drift: {:.6e}", self.energy_drift)?;
        writeln!(f, "max_constraint_l2: {:.6e}", self.max_constraint)?;
        if let Some(e) = self.linear_error {
            writeln!(f, "linear_mode_error: {e:.6e}")?;
        }
        for (name, check) in [("gronwall", &self.gronwall), ("energy_bound", &self.energy_bound)] {
            if let Some(c) = check {
                writeln!(
                    f,
                    "{name}: {} (min slack {:.6e} at t = {:.6e})",
                    if c.holds { "holds" } else { "VIOLATED" },
                    c.min_slack,
                    c.worst_t
                )?;
            }
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

fn write_outputs(
    config: &RunConfig,
    dir: &Path,
    traj: &Trajectory,
    records: &[DiagnosticsRecord],
) -> Result<()> {
    if config.diagnostics.csv && !records.is_empty() {
        write_diagnostics(records, &dir.join("diagnostics.csv"))?;
    }
    match config.output.snapshots {
        SnapshotPolicy::None => {}
        SnapshotPolicy::Final => {
            if let Some(s) = traj.last() {
                write_snapshot(s, &dir.join("snapshot_final.bin"))?;
            }
        }
        SnapshotPolicy::All => {
            for (k, s) in traj.snapshots.iter().enumerate() {
                write_snapshot(s, &dir.join(format!("snapshot_{k:06}.bin")))?;
            }
        }
    }
    Ok(())
}

fn rerecord(traj: &Trajectory, v: &Potential, epsilon: f64) -> Vec<DiagnosticsRecord> {
    traj.snapshots
        .iter()
        .map(|s| record_with_epsilon(s, v, epsilon))
        .collect()
}

/// `run <config>`: builds the initial data, evolves, and writes
/// `config.toml`, `diagnostics.csv`, snapshots and `summary.txt` into the
/// output directory. On blow-up the partial series and the last finite
/// state are written before the error is returned.
pub fn run(config: &RunConfig, opts: &RunOptions) -> Result<RunSummary> {
    let dir = opts.out_dir(config);
    fs::create_dir_all(&dir)?;
    fs::write(dir.join("config.toml"), serialize_config(config)?)?;

    let potential = config.potential_model()?;
    let scheme = config.scheme_config();
    let initial = build_initial(config)?;
    let eps = config.diagnostics.epsilon;

    let traj = match evolve(&initial, &scheme, &potential) {
        Ok(t) => t,
        Err(Error::BlowUp(b)) => {
            let records = rerecord(&b.partial, &potential, eps);
            write_outputs(config, &dir, &b.partial, &records)?;
            write_snapshot(&b.last_good, &dir.join("snapshot_last_good.bin"))?;
            if !opts.quiet {
                eprintln!("blow-up at t = {:.6e}; partial output in {}", b.time, dir.display());
            }
            return Err(Error::BlowUp(b));
        }
        Err(e) => return Err(e),
    };
    let records = rerecord(&traj, &potential, eps);
    write_outputs(config, &dir, &traj, &records)?;

    let e0 = records[0].energy;
    let energy_drift = records
        .iter()
        .map(|r| (r.energy - e0).abs())
        .fold(0.0, f64::max)
        / if e0 != 0.0 { e0.abs() } else { 1.0 };
    let max_constraint = records.iter().map(|r| r.constraint_l2).fold(0.0, f64::max);
    let last = traj.last().expect("trajectory holds the initial state");
    let linear_error = linear_solution(config, last.time())?.map(|exact| last.phi().sub(&exact).sup_norm());
    let (gronwall, energy_bound) = if config.diagnostics.bound_checks && potential.alpha > 0.0 {
        (
            Some(gronwall_check(&records, potential.alpha)?),
            Some(energy_bound_check(&records, potential.alpha)?),
        )
    } else {
        (None, None)
    };

    let summary = RunSummary {
        out_dir: dir.clone(),
        formulation: scheme.formulation.name(),
        steps: scheme.steps()?,
        final_time: last.time(),
        records,
        warnings: traj.warnings.clone(),
        energy_drift,
        max_constraint,
        linear_error,
        gronwall,
        energy_bound,
    };
    fs::write(dir.join("summary.txt"), summary.to_string())?;
    if !opts.quiet {
        print!("{summary}");
    }
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateRow {
    pub inequality: Inequality,
    pub seed: u64,
    pub ratio: f64,
}

#[derive(Debug, Clone)]
pub struct EstimatesReport {
    pub n: usize,
    pub rows: Vec<EstimateRow>,
}

impl EstimatesReport {
    pub fn max_ratio(&self, inequality: Inequality) -> Option<f64> {
        self.rows
            .iter()
            .filter(|r| r.inequality == inequality)
            .map(|r| r.ratio)
            .reduce(f64::max)
    }
}

/// Ratios for every configured inequality over the seeded free-wave batch.
/// Seeds are spread over worker threads; rows come back in seed order.
pub fn estimate_batch(config: &RunConfig) -> Result<EstimatesReport> {
    let grid = config.torus()?;
    let est = &config.estimates;
    let nt = if est.nt == 0 { 2 * grid.n() } else { est.nt };
    let band = Band {
        k_min: est.k_min,
        k_max: est.k_max,
    };
    let window = Window::RaisedCosine {
        fraction: est.window_fraction,
    };
    let inequalities = est
        .inequalities
        .iter()
        .map(|name| Inequality::parse(name).ok_or_else(|| Error::Usage(format!("unknown inequality '{name}'"))))
        .collect::<Result<Vec<_>>>()?;
    let eps = config.diagnostics.epsilon;
    let seeds: Vec<u64> = (est.first_seed..est.first_seed + est.batches).collect();
    let workers = std::thread::available_parallelism().map_or(1, |p| p.get()).min(seeds.len().max(1));
    let chunk = seeds.len().div_ceil(workers).max(1);

    let per_seed = |seed: u64| -> Result<Vec<EstimateRow>> {
        let u = free_wave_sample(&grid, band, seed, WaveSign::Plus, Dispersion::Wave, est.t_end, nt, window)?;
        inequalities
            .iter()
            .map(|&inequality| {
                Ok(EstimateRow {
                    inequality,
                    seed,
                    ratio: estimate_ratio(&u, inequality, eps)?,
                })
            })
            .collect()
    };
    let chunks: Vec<Result<Vec<EstimateRow>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = seeds
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    let mut rows = Vec::new();
                    for &seed in part {
                        rows.extend(per_seed(seed)?);
                    }
                    Ok(rows)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("estimate worker panicked")).collect()
    });
    let mut rows = Vec::new();
    for c in chunks {
        rows.extend(c?);
    }
    Ok(EstimatesReport { n: grid.n(), rows })
}

/// `estimates <config>`: writes `estimates.csv` with one row per
/// inequality and seed.
pub fn run_estimates(config: &RunConfig, opts: &RunOptions) -> Result<EstimatesReport> {
    let report = estimate_batch(config)?;
    let dir = opts.out_dir(config);
    fs::create_dir_all(&dir)?;
    let mut w = csv::Writer::from_path(dir.join("estimates.csv"))?;
    w.write_record(["inequality", "n", "seed", "ratio"])?;
    for r in &report.rows {
        w.write_record([
            r.inequality.name().to_string(),
            report.n.to_string(),
            r.seed.to_string(),
            format!("{:.16e}", r.ratio),
        ])?;
    }
    w.flush()?;
    if !opts.quiet {
        for name in &config.estimates.inequalities {
            let ineq = Inequality::parse(name).expect("validated");
            if let Some(m) = report.max_ratio(ineq) {
                println!("{}: max ratio {m:.6e} over {} samples (n = {})", ineq.name(), config.estimates.batches, report.n);
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct GaugeReport {
    /// `sup |evolve(apply_gauge(s)) - apply_gauge(evolve(s))|` at the final time.
    pub commutation: f64,
    pub energy_change: f64,
    pub i_change: f64,
    pub constraint_change: f64,
    /// Sup norm of the curl-free part after the Coulomb gauge transform.
    pub coulomb_residual: f64,
}

impl fmt::Display for GaugeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "commutation_sup: {:.6e}", self.commutation)?;
        writeln!(f, "energy_change: {:.6e}", self.energy_change)?;
        writeln!(f, "i_change: {:.6e}", self.i_change)?;
        writeln!(f, "constraint_change: {:.6e}", self.constraint_change)?;
        writeln!(f, "coulomb_residual: {:.6e}", self.coulomb_residual)
    }
}

/// Static gauge function of the `[gauge]` section.
pub fn demo_gauge(config: &RunConfig) -> Result<GaugeFunction> {
    let grid = config.torus()?;
    let g = &config.gauge;
    let chi = random_band(&grid, g.chi_k_max, true, &mut ChaCha8Rng::seed_from_u64(g.chi_seed));
    let sup = chi.sup_norm();
    let chi = if sup > 0.0 { chi.scale(g.chi_amplitude / sup) } else { chi };
    Ok(GaugeFunction::new(&chi))
}

/// `gauge-demo <config>`: checks that the flow commutes with a static gauge
/// transformation and that the observables are gauge invariant.
pub fn gauge_demo(config: &RunConfig, opts: &RunOptions) -> Result<GaugeReport> {
    let potential = config.potential_model()?;
    let scheme = config.scheme_config();
    let s0 = build_initial(config)?;
    let g = demo_gauge(config)?;
    let gs0 = apply_gauge(&s0, &g);

    let plain = evolve(&s0, &scheme, &potential)?;
    let gauged = evolve(&gs0, &scheme, &potential)?;
    let a = apply_gauge(plain.last().expect("initial state recorded"), &g);
    let b = gauged.last().expect("initial state recorded");
    let commutation = compare_states(&a, b)?.max_sup();

    let coulomb = apply_gauge(&s0, &coulomb_chi(&s0.gauge_field()));
    let report = GaugeReport {
        commutation,
        energy_change: (energy(&gs0, &potential) - energy(&s0, &potential)).abs(),
        i_change: (i_functional(&gs0) - i_functional(&s0)).abs(),
        constraint_change: (constraint_residual(&gs0).1 - constraint_residual(&s0).1).abs(),
        coulomb_residual: coulomb.a_cf().sup_norm(),
    };
    let dir = opts.out_dir(config);
    fs::create_dir_all(&dir)?;
    fs::write(dir.join("gauge_demo.txt"), report.to_string())?;
    if !opts.quiet {
        print!("{report}");
    }
    Ok(report)
}

/// `check <snapshot>`: diagnostics of a stored state.
pub fn check_snapshot(path: &Path, potential: &Potential, epsilon: f64) -> Result<DiagnosticsRecord> {
    let state = read_snapshot(path)?;
    Ok(record_with_epsilon(&state, potential, epsilon))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::config::parse_config;
    use crate::io::snapshot::encode_snapshot;

    fn opts(dir: &Path) -> RunOptions {
        RunOptions {
            out: Some(dir.to_path_buf()),
            quiet: true,
        }
    }

    #[test]
    fn zero_data_writes_zeros() {
        let dir = tempfile::tempdir().unwrap();
        let c = parse_config("[grid]\nn = 16\n[scheme]\ndt = 0.01\nt_end = 0.05\n").unwrap();
        let out = run(&c, &opts(dir.path()));
        assert_eq!(exit_code(&out), 0);
        let text = fs::read_to_string(dir.path().join("diagnostics.csv")).unwrap();
        let rows: Vec<_> = text.lines().skip(1).collect();
        assert_eq!(rows.len(), 6);
        for r in rows {
            assert!(r.split(',').skip(1).all(|v| v.parse::<f64>().unwrap() == 0.0), "{r}");
        }
        assert!(dir.path().join("snapshot_final.bin").exists());
        assert!(dir.path().join("config.toml").exists());
    }

    #[test]
    fn linear_mode_summary() {
        let dir = tempfile::tempdir().unwrap();
        let text = "[grid]\nn = 16\n[scheme]\ndt = 0.001\nt_end = 1.0\nstride = 100\n\
                    gauge_coupling = false\n[potential]\ncoefficients = [1.0]\n\
                    [initial]\nkind = \"plane-wave\"\n[output]\nsnapshots = \"none\"\n";
        let summary = run(&parse_config(text).unwrap(), &opts(dir.path())).unwrap();
        let err = summary.linear_error.unwrap();
        assert!(err <= 1e-8, "{err}");
        assert!(summary.to_string().contains("linear_mode_error"));
    }

    #[test]
    fn incompatible_data_exit_one() {
        let dir = tempfile::tempdir().unwrap();
        let text = "[grid]\nn = 16\n[scheme]\ndt = 0.01\nt_end = 0.1\n\
                    [potential]\ncoefficients = [1.0]\n[initial]\nkind = \"plane-wave\"\n";
        let out = run(&parse_config(text).unwrap(), &opts(dir.path()));
        assert_eq!(exit_code(&out), 1);
        // mean of Im(conj(phi) phi_t) = -omega = -sqrt 2
        match out {
            Err(Error::Obstruction { mean }) => assert!((mean + 2f64.sqrt()).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn blow_up_flushes_partial_output() {
        let dir = tempfile::tempdir().unwrap();
        let text = "[grid]\nn = 8\n[scheme]\ndt = 0.05\nt_end = 5.0\n\
                    [initial]\nkind = \"gaussian-bump\"\namplitude = 1000.0\n";
        let out = run(&parse_config(text).unwrap(), &opts(dir.path()));
        assert_eq!(exit_code(&out), 2);
        assert!(dir.path().join("snapshot_last_good.bin").exists());
        let rows = crate::io::read_diagnostics(&dir.path().join("diagnostics.csv")).unwrap();
        assert!(!rows.is_empty());
    }

    #[test]
    fn runs_are_deterministic() {
        let text = "[grid]\nn = 16\n[scheme]\ndt = 0.01\nt_end = 0.1\n\
                    [initial]\nkind = \"random-band\"\nseed = 5\nk_max = 3\n";
        let c = parse_config(text).unwrap();
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        run(&c, &opts(a.path())).unwrap();
        run(&c, &opts(b.path())).unwrap();
        for f in ["diagnostics.csv", "snapshot_final.bin"] {
            assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap());
        }
    }

    #[test]
    fn snapshot_restart_matches() {
        let dir = tempfile::tempdir().unwrap();
        let text = "[grid]\nn = 16\n[scheme]\ndt = 0.01\nt_end = 0.0\n\
                    [initial]\nkind = \"random-band\"\nseed = 2\nk_max = 3\n";
        let c = parse_config(text).unwrap();
        run(&c, &opts(dir.path())).unwrap();
        let mut again = c.clone();
        again.initial = InitialSpec::FromSnapshot {
            path: dir.path().join("snapshot_final.bin"),
        };
        assert_eq!(
            encode_snapshot(&build_initial(&again).unwrap()),
            encode_snapshot(&build_initial(&c).unwrap())
        );
    }

    #[test]
    fn small_estimate_batch_is_ordered() {
        let text = "[grid]\nn = 16\n[scheme]\ndt = 0.01\nt_end = 0.1\n\
                    [estimates]\nbatches = 5\nk_max = 4.0\nfirst_seed = 3\n";
        let report = estimate_batch(&parse_config(text).unwrap()).unwrap();
        assert_eq!(report.rows.len(), 10);
        let seeds: Vec<_> = report.rows.iter().map(|r| r.seed).collect();
        assert_eq!(seeds, vec![3, 3, 4, 4, 5, 5, 6, 6, 7, 7]);
        assert!(report.rows.iter().all(|r| r.ratio.is_finite() && r.ratio > 0.0));
    }
}
