//! Run configuration: TOML text with `[grid]`, `[scheme]`, `[potential]`,
//! `[initial]`, `[diagnostics]`, `[output]` and optional `[gauge]`,
//! `[estimates]` sections.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::diagnostics::DEFAULT_EPSILON;
use crate::dynamics::{Formulation, SchemeConfig};
use crate::error::{Error, Result};
use crate::estimates::Inequality;
use crate::model::Potential;
use crate::spectral::TorusGrid;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub grid: GridSection,
    pub scheme: SchemeSection,
    #[serde(default)]
    pub potential: PotentialSection,
    #[serde(default)]
    pub initial: InitialSpec,
    #[serde(default)]
    pub diagnostics: DiagnosticsSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub gauge: GaugeSection,
    #[serde(default)]
    pub estimates: EstimatesSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub n: usize,
    #[serde(default = "two_pi")]
    pub period: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeSection {
    #[serde(default = "default_formulation")]
    pub formulation: String,
    pub dt: f64,
    pub t_end: f64,
    #[serde(default = "one")]
    pub stride: usize,
    #[serde(default = "yes")]
    pub dealias: bool,
    #[serde(default = "yes")]
    pub gauge_coupling: bool,
    #[serde(default = "yes")]
    pub potential_on: bool,
}

/// `V(r) = sum_k coefficients[k-1] r^k`; the default is `V(r) = r^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialSection {
    #[serde(default = "quartic")]
    pub coefficients: Vec<f64>,
    #[serde(default)]
    pub alpha: f64,
}

impl Default for PotentialSection {
    fn default() -> Self {
        Self {
            coefficients: quartic(),
            alpha: 0.0,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InitialSpec {
    #[default]
    Zero,
    /// `phi = amplitude e^{i k.x}`, `d_t phi = -i omega phi` with the free
    /// dispersion of the configured model.
    PlaneWave {
        #[serde(default = "unit_mode")]
        mode: [i64; 2],
        #[serde(default = "unit")]
        amplitude: f64,
    },
    GaussianBump {
        #[serde(default = "centre")]
        center: [f64; 2],
        #[serde(default = "unit")]
        width: f64,
        #[serde(default = "unit")]
        amplitude: f64,
        #[serde(default)]
        a_mean: [f64; 2],
    },
    /// Band-limited random `phi`, `d_t phi` (charge-neutralized) and a
    /// curl-free gauge part.
    RandomBand {
        #[serde(default)]
        seed: u64,
        #[serde(default = "default_band")]
        k_max: u32,
        #[serde(default = "unit")]
        phi_h1: f64,
        #[serde(default = "unit")]
        phit_h1: f64,
        #[serde(default = "default_a_scale")]
        a_scale: f64,
        #[serde(default)]
        a_mean: [f64; 2],
    },
    FromSnapshot { path: PathBuf },
}

impl InitialSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            InitialSpec::Zero => "zero",
            InitialSpec::PlaneWave { .. } => "plane-wave",
            InitialSpec::GaussianBump { .. } => "gaussian-bump",
            InitialSpec::RandomBand { .. } => "random-band",
            InitialSpec::FromSnapshot { .. } => "from-snapshot",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagnosticsSection {
    /// Regularity offset shared by the gauge norms and the norm specs.
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default = "yes")]
    pub csv: bool,
    /// Run the Gronwall and energy-bound checks (needs `alpha > 0`).
    #[serde(default = "yes")]
    pub bound_checks: bool,
}

impl Default for DiagnosticsSection {
    fn default() -> Self {
        Self {
            epsilon: DEFAULT_EPSILON,
            csv: true,
            bound_checks: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SnapshotPolicy {
    None,
    Final,
    All,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
    #[serde(default = "default_snapshots")]
    pub snapshots: SnapshotPolicy,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            dir: default_dir(),
            snapshots: default_snapshots(),
        }
    }
}

/// Static gauge function for `gauge-demo`: a real random band scaled to
/// the given sup norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeSection {
    #[serde(default = "default_chi_band")]
    pub chi_k_max: u32,
    #[serde(default = "default_chi_amplitude")]
    pub chi_amplitude: f64,
    #[serde(default = "default_chi_seed")]
    pub chi_seed: u64,
}

impl Default for GaugeSection {
    fn default() -> Self {
        Self {
            chi_k_max: default_chi_band(),
            chi_amplitude: default_chi_amplitude(),
            chi_seed: default_chi_seed(),
        }
    }
}

/// Batch of free-wave samples for `estimates`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EstimatesSection {
    #[serde(default = "default_inequalities")]
    pub inequalities: Vec<String>,
    #[serde(default = "unit")]
    pub k_min: f64,
    #[serde(default = "default_k_max")]
    pub k_max: f64,
    #[serde(default = "default_batches")]
    pub batches: u64,
    #[serde(default)]
    pub first_seed: u64,
    /// Time samples per batch; `0` means `2n`.
    #[serde(default)]
    pub nt: usize,
    #[serde(default = "two_pi")]
    pub t_end: f64,
    #[serde(default = "default_fraction")]
    pub window_fraction: f64,
}

impl Default for EstimatesSection {
    fn default() -> Self {
        Self {
            inequalities: default_inequalities(),
            k_min: 1.0,
            k_max: default_k_max(),
            batches: default_batches(),
            first_seed: 0,
            nt: 0,
            t_end: two_pi(),
            window_fraction: default_fraction(),
        }
    }
}

fn two_pi() -> f64 {
    2.0 * std::f64::consts::PI
}
fn default_formulation() -> String {
    Formulation::Reformulated.name().into()
}
fn one() -> usize {
    1
}
fn yes() -> bool {
    true
}
fn unit() -> f64 {
    1.0
}
fn quartic() -> Vec<f64> {
    vec![0.0, 1.0]
}
fn unit_mode() -> [i64; 2] {
    [1, 0]
}
fn centre() -> [f64; 2] {
    [std::f64::consts::PI; 2]
}
fn default_band() -> u32 {
    4
}
fn default_a_scale() -> f64 {
    0.3
}
fn default_epsilon() -> f64 {
    DEFAULT_EPSILON
}
fn default_dir() -> PathBuf {
    PathBuf::from("out")
}
fn default_snapshots() -> SnapshotPolicy {
    SnapshotPolicy::Final
}
fn default_chi_band() -> u32 {
    3
}
fn default_chi_amplitude() -> f64 {
    0.3
}
fn default_chi_seed() -> u64 {
    7
}
fn default_inequalities() -> Vec<String> {
    vec!["Str".into(), "T".into()]
}
fn default_k_max() -> f64 {
    8.0
}
fn default_batches() -> u64 {
    100
}
fn default_fraction() -> f64 {
    0.1
}

/// 1-based line of the first line at or after the byte `offset`.
fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// Line on which `key` is assigned inside `[section]`, or the section
/// header line, or `0` when neither appears.
fn locate(text: &str, section: &str, key: &str) -> usize {
    let mut current = String::new();
    let mut header = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            current = name.trim().to_string();
            if current == section {
                header = i + 1;
            }
            continue;
        }
        if current == section {
            if let Some((k, _)) = line.split_once('=') {
                if k.trim() == key {
                    return i + 1;
                }
            }
        }
    }
    header
}

fn invalid(text: &str, section: &str, key: &str, msg: impl Into<String>) -> Error {
    Error::Config {
        line: locate(text, section, key),
        msg: msg.into(),
    }
}

pub fn parse_config(text: &str) -> Result<RunConfig> {
    let config: RunConfig = toml::from_str(text).map_err(|e| Error::Config {
        line: e.span().map(|s| line_of(text, s.start)).unwrap_or(0),
        msg: e.message().to_string(),
    })?;
    config.check(text)?;
    Ok(config)
}

pub fn serialize_config(config: &RunConfig) -> Result<String> {
    toml::to_string(config).map_err(|e| Error::Config {
        line: 0,
        msg: e.to_string(),
    })
}

impl RunConfig {
    /// Configuration with the given required keys and every default.
    pub fn minimal(n: usize, dt: f64, t_end: f64) -> Self {
        Self {
            grid: GridSection { n, period: two_pi() },
            scheme: SchemeSection {
                formulation: default_formulation(),
                dt,
                t_end,
                stride: 1,
                dealias: true,
                gauge_coupling: true,
                potential_on: true,
            },
            potential: PotentialSection::default(),
            initial: InitialSpec::default(),
            diagnostics: DiagnosticsSection::default(),
            output: OutputSection::default(),
            gauge: GaugeSection::default(),
            estimates: EstimatesSection::default(),
        }
    }

    fn check(&self, text: &str) -> Result<()> {
        TorusGrid::new(self.grid.n, self.grid.period).map_err(|e| {
            let key = if self.grid.n < 4 || !self.grid.n.is_multiple_of(2) { "n" } else { "period" };
            invalid(text, "grid", key, format!("grid.{key}: {e}"))
        })?;
        let s = &self.scheme;
        if Formulation::parse(&s.formulation).is_none() {
            return Err(invalid(
                text,
                "scheme",
                "formulation",
                format!("unknown formulation '{}' (direct, reformulated, halfwave)", s.formulation),
            ));
        }
        if !(s.dt.is_finite() && s.dt > 0.0) {
            return Err(invalid(text, "scheme", "dt", "scheme.dt must be positive"));
        }
        if !(s.t_end.is_finite() && s.t_end >= 0.0) {
            return Err(invalid(text, "scheme", "t_end", "scheme.t_end must be >= 0"));
        }
        if s.stride < 1 {
            return Err(invalid(text, "scheme", "stride", "scheme.stride must be >= 1"));
        }
        self.scheme_config()
            .steps()
            .map_err(|e| invalid(text, "scheme", "t_end", e.to_string()))?;
        self.potential_model()
            .map_err(|e| invalid(text, "potential", "alpha", e.to_string()))?;
        let eps = self.diagnostics.epsilon;
        if !(eps.is_finite() && eps > 0.0 && eps < 0.5) {
            return Err(invalid(text, "diagnostics", "epsilon", "diagnostics.epsilon must lie in (0, 1/2)"));
        }
        match &self.initial {
            InitialSpec::RandomBand { k_max, .. } if 3 * (*k_max as usize) > self.grid.n => {
                return Err(invalid(
                    text,
                    "initial",
                    "k_max",
                    format!("initial.k_max = {k_max} exceeds n/3 for n = {}", self.grid.n),
                ));
            }
            InitialSpec::GaussianBump { width, .. } if width.is_nan() || *width <= 0.0 => {
                return Err(invalid(text, "initial", "width", "initial.width must be positive"));
            }
            _ => {}
        }
        for name in &self.estimates.inequalities {
            if Inequality::parse(name).is_none() {
                return Err(invalid(text, "estimates", "inequalities", format!("unknown inequality '{name}'")));
            }
        }
        let f = self.estimates.window_fraction;
        if !(f > 0.0 && f <= 0.5) {
            return Err(invalid(text, "estimates", "window_fraction", "estimates.window_fraction must lie in (0, 1/2]"));
        }
        Ok(())
    }

    pub fn torus(&self) -> Result<TorusGrid> {
        TorusGrid::new(self.grid.n, self.grid.period)
    }

    pub fn formulation(&self) -> Formulation {
        Formulation::parse(&self.scheme.formulation).unwrap_or(Formulation::Reformulated)
    }

    pub fn scheme_config(&self) -> SchemeConfig {
        let s = &self.scheme;
        SchemeConfig {
            formulation: self.formulation(),
            dt: s.dt,
            t_end: s.t_end,
            dealias: s.dealias,
            record_every: s.stride,
            gauge_coupling: s.gauge_coupling,
            potential_on: s.potential_on,
        }
    }

    pub fn potential_model(&self) -> Result<Potential> {
        Potential::new(self.potential.coefficients.clone(), self.potential.alpha)
    }

    /// Overrides the seed of a random-band initial state.
    pub fn with_seed(mut self, seed: u64) -> Self {
        if let InitialSpec::RandomBand { seed: s, .. } = &mut self.initial {
            *s = seed;
        }
        self.estimates.first_seed = seed;
        self.gauge.chi_seed = seed;
        self
    }
}
