use coulomb_gaps::ensembles::{EnsembleKind, EnsembleSpec};
use coulomb_gaps::theory::RegionSpec;
use serde::{Deserialize, Serialize};

/// Everything a run produced, serialised as `report.json`.
///
/// Sections that a command does not compute stay empty.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub ensemble: Option<EnsembleSummary>,
    pub j_closed: Option<f64>,
    pub j_quadrature: Option<f64>,
    pub gap_laws: Vec<GapLawReport>,
    pub windows: Vec<WindowReport>,
    pub theory_tables: Vec<TheoryTable>,
    pub kernel_checks: Vec<CheckResult>,
    pub trials: Option<TrialSummary>,
    pub seeds: Option<SeedManifest>,
    pub runtime_seconds: f64,
}

impl ExperimentReport {
    pub fn all_checks_passed(&self) -> bool {
        self.kernel_checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSummary {
    pub name: String,
    pub n: usize,
    pub requested: EnsembleKind,
    /// Parameters after rounding the matrix sizes.
    pub effective: EnsembleKind,
    pub m: Option<usize>,
    pub alpha: Option<usize>,
}

impl From<&EnsembleSpec> for EnsembleSummary {
    fn from(spec: &EnsembleSpec) -> Self {
        Self {
            name: spec.effective_kind().name().to_string(),
            n: spec.n(),
            requested: spec.requested_kind(),
            effective: spec.effective_kind(),
            m: spec.m(),
            alpha: spec.alpha(),
        }
    }
}

/// Empirical `t_k` against the limit law with `J_closed`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapLawReport {
    pub k: usize,
    pub samples: usize,
    pub ks_distance: f64,
    pub empirical_mean: f64,
    pub theory_mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Chi2Report {
    pub statistic: f64,
    pub dof: usize,
    pub critical_99: f64,
}

/// Counts of gap events in `[lo, hi) × region` against `Poisson(λ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowReport {
    pub id: usize,
    pub lo: f64,
    pub hi: f64,
    pub region: RegionSpec,
    pub lambda_theory: f64,
    pub mean_count: f64,
    pub chi2: Option<Chi2Report>,
    /// Why `chi2` is absent, if it is.
    pub chi2_note: Option<String>,
    /// `E[N]` and `E[N(N−1)]`.
    pub factorial_moments: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoryTable {
    pub k: usize,
    pub x: Vec<f64>,
    pub density: Vec<f64>,
    pub cdf: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl CheckResult {
    /// Passes when `measured ≤ threshold`.
    pub fn at_most(name: &str, measured: f64, threshold: f64) -> Self {
        Self { name: name.to_string(), measured, threshold, passed: measured <= threshold }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialFailure {
    pub trial: u64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub requested: u64,
    pub succeeded: u64,
    pub failures: Vec<TrialFailure>,
}

/// Trial `t` of a run draws from stream `t` of the generator keyed by `master_seed`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedManifest {
    pub master_seed: u64,
    pub first_trial: u64,
    pub end_trial: u64,
    pub generator: String,
}

impl SeedManifest {
    pub fn new(master_seed: u64, trials: u64) -> Self {
        Self {
            master_seed,
            first_trial: 0,
            end_trial: trials,
            generator: "ChaCha20, key from master_seed, stream = trial index".into(),
        }
    }
}
