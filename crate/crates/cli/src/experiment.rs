use std::time::Instant;

use coulomb_gaps::ensembles::sample_eigenvalues;
use coulomb_gaps::gapstats::{count_in_window, k_smallest_pairs, nearest_successor_gaps};
use coulomb_gaps::rng::SeedStream;
use coulomb_gaps::stats::{chi2_poisson, factorial_moment, ks_statistic, CountTally, Histogram};
use coulomb_gaps::theory::{
    j_constant_closed, j_constant_quadrature, limit_gap_cdf, limit_gap_density, limit_gap_mean, limit_gap_quantile,
    poisson_intensity, PotentialModel, SizeWindow,
};
use coulomb_gaps::Complex64;
use rayon::prelude::*;

use crate::config::{ExperimentConfig, HistogramEdges};
use crate::error::{CliError, Result};
use crate::output;
use crate::report::{
    Chi2Report, EnsembleSummary, ExperimentReport, GapLawReport, SeedManifest, TrialFailure, TrialSummary, WindowReport,
};

/// Fraction of trials that must succeed for a run to be reported.
pub const MIN_SUCCESS_FRACTION: f64 = 0.9;
const QUADRATURE_TOL: f64 = 1e-10;

/// What one trial contributes: `(t_k, pair midpoint)` for `k = 1..k_max`
/// and one event count per window.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub trial: u64,
    pub gaps: Vec<(f64, Complex64)>,
    pub counts: Vec<u64>,
}

/// Successful trials in index order, plus the failed ones.
#[derive(Debug, Clone, PartialEq)]
pub struct Simulation {
    pub outcomes: Vec<TrialOutcome>,
    pub failures: Vec<TrialFailure>,
}

fn run_trial(config: &ExperimentConfig, windows: &[SizeWindow], trial: u64) -> coulomb_gaps::Result<TrialOutcome> {
    let sample = sample_eigenvalues(&config.ensemble, SeedStream::new(config.master_seed, trial))?;
    let gaps =
        k_smallest_pairs(&sample, config.k_max)?.into_iter().map(|p| (p.rescaled_size, p.midpoint(&sample))).collect();
    let events = nearest_successor_gaps(&sample)?;
    let counts =
        windows.iter().zip(&config.windows).map(|(w, spec)| count_in_window(&events, w, &spec.region) as u64).collect();
    Ok(TrialOutcome { trial, gaps, counts })
}

fn thread_pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Argument(format!("cannot start worker pool: {e}")))
}

/// Runs all trials on the worker pool and merges them in trial order.
///
/// Fails when fewer than [`MIN_SUCCESS_FRACTION`] of the trials succeed.
pub fn simulate(config: &ExperimentConfig) -> Result<Simulation> {
    config.validate()?;
    let windows: Vec<SizeWindow> = config.windows.iter().map(|w| w.size_window()).collect::<Result<_>>()?;
    let results: Vec<coulomb_gaps::Result<TrialOutcome>> = thread_pool(config.threads)?
        .install(|| (0..config.trials).into_par_iter().map(|t| run_trial(config, &windows, t)).collect());
    let mut outcomes = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    for (trial, result) in (0..config.trials).zip(results) {
        match result {
            Ok(o) => outcomes.push(o),
            Err(e) => failures.push(TrialFailure { trial, reason: e.to_string() }),
        }
    }
    let needed = (MIN_SUCCESS_FRACTION * config.trials as f64).ceil() as usize;
    if outcomes.len() < needed {
        let first = failures.first().map(|f| f.reason.as_str()).unwrap_or("");
        return Err(CliError::Numerical(format!(
            "only {} of {} trials succeeded (first failure: {first})",
            outcomes.len(),
            config.trials
        )));
    }
    Ok(Simulation { outcomes, failures })
}

fn histogram_edges(rule: &HistogramEdges, k: usize, j: f64) -> Vec<f64> {
    match rule {
        HistogramEdges::Explicit(edges) => edges.clone(),
        HistogramEdges::Auto { bins } => {
            let top = limit_gap_quantile(k, j, 1.0 - 1e-4);
            (0..=*bins).map(|b| top * b as f64 / *bins as f64).collect()
        }
    }
}

/// Per-`k` gap laws and histograms.
fn summarize_gaps(config: &ExperimentConfig, sim: &Simulation, j: f64) -> Result<(Vec<GapLawReport>, Vec<Histogram>)> {
    let mut laws = Vec::with_capacity(config.k_max);
    let mut hists = Vec::with_capacity(config.k_max);
    for k in 1..=config.k_max {
        let samples: Vec<f64> = sim.outcomes.iter().map(|o| o.gaps[k - 1].0).collect();
        let ks = ks_statistic(&samples, |x| limit_gap_cdf(k, j, x))?;
        let mut hist = Histogram::new(histogram_edges(&config.histogram_edges, k, j))?;
        for &x in &samples {
            hist.add(x);
        }
        laws.push(GapLawReport {
            k,
            samples: samples.len(),
            ks_distance: ks,
            empirical_mean: samples.iter().sum::<f64>() / samples.len() as f64,
            theory_mean: limit_gap_mean(k, j),
        });
        hists.push(hist);
    }
    Ok((laws, hists))
}

fn summarize_windows(config: &ExperimentConfig, sim: &Simulation, model: &PotentialModel) -> Result<Vec<WindowReport>> {
    let mut reports = Vec::with_capacity(config.windows.len());
    for (id, spec) in config.windows.iter().enumerate() {
        let lambda = poisson_intensity(model, &spec.size_window()?, &spec.region)?;
        let tally = CountTally::from_counts(sim.outcomes.iter().map(|o| o.counts[id]));
        let (chi2, chi2_note) = match chi2_poisson(&tally, lambda) {
            Ok(t) => {
                (Some(Chi2Report { statistic: t.statistic, dof: t.dof, critical_99: t.critical_value(0.99) }), None)
            }
            Err(e) => (None, Some(e.to_string())),
        };
        reports.push(WindowReport {
            id,
            lo: spec.lo,
            hi: spec.hi,
            region: spec.region,
            lambda_theory: lambda,
            mean_count: tally.mean(),
            chi2,
            chi2_note,
            factorial_moments: [factorial_moment(&tally, 1), factorial_moment(&tally, 2)],
        });
    }
    Ok(reports)
}

/// Samples, extracts and aggregates the gap statistics of `config`, and
/// writes `gaps.csv`, `counts.csv`, `hist_k{K}.csv` and `report.json` to
/// its output directory.
pub fn run_gap_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let start = Instant::now();
    let model = PotentialModel::from_ensemble(&config.ensemble)?;
    let j = j_constant_closed(&model);
    let j_quad = j_constant_quadrature(&model, QUADRATURE_TOL)?;
    let sim = simulate(config)?;
    let (gap_laws, hists) = summarize_gaps(config, &sim, j)?;
    let windows = summarize_windows(config, &sim, &model)?;

    let dir = &config.output_dir;
    output::ensure_dir(dir)?;
    output::write_gaps_csv(&dir.join("gaps.csv"), &sim.outcomes)?;
    output::write_counts_csv(&dir.join("counts.csv"), &sim.outcomes)?;
    for (idx, hist) in hists.iter().enumerate() {
        let k = idx + 1;
        output::write_histogram_csv(&dir.join(format!("hist_k{k}.csv")), hist, |x| limit_gap_density(k, j, x))?;
    }
    let report = ExperimentReport {
        ensemble: Some(EnsembleSummary::from(&config.ensemble)),
        j_closed: Some(j),
        j_quadrature: Some(j_quad),
        gap_laws,
        windows,
        trials: Some(TrialSummary {
            requested: config.trials,
            succeeded: sim.outcomes.len() as u64,
            failures: sim.failures,
        }),
        seeds: Some(SeedManifest::new(config.master_seed, config.trials)),
        runtime_seconds: start.elapsed().as_secs_f64(),
        ..ExperimentReport::default()
    };
    output::write_json(&dir.join("report.json"), &report)?;
    Ok(report)
}

/// Gap extraction only: writes `gaps.csv` and `counts.csv`.
pub fn run_gap_extraction(config: &ExperimentConfig) -> Result<Simulation> {
    let sim = simulate(config)?;
    output::ensure_dir(&config.output_dir)?;
    output::write_gaps_csv(&config.output_dir.join("gaps.csv"), &sim.outcomes)?;
    output::write_counts_csv(&config.output_dir.join("counts.csv"), &sim.outcomes)?;
    Ok(sim)
}

/// Raw eigenvalues of every trial, written to `samples.csv`.
pub fn run_sampling(config: &ExperimentConfig) -> Result<Vec<(u64, Vec<Complex64>)>> {
    config.validate()?;
    let results: Vec<coulomb_gaps::Result<Vec<Complex64>>> = thread_pool(config.threads)?.install(|| {
        (0..config.trials)
            .into_par_iter()
            .map(|t| {
                sample_eigenvalues(&config.ensemble, SeedStream::new(config.master_seed, t))
                    .map(|s| s.points().to_vec())
            })
            .collect()
    });
    let samples: Vec<(u64, Vec<Complex64>)> =
        (0..config.trials).zip(results).map(|(t, r)| r.map(|p| (t, p))).collect::<coulomb_gaps::Result<_>>()?;
    output::ensure_dir(&config.output_dir)?;
    output::write_points_csv(&config.output_dir.join("samples.csv"), &samples)?;
    Ok(samples)
}
