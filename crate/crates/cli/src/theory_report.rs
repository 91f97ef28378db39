use std::time::Instant;

use coulomb_gaps::ensembles::EnsembleSpec;
use coulomb_gaps::theory::{
    j_constant_closed, j_constant_quadrature, limit_gap_cdf, limit_gap_density, limit_gap_quantile, PotentialModel,
};

use crate::error::Result;
use crate::report::{EnsembleSummary, ExperimentReport, TheoryTable};

const TABLE_POINTS: usize = 64;

/// `J` in closed form and by quadrature, and density/CDF tables of `t_k`
/// for `k = 1..=k_max` on `[0, x_{0.9999}]`.
pub fn run_theory_report(spec: &EnsembleSpec, k_max: usize) -> Result<ExperimentReport> {
    let start = Instant::now();
    let model = PotentialModel::from_ensemble(spec)?;
    let j = j_constant_closed(&model);
    let j_quad = j_constant_quadrature(&model, 1e-10)?;
    let theory_tables = (1..=k_max)
        .map(|k| {
            let top = limit_gap_quantile(k, j, 1.0 - 1e-4);
            let x: Vec<f64> = (0..=TABLE_POINTS).map(|i| top * i as f64 / TABLE_POINTS as f64).collect();
            TheoryTable {
                k,
                density: x.iter().map(|&x| limit_gap_density(k, j, x)).collect(),
                cdf: x.iter().map(|&x| limit_gap_cdf(k, j, x)).collect(),
                x,
            }
        })
        .collect();
    Ok(ExperimentReport {
        ensemble: Some(EnsembleSummary::from(spec)),
        j_closed: Some(j),
        j_quadrature: Some(j_quad),
        theory_tables,
        runtime_seconds: start.elapsed().as_secs_f64(),
        ..ExperimentReport::default()
    })
}
