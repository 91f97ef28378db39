//! CSV and JSON artifacts.
//!
//! Floats are written with 17 significant digits so that a rerun of the
//! same configuration reproduces every file byte for byte.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use coulomb_gaps::stats::Histogram;
use coulomb_gaps::Complex64;
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::experiment::TrialOutcome;

/// Round-trip exact float formatting.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

struct CsvFile {
    path: PathBuf,
    out: BufWriter<File>,
}

impl CsvFile {
    fn create(path: &Path, header: &str) -> Result<Self> {
        let file = File::create(path).map_err(|e| CliError::io(path, e))?;
        let mut csv = Self { path: path.to_path_buf(), out: BufWriter::new(file) };
        csv.line(header)?;
        Ok(csv)
    }

    fn line(&mut self, text: &str) -> Result<()> {
        writeln!(self.out, "{text}").map_err(|e| CliError::io(&self.path, e))
    }

    fn finish(mut self) -> Result<()> {
        self.out.flush().map_err(|e| CliError::io(&self.path, e))
    }
}

pub fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

/// `trial,k,t_k,location_re,location_im`, the location being the midpoint of the pair.
pub fn write_gaps_csv(path: &Path, outcomes: &[TrialOutcome]) -> Result<()> {
    let mut csv = CsvFile::create(path, "trial,k,t_k,location_re,location_im")?;
    for o in outcomes {
        for (idx, (t, z)) in o.gaps.iter().enumerate() {
            csv.line(&format!("{},{},{},{},{}", o.trial, idx + 1, fmt_float(*t), fmt_float(z.re), fmt_float(z.im)))?;
        }
    }
    csv.finish()
}

/// `trial,window_id,count`.
pub fn write_counts_csv(path: &Path, outcomes: &[TrialOutcome]) -> Result<()> {
    let mut csv = CsvFile::create(path, "trial,window_id,count")?;
    for o in outcomes {
        for (id, count) in o.counts.iter().enumerate() {
            csv.line(&format!("{},{},{}", o.trial, id, count))?;
        }
    }
    csv.finish()
}

/// `bin_lo,bin_hi,count,density_theory_midpoint`.
pub fn write_histogram_csv(path: &Path, hist: &Histogram, theory: impl Fn(f64) -> f64) -> Result<()> {
    let mut csv = CsvFile::create(path, "bin_lo,bin_hi,count,density_theory_midpoint")?;
    for (b, w) in hist.edges.windows(2).enumerate() {
        let mid = 0.5 * (w[0] + w[1]);
        csv.line(&format!("{},{},{},{}", fmt_float(w[0]), fmt_float(w[1]), hist.counts[b], fmt_float(theory(mid))))?;
    }
    csv.finish()
}

/// `trial,index,re,im` for raw eigenvalues.
pub fn write_points_csv(path: &Path, samples: &[(u64, Vec<Complex64>)]) -> Result<()> {
    let mut csv = CsvFile::create(path, "trial,index,re,im")?;
    for (trial, points) in samples {
        for (i, z) in points.iter().enumerate() {
            csv.line(&format!("{},{},{},{}", trial, i, fmt_float(z.re), fmt_float(z.im)))?;
        }
    }
    csv.finish()
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut out = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| CliError::io(path, std::io::Error::other(e)))?;
    writeln!(out).and_then(|_| out.flush()).map_err(|e| CliError::io(path, e))
}
