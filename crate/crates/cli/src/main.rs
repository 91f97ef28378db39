use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gaplab::config::{parse_ensemble, ConfigFile, OUTPUT_DIR_ENV};
use gaplab::{output, CliError, ExperimentConfig, ExperimentReport, Overrides, Result};

#[derive(Parser)]
#[command(name = "coulomb-gaps", version, about = "Smallest gaps of random normal matrix eigenvalues")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write raw eigenvalues of every trial to samples.csv.
    Sample(RunArgs),
    /// Extract the k smallest gaps and window counts of every trial.
    Gaps(RunArgs),
    /// Tabulate J and the limiting gap laws.
    Theory(RunArgs),
    /// Run the deterministic kernel checks.
    KernelCheck(RunArgs),
    /// Full run: sampling, gap statistics, Poisson tests and report.
    Experiment(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// TOML experiment file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed; trial t uses stream t.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    /// Matrix size.
    #[arg(long)]
    n: Option<usize>,
    /// ginue, elliptic_ginue[:tau=x], induced_ginue[:a=x], induced_srue[:a=x] or tue[:a=x].
    #[arg(long)]
    ensemble: Option<String>,
    /// Output directory.
    #[arg(long, env = OUTPUT_DIR_ENV)]
    out: Option<PathBuf>,
    /// n = 400 and 10⁴ trials unless given explicitly.
    #[arg(long)]
    paper_scale: bool,
    /// Worker threads; 0 = one per core.
    #[arg(long)]
    threads: Option<usize>,
    /// Number of smallest gaps per trial.
    #[arg(long)]
    k_max: Option<usize>,
}

impl RunArgs {
    fn resolve(&self) -> Result<ExperimentConfig> {
        let file = match &self.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let overrides = Overrides {
            paper_scale: self.paper_scale,
            ensemble: self.ensemble.as_deref().map(parse_ensemble).transpose()?,
            n: self.n,
            trials: self.trials,
            master_seed: self.seed,
            k_max: self.k_max,
            output_dir: self.out.clone(),
            threads: self.threads,
        };
        ExperimentConfig::resolve(file, &overrides)
    }
}

fn write_report(config: &ExperimentConfig, report: &ExperimentReport) -> Result<()> {
    output::ensure_dir(&config.output_dir)?;
    output::write_json(&config.output_dir.join("report.json"), report)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sample(args) => {
            let config = args.resolve()?;
            let samples = gaplab::run_sampling(&config)?;
            eprintln!("wrote {} trials to {}", samples.len(), config.output_dir.display());
        }
        Command::Gaps(args) => {
            let config = args.resolve()?;
            let sim = gaplab::run_gap_extraction(&config)?;
            eprintln!(
                "{} of {} trials succeeded; wrote {}",
                sim.outcomes.len(),
                config.trials,
                config.output_dir.display()
            );
        }
        Command::Theory(args) => {
            let config = args.resolve()?;
            let report = gaplab::run_theory_report(&config.ensemble, config.k_max)?;
            println!(
                "J closed = {:.10}, J quadrature = {:.10}",
                report.j_closed.unwrap_or(f64::NAN),
                report.j_quadrature.unwrap_or(f64::NAN)
            );
            write_report(&config, &report)?;
        }
        Command::KernelCheck(args) => {
            let config = args.resolve()?;
            let report = gaplab::run_kernel_checks()?;
            for c in &report.kernel_checks {
                let verdict = if c.passed { "ok" } else { "FAILED" };
                println!("{:<36} {:>12.4e} <= {:<10.1e} {verdict}", c.name, c.measured, c.threshold);
            }
            write_report(&config, &report)?;
            if !report.all_checks_passed() {
                return Err(CliError::Numerical("kernel checks failed".into()));
            }
        }
        Command::Experiment(args) => {
            let config = args.resolve()?;
            let report = gaplab::run_gap_experiment(&config)?;
            for law in &report.gap_laws {
                println!(
                    "k = {}: KS = {:.4}, mean = {:.4} (limit {:.4})",
                    law.k, law.ks_distance, law.empirical_mean, law.theory_mean
                );
            }
            for w in &report.windows {
                println!("window {}: mean count = {:.4}, lambda = {:.4}", w.id, w.mean_count, w.lambda_theory);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
