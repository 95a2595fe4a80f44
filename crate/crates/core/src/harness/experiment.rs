//! Seeded energy/discrepancy experiments and their persisted reports.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::discrepancy::{metric_experiment, AlphaValue, MedianProfile};
use crate::energy::{energy_auto, kappa_fit, EnergyBudget, EnergyCheckpoint, EnergyProfile};
use crate::expsum::{holder_check, HolderCheck, QuadratureBudget};
use crate::harness::fit::ExponentFit;
use crate::sequences::{self, generate, predicted_tau, tau_from_kappa, SequenceSpec};
use crate::Result;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_SEED: u64 = 20_260_101;

/// `2^8, 2^9, ..., 2^15`.
pub fn default_checkpoints() -> Vec<usize> {
    (8..=15).map(|k| 1usize << k).collect()
}

/// Everything that determines an experiment's numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub spec: SequenceSpec,
    pub seed: u64,
    /// Number of sampled `x` values.
    pub alphas: usize,
    pub checkpoints: Vec<usize>,
    pub energy_budget: EnergyBudget,
    /// Hölder checks run at checkpoints whose largest term is at most this.
    pub holder_max_term: u64,
    pub holder_rel_tol: f64,
    pub quadrature: QuadratureBudget,
}

impl ExperimentConfig {
    pub fn new(spec: SequenceSpec) -> Self {
        ExperimentConfig {
            spec,
            seed: DEFAULT_SEED,
            alphas: 50,
            checkpoints: default_checkpoints(),
            energy_budget: EnergyBudget {
                window_limit: 1 << 22,
                dense_span_limit: 1 << 26,
                max_sorted_pairs: 1 << 25,
            },
            holder_max_term: 1 << 16,
            holder_rel_tol: 1e-4,
            quadrature: QuadratureBudget::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceSummary {
    pub terms_generated: usize,
    pub first_index: u64,
    pub skipped: u64,
    pub last_term: u64,
    pub growth_gamma: f64,
    pub convex: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub tool_version: String,
    /// Set by the caller when the report is written; not part of the numbers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<String>,
    pub config: ExperimentConfig,
    pub sequence: SequenceSummary,
    pub energy_profile: EnergyProfile,
    /// Checkpoints whose energy exceeded the budget.
    pub energy_skipped: Vec<usize>,
    pub kappa_fit: Option<ExponentFit>,
    pub alphas: Vec<AlphaValue>,
    pub median_profile: MedianProfile,
    pub tau_fit: ExponentFit,
    /// Exponent known for the family, when there is one.
    pub predicted_tau: Option<f64>,
    /// `(3 - kappa) / 2` from the fitted energy exponent.
    pub tau_from_kappa: Option<f64>,
    pub holder_checks: Vec<HolderCheck>,
    pub holder_all_hold: bool,
}

impl ExperimentReport {
    /// Report with the timestamp removed, for reproducibility comparisons.
    pub fn numeric_view(&self) -> ExperimentReport {
        ExperimentReport { generated_at: None, ..self.clone() }
    }
}

/// Runs energy profile, metric discrepancy experiment and Hölder checks.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let count = *config.checkpoints.iter().max().ok_or(crate::Error::BadCheckpoints)?;
    let seq = generate(&config.spec, count)?;

    let mut energy_points = Vec::new();
    let mut energy_skipped = Vec::new();
    for &n in &config.checkpoints {
        match energy_auto(seq.prefix(n)?, &config.energy_budget) {
            Ok(result) => energy_points.push(EnergyCheckpoint { n, result }),
            Err(e) if e.is_budget() => energy_skipped.push(n),
            Err(e) => return Err(e),
        }
    }
    let energy_profile = EnergyProfile { checkpoints: energy_points };
    let kappa = if energy_profile.checkpoints.len() >= 3 {
        Some(kappa_fit(&energy_profile)?)
    } else {
        None
    };

    let metric = metric_experiment(&seq, config.alphas, config.seed, &config.checkpoints)?;

    let mut holder_checks = Vec::new();
    for &n in &config.checkpoints {
        let prefix = seq.prefix(n)?;
        if prefix[n - 1] > config.holder_max_term {
            continue;
        }
        holder_checks.push(holder_check(
            prefix,
            config.holder_rel_tol,
            &config.energy_budget,
            config.quadrature,
        )?);
    }

    let predicted = match predicted_tau(&config.spec, None) {
        Ok(t) => Some(t),
        Err(crate::Error::NoPrediction(_)) => None,
        Err(e) => return Err(e),
    };

    Ok(ExperimentReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        generated_at: None,
        config: config.clone(),
        sequence: SequenceSummary {
            terms_generated: seq.len(),
            first_index: seq.first_index,
            skipped: seq.skipped,
            last_term: *seq.terms.last().unwrap(),
            growth_gamma: sequences::growth_gamma(&seq.terms)?,
            convex: sequences::is_convex(&seq.terms)?,
        },
        energy_profile,
        energy_skipped,
        kappa_fit: kappa,
        tau_from_kappa: kappa.map(|k| tau_from_kappa(k.slope)),
        alphas: metric.alphas,
        median_profile: metric.profile,
        tau_fit: metric.fit,
        predicted_tau: predicted,
        holder_all_hold: holder_checks.iter().all(|c| c.holds),
        holder_checks,
    })
}

/// Writes `report.json`, `energy_profile.csv`, `median_profile.csv` and
/// `holder.csv` into `dir`.
pub fn write_artifacts(report: &ExperimentReport, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut holder = String::from(HolderCheck::csv_header());
    holder.push('\n');
    for c in &report.holder_checks {
        holder.push_str(&c.csv_row());
        holder.push('\n');
    }
    let json = serde_json::to_string_pretty(report)?;
    fs::write(dir.join("energy_profile.csv"), report.energy_profile.to_csv())?;
    fs::write(dir.join("median_profile.csv"), report.median_profile.to_csv())?;
    fs::write(dir.join("holder.csv"), holder)?;
    fs::write(dir.join("report.json"), json)?;
    Ok(())
}

pub fn read_report(path: &Path) -> Result<ExperimentReport> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}
