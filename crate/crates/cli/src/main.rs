//! `edisc`: additive energy and metric discrepancy experiments from the command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};

use energy_discrepancy::discrepancy::{discrepancy_profile, metric_experiment, AlphaValue};
use energy_discrepancy::energy::{
    energy_bruteforce, energy_by_differences, energy_convolution, energy_profile, kappa_fit,
    EnergyBudget, EnergyCheckpoint, EnergyProfile, DEFAULT_WINDOW_LIMIT,
};
use energy_discrepancy::expsum::{holder_check, HolderCheck, QuadratureBudget};
use energy_discrepancy::harness::experiment::{
    default_checkpoints, read_report, run_experiment, write_artifacts, ExperimentConfig, DEFAULT_SEED,
};
use energy_discrepancy::harness::verify::{rs_verify, verify, Suite, VerifySummary};
use energy_discrepancy::sequences::{generate, SequenceSpec};
use energy_discrepancy::Error;

#[derive(Parser)]
#[command(name = "edisc", version, about = "Additive energy, star-discrepancy and exponential sums of integer sequences")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for the sampled x values.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write results into this directory instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Comma-separated N values; `2^k` allowed. Default 2^8,...,2^15.
    #[arg(long, global = true, value_parser = parse_checkpoints)]
    checkpoints: Option<Checkpoints>,
    /// Number of sampled x values.
    #[arg(long, global = true)]
    alphas: Option<usize>,
    /// Relative tolerance of the L1 quadrature.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone)]
struct Checkpoints(Vec<usize>);

#[derive(Subcommand)]
enum Command {
    /// Print the first terms of a sequence.
    Generate {
        /// Sequence spec as inline JSON or a path to a JSON file.
        spec: String,
        /// Number of terms (default: largest checkpoint).
        #[arg(long)]
        count: Option<usize>,
    },
    /// Additive energy at each checkpoint.
    Energy {
        spec: String,
        #[arg(long, value_enum, default_value_t = Backend::Auto)]
        backend: Backend,
    },
    /// N D_N* at each checkpoint for one x, or median bands over sampled x.
    Discrepancy {
        spec: String,
        /// A single x: hex `0x...` (numerator over 2^128), `p/q` or a decimal.
        #[arg(long)]
        alpha: Option<AlphaValue>,
    },
    /// L1 and fourth-moment quadrature with the Hölder bound at each checkpoint.
    Expsum { spec: String },
    /// Rudin-Shapiro identities and bounds.
    RsVerify {
        #[arg(long, default_value_t = 12)]
        max_n: u32,
        #[arg(long, default_value_t = 1_000_000)]
        max_l: u64,
    },
    /// Full experiment: energy exponent, discrepancy exponent, Hölder checks.
    Experiment {
        #[arg(required_unless_present = "from_report", conflicts_with = "from_report")]
        spec: Option<String>,
        /// Rerun the configuration embedded in a report and compare numbers.
        #[arg(long)]
        from_report: Option<PathBuf>,
    },
    /// Invariant suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Backend {
    Auto,
    Bruteforce,
    Histogram,
    Convolution,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Energy,
    Discrepancy,
    Expsum,
    Rs,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Energy => Suite::Energy,
            SuiteArg::Discrepancy => Suite::Discrepancy,
            SuiteArg::Expsum => Suite::Expsum,
            SuiteArg::Rs => Suite::Rs,
            SuiteArg::All => Suite::All,
        }
    }
}

fn parse_checkpoints(s: &str) -> Result<Checkpoints, String> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let n = match tok.strip_prefix("2^") {
            Some(k) => {
                let k: u32 = k.parse().map_err(|_| format!("bad exponent in `{tok}`"))?;
                1usize.checked_shl(k).filter(|_| k < 63).ok_or(format!("`{tok}` is too large"))?
            }
            None => tok.parse().map_err(|_| format!("`{tok}` is not a positive integer"))?,
        };
        out.push(n);
    }
    if out.is_empty() || out[0] == 0 || out.windows(2).any(|w| w[0] >= w[1]) {
        return Err("checkpoints must be positive and strictly increasing".into());
    }
    Ok(Checkpoints(out))
}

enum Failure {
    Verification(String),
    Usage(String),
    Budget(String),
    Other(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification(_) | Failure::Other(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Usage(m) | Failure::Budget(m) | Failure::Other(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        if e.is_budget() {
            return Failure::Budget(msg);
        }
        match e {
            Error::InvalidParameter(_)
            | Error::BadCheckpoints
            | Error::CheckpointOutOfRange { .. }
            | Error::NotStrictlyIncreasing { .. }
            | Error::TooFewTerms { .. }
            | Error::EmptyInput
            | Error::NoPrediction(_)
            | Error::Json(_) => Failure::Usage(msg),
            _ => Failure::Other(msg),
        }
    }
}

type Outcome<T = ()> = Result<T, Failure>;

fn load_spec(arg: &str) -> Outcome<SequenceSpec> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("cannot read spec `{arg}`: {e}")))?
    };
    let spec: SequenceSpec =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("bad spec: {e}")))?;
    spec.validate()?;
    Ok(spec)
}

/// Writes `body` to `<out>/<name>` or stdout.
fn emit(global: &Global, name: &str, body: &str) -> Outcome {
    match &global.out {
        Some(dir) => {
            let io = |e: std::io::Error| Failure::Other(format!("{}: {e}", dir.display()));
            fs::create_dir_all(dir).map_err(io)?;
            fs::write(dir.join(name), body).map_err(io)?;
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> Outcome<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::Other(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn checkpoints(global: &Global) -> Vec<usize> {
    global.checkpoints.clone().map_or_else(default_checkpoints, |c| c.0)
}

fn cmd_generate(global: &Global, spec: &str, count: Option<usize>) -> Outcome {
    let spec = load_spec(spec)?;
    let count = count.unwrap_or_else(|| *checkpoints(global).last().unwrap());
    let seq = generate(&spec, count)?;
    match global.format {
        Format::Json => emit(global, "sequence.json", &to_json(&seq)?),
        Format::Csv => {
            let mut csv = String::from("n,a_n\n");
            for (i, a) in seq.terms.iter().enumerate() {
                csv.push_str(&format!("{},{a}\n", i + 1));
            }
            emit(global, "sequence.csv", &csv)
        }
    }
}

fn cmd_energy(global: &Global, spec: &str, backend: Backend) -> Outcome {
    let spec = load_spec(spec)?;
    let cps = checkpoints(global);
    let seq = generate(&spec, *cps.last().unwrap())?;
    let budget = EnergyBudget::default();
    let profile = match backend {
        Backend::Auto => energy_profile(&seq, &cps, &budget)?,
        _ => {
            let mut rows = Vec::new();
            for &n in &cps {
                let terms = seq.prefix(n)?;
                let result = match backend {
                    Backend::Bruteforce => energy_bruteforce(terms)?,
                    Backend::Histogram => energy_by_differences(terms, &budget)?,
                    _ => energy_convolution(terms, DEFAULT_WINDOW_LIMIT)?,
                };
                rows.push(EnergyCheckpoint { n, result });
            }
            EnergyProfile { checkpoints: rows }
        }
    };
    match global.format {
        Format::Csv => emit(global, "energy_profile.csv", &profile.to_csv()),
        Format::Json => {
            let fit = if profile.checkpoints.len() >= 3 { Some(kappa_fit(&profile)?) } else { None };
            let body = serde_json::json!({ "profile": profile, "kappa_fit": fit });
            emit(global, "energy_profile.json", &to_json(&body)?)
        }
    }
}

fn cmd_discrepancy(global: &Global, spec: &str, alpha: Option<AlphaValue>) -> Outcome {
    let spec = load_spec(spec)?;
    let cps = checkpoints(global);
    let seq = generate(&spec, *cps.last().unwrap())?;
    match alpha {
        Some(alpha) => {
            let p = discrepancy_profile(&seq, alpha, &cps)?;
            match global.format {
                Format::Csv => emit(global, "discrepancy_profile.csv", &p.to_csv()),
                Format::Json => emit(global, "discrepancy_profile.json", &to_json(&p)?),
            }
        }
        None => {
            let m = metric_experiment(&seq, global.alphas.unwrap_or(50), global.seed, &cps)?;
            match global.format {
                Format::Csv => emit(global, "median_profile.csv", &m.profile.to_csv()),
                Format::Json => emit(global, "median_profile.json", &to_json(&m)?),
            }
        }
    }
}

fn cmd_expsum(global: &Global, spec: &str) -> Outcome {
    let spec = load_spec(spec)?;
    let cps = checkpoints(global);
    let seq = generate(&spec, *cps.last().unwrap())?;
    let tol = global.tol.unwrap_or(1e-6);
    let mut rows = Vec::new();
    for &n in &cps {
        rows.push(holder_check(seq.prefix(n)?, tol, &EnergyBudget::default(), QuadratureBudget::default())?);
    }
    match global.format {
        Format::Csv => {
            let mut csv = format!("{}\n", HolderCheck::csv_header());
            for r in &rows {
                csv.push_str(&r.csv_row());
                csv.push('\n');
            }
            emit(global, "holder.csv", &csv)?;
        }
        Format::Json => emit(global, "holder.json", &to_json(&rows)?)?,
    }
    match rows.iter().find(|r| !r.holds) {
        Some(r) => Err(Failure::Verification(format!("Hölder bound violated at N = {}", r.n))),
        None => Ok(()),
    }
}

fn report_summary(global: &Global, name: &str, summary: &VerifySummary) -> Outcome {
    match global.format {
        Format::Json => emit(global, &format!("{name}.json"), &to_json(summary)?)?,
        Format::Csv => {
            let mut csv = String::from("check,passed,detail\n");
            for c in &summary.checks {
                csv.push_str(&format!("{},{},\"{}\"\n", c.name, c.passed, c.detail.replace('"', "'")));
            }
            emit(global, &format!("{name}.csv"), &csv)?;
        }
    }
    if global.out.is_some() || global.format == Format::Json {
        eprintln!("{summary}");
    }
    if summary.passed() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "{} of {} checks failed",
            summary.checks.iter().filter(|c| !c.passed).count(),
            summary.checks.len()
        )))
    }
}

fn timestamp() -> String {
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    format!("{secs}")
}

fn cmd_experiment(global: &Global, spec: Option<&str>, from_report: Option<&Path>) -> Outcome {
    if let Some(path) = from_report {
        let embedded = read_report(path)?;
        let rerun = run_experiment(&embedded.config)?;
        let same = serde_json::to_value(rerun.numeric_view()).ok() == serde_json::to_value(embedded.numeric_view()).ok();
        if let Some(dir) = &global.out {
            let mut report = rerun;
            report.generated_at = Some(timestamp());
            write_artifacts(&report, dir)?;
        }
        return if same {
            eprintln!("rerun of {} reproduces every numeric field", path.display());
            Ok(())
        } else {
            Err(Failure::Verification(format!("rerun of {} differs from the embedded report", path.display())))
        };
    }

    let spec = load_spec(spec.expect("clap enforces spec or --from-report"))?;
    let mut config = ExperimentConfig::new(spec);
    config.seed = global.seed;
    if let Some(m) = global.alphas {
        config.alphas = m;
    }
    if let Some(c) = &global.checkpoints {
        config.checkpoints = c.0.clone();
    }
    if let Some(t) = global.tol {
        config.holder_rel_tol = t;
    }
    let mut report = run_experiment(&config)?;
    report.generated_at = Some(timestamp());
    match &global.out {
        Some(dir) => write_artifacts(&report, dir)?,
        None => match global.format {
            Format::Json => print!("{}", to_json(&report)?),
            Format::Csv => print!("{}", report.median_profile.to_csv()),
        },
    }
    let tau = report.tau_fit.slope;
    let kappa = report.kappa_fit.map_or("n/a".to_string(), |f| format!("{:.4}", f.slope));
    eprintln!("kappa {kappa}, tau {tau:.4}, Hölder {}", if report.holder_all_hold { "holds" } else { "VIOLATED" });
    if report.holder_all_hold {
        Ok(())
    } else {
        Err(Failure::Verification("Hölder bound violated".into()))
    }
}

fn run(cli: Cli) -> Outcome {
    let g = &cli.global;
    if let Some(t) = g.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Failure::Usage(format!("--tol must be positive, got {t}")));
        }
    }
    match &cli.command {
        Command::Generate { spec, count } => cmd_generate(g, spec, *count),
        Command::Energy { spec, backend } => cmd_energy(g, spec, *backend),
        Command::Discrepancy { spec, alpha } => cmd_discrepancy(g, spec, *alpha),
        Command::Expsum { spec } => cmd_expsum(g, spec),
        Command::RsVerify { max_n, max_l } => {
            if *max_n > 22 {
                return Err(Failure::Usage(format!("--max-n {max_n} exceeds 22")));
            }
            let summary = rs_verify(*max_n, *max_l, g.alphas.unwrap_or(100), g.seed);
            report_summary(g, "rs_verify", &summary)
        }
        Command::Experiment { spec, from_report } => cmd_experiment(g, spec.as_deref(), from_report.as_deref()),
        Command::Verify { suite } => report_summary(g, "verify", &verify((*suite).into(), g.seed)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("edisc: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
