//! `wreathchar`: characters of wreath products and divisibility censuses.

mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wreathchar::wreath_chars::DEFAULT_CELL_BUDGET;

#[derive(Parser, Debug)]
#[command(
    name = "wreathchar",
    version,
    about = "Exact characters of G ≀ S_N and mod-p censuses"
)]
pub struct Cli {
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, value_name = "N")]
    pub workers: Option<usize>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct GroupSource {
    /// Built-in group: trivial, Z2, Z2xZ2, S3, S4, D8, Q8.
    #[arg(long)]
    pub group: Option<String>,
    /// JSON group description.
    #[arg(long, value_name = "PATH")]
    pub group_file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Interval {
    Wilson,
    Wald,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DnModeArg {
    Exact,
    Sampled,
}

#[derive(Args, Debug, Clone)]
pub struct Sampling {
    /// Number of sampled cells.
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    /// 64-bit seed; drawn at random and echoed when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Confidence level of the interval.
    #[arg(long, default_value_t = 0.99)]
    pub confidence: f64,
    #[arg(long, value_enum, default_value_t = Interval::Wilson)]
    pub interval: Interval,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print χ^λ_μ and the permutation character M^λ_μ.
    Entry {
        #[command(flatten)]
        group: GroupSource,
        /// Irreducible label, e.g. "[[1],[1]]".
        #[arg(long)]
        lambda: String,
        /// Class label, e.g. "[[1,1],[]]".
        #[arg(long)]
        mu: String,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Full character table.
    Table {
        #[command(flatten)]
        group: GroupSource,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
        /// Maximum number of cells.
        #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
        budget: u64,
    },
    /// Mashed canonical form of a class label under ~_p.
    Mash {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Whether two class labels are ~_p equivalent.
    Equiv {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Exact census over the whole table.
    Census {
        #[command(flatten)]
        group: GroupSource,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Census over uniformly sampled cells.
    SampleCensus {
        #[command(flatten)]
        group: GroupSource,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Share of sampled cells with a t-core zero certificate.
    CertCensus {
        /// Number of conjugacy classes of G.
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// ln p_k(n) / ((2π/√6)·√(kn)).
    Asym {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Exact share of multipartitions with all component sizes near n/k.
    Concentration {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Relative window half-width, as a decimal or a fraction.
        #[arg(long)]
        delta: String,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Census of the nonsplit part of the D_N character table.
    DnCensus {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = DnModeArg::Exact)]
        mode: DnModeArg,
        #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
        budget: u64,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Check a group description.
    GroupValidate {
        #[command(flatten)]
        group: GroupSource,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
