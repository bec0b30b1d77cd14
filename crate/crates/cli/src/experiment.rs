//! A fully resolved run: what to compute, how to schedule it, how to print it.

use std::path::PathBuf;

use acor::correlations::{Domain, Identity, TermSpec, Weight};
use acor::patterns::SignFn;
use acor::sieve::SummatoryKind;
use acor::{Config, FunctionKind};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ConstantName {
    /// Every constant below at the given cutoff.
    All,
    S0,
    S0Series,
    Zeta2inv,
    Zeta2invProduct,
    S1,
    S2,
    S3,
    /// Joint squarefree density of `q·n + a_i` for `--q` and `--shifts`.
    Tuple,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "snake_case")]
pub enum Command {
    Table { kind: FunctionKind, lo: u64, hi: u64 },
    Sum { kind: SummatoryKind, x: u64 },
    Correlate { domain: Domain, weight: Weight, terms: TermSpec },
    Census { func: SignFn, shifts: Vec<i64>, domain: Domain },
    Constants { name: ConstantName, cutoff: u64, q: i64, shifts: Vec<i64> },
    Hypothesis { func: SignFn, shifts: Vec<i64>, x: u64, b: f64 },
    Audit { identity: Identity, x: u64 },
    Repro,
    Bench { x: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub command: Command,
    pub format: OutputFormat,
    /// 0 uses every available core.
    pub threads: usize,
    pub segment_size: usize,
    pub cache_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn engine(&self) -> Config {
        Config::default().with_threads(self.threads).with_segment_size(self.segment_size)
    }
}
