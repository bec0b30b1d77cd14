use std::path::PathBuf;

use acor::config::DEFAULT_SEGMENT_SIZE;
use acor::correlations::{Domain, Identity, TermSpec, Weight};
use acor::patterns::SignFn;
use acor::sieve::SummatoryKind;
use acor::FunctionKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::experiment::{Command, ConstantName, ExperimentConfig, OutputFormat};

#[derive(Debug, Parser)]
#[command(name = "acor", version, about = "Möbius and Liouville correlations, sign patterns and Euler-product constants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<CommandArgs>,

    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: OutputFormat,

    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    /// Integers sieved per segment. Floating results depend on this, not on --threads.
    #[arg(long, global = true, default_value_t = DEFAULT_SEGMENT_SIZE)]
    pub segment_size: usize,

    /// Directory for cached tables (overrides ACOR_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Run the experiment stored in a JSON file instead of a subcommand.
    #[arg(long, conflicts_with = "print_config")]
    pub config: Option<PathBuf>,

    /// Print the resolved experiment as JSON and exit.
    #[arg(long, global = true)]
    pub print_config: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DomainKind {
    Integers,
    Primes,
    Short,
    Ap,
    PrimeAp,
}

#[derive(Debug, Args)]
pub struct DomainArgs {
    #[arg(long, value_enum, default_value = "integers")]
    pub domain: DomainKind,
    /// Upper bound, or start of a short interval.
    #[arg(long)]
    pub x: u64,
    /// Short interval length.
    #[arg(long, default_value_t = 0)]
    pub y: u64,
    /// Progression modulus.
    #[arg(long, default_value_t = 1)]
    pub q: u64,
    /// Progression residue.
    #[arg(long, default_value_t = 0)]
    pub r: u64,
}

impl DomainArgs {
    fn resolve(&self) -> Domain {
        let (x, y, q, r) = (self.x, self.y, self.q, self.r);
        match self.domain {
            DomainKind::Integers => Domain::Integers { x },
            DomainKind::Primes => Domain::ShiftedPrimes { x },
            DomainKind::Short => Domain::ShortInterval { x, y },
            DomainKind::Ap => Domain::ArithProgression { x, q, r },
            DomainKind::PrimeAp => Domain::PrimeArithProgression { x, q, r },
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum WeightArg {
    Unit,
    VonMangoldt,
    Reciprocal,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum IdentityName {
    /// μ(n) = λ(n)μ²(n).
    MuLambdaMusq,
    /// λ(n) = Σ_{d²|n} μ(n/d²).
    LambdaDivisorSum,
    /// μ(p+a) split over square divisors of p+a.
    ShiftedPrimeSplit,
    /// μ(n)μ(n+t) split over square divisors of n and n+t.
    MobiusPairSplit,
    /// λ(n)λ(n+t) split over square divisors of n and n+t.
    LiouvillePairSplit,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Values of one arithmetic function over [lo, hi].
    Table {
        #[arg(long)]
        kind: FunctionKind,
        #[arg(long)]
        lo: u64,
        #[arg(long)]
        hi: u64,
    },
    /// Summatory function up to x: mu, lambda, musq, pi or psi.
    Sum {
        #[arg(long)]
        kind: SummatoryKind,
        #[arg(long)]
        x: u64,
    },
    /// Correlation sum of shifted factors, e.g. --terms mu@0,mu@1.
    Correlate {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, value_enum, default_value = "unit")]
        weight: WeightArg,
        #[arg(long, allow_hyphen_values = true)]
        terms: TermSpec,
    },
    /// Counts of every sign pattern of mu or lambda at the given shifts.
    Census {
        #[arg(long = "fn")]
        func: SignFn,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        shifts: Vec<i64>,
        #[command(flatten)]
        domain: DomainArgs,
    },
    /// Euler-product and series constants with tail bounds.
    Constants {
        #[arg(long, value_enum, default_value = "all")]
        name: ConstantName,
        /// Prime cutoff of products and term count of series.
        #[arg(long, default_value_t = 1_000_000)]
        cutoff: u64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        q: i64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,1")]
        shifts: Vec<i64>,
    },
    /// Maximal shifted-prime sign sums over progressions to moduli up to √x/(ln x)^b.
    Hypothesis {
        #[arg(long = "fn")]
        func: SignFn,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        shifts: Vec<i64>,
        #[arg(long)]
        x: u64,
        #[arg(long, default_value_t = 0.0)]
        b: f64,
    },
    /// Term-by-term check of a decomposition identity.
    Audit {
        #[arg(long, value_enum)]
        identity: IdentityName,
        #[arg(long)]
        x: u64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        shift: i64,
    },
    /// Recompute the published exact values and constants.
    Repro,
    /// Time the main engines at size x.
    Bench {
        #[arg(long, default_value_t = 10_000_000)]
        x: u64,
    },
}

impl CommandArgs {
    pub fn resolve(self) -> Command {
        match self {
            CommandArgs::Table { kind, lo, hi } => Command::Table { kind, lo, hi },
            CommandArgs::Sum { kind, x } => Command::Sum { kind, x },
            CommandArgs::Correlate { domain, weight, terms } => Command::Correlate {
                domain: domain.resolve(),
                weight: match weight {
                    WeightArg::Unit => Weight::Unit,
                    WeightArg::VonMangoldt => Weight::VonMangoldt,
                    WeightArg::Reciprocal => Weight::Reciprocal,
                },
                terms,
            },
            CommandArgs::Census { func, shifts, domain } => Command::Census { func, shifts, domain: domain.resolve() },
            CommandArgs::Constants { name, cutoff, q, shifts } => Command::Constants { name, cutoff, q, shifts },
            CommandArgs::Hypothesis { func, shifts, x, b } => Command::Hypothesis { func, shifts, x, b },
            CommandArgs::Audit { identity, x, shift } => Command::Audit {
                identity: match identity {
                    IdentityName::MuLambdaMusq => Identity::MuEqLambdaMuSquared,
                    IdentityName::LambdaDivisorSum => Identity::LambdaDivisorSum,
                    IdentityName::ShiftedPrimeSplit => Identity::ShiftedPrimeSplit { shift },
                    IdentityName::MobiusPairSplit => Identity::MobiusPairSplit { shift },
                    IdentityName::LiouvillePairSplit => Identity::LiouvillePairSplit { shift },
                },
                x,
            },
            CommandArgs::Repro => Command::Repro,
            CommandArgs::Bench { x } => Command::Bench { x },
        }
    }
}

impl Cli {
    /// Flags on the command line win over the environment.
    pub fn experiment(self, command: Command) -> ExperimentConfig {
        ExperimentConfig {
            command,
            format: self.format,
            threads: self.threads,
            segment_size: self.segment_size,
            cache_dir: self.cache_dir.or_else(acor::cache::dir_from_env),
        }
    }
}
