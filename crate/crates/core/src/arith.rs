//! Shared vocabulary for arithmetic-function values.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FunctionKind {
    /// Möbius function μ(n).
    Mu,
    /// Liouville function λ(n) = (−1)^Ω(n).
    Lambda,
    /// Ω(n), prime factors counted with multiplicity.
    BigOmega,
    /// von Mangoldt function, stored structurally as the prime power `p^k`.
    Mangoldt,
    IsPrime,
}

impl FunctionKind {
    pub const ALL: [FunctionKind; 5] = [
        FunctionKind::Mu,
        FunctionKind::Lambda,
        FunctionKind::BigOmega,
        FunctionKind::Mangoldt,
        FunctionKind::IsPrime,
    ];

    pub fn tag(self) -> u8 {
        match self {
            FunctionKind::Mu => 1,
            FunctionKind::Lambda => 2,
            FunctionKind::BigOmega => 3,
            FunctionKind::Mangoldt => 4,
            FunctionKind::IsPrime => 5,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Self> {
        FunctionKind::ALL.into_iter().find(|k| k.tag() == tag)
    }

    pub fn name(self) -> &'static str {
        match self {
            FunctionKind::Mu => "mu",
            FunctionKind::Lambda => "lambda",
            FunctionKind::BigOmega => "big_omega",
            FunctionKind::Mangoldt => "mangoldt",
            FunctionKind::IsPrime => "is_prime",
        }
    }
}

impl std::str::FromStr for FunctionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "mu" | "mobius" => Ok(FunctionKind::Mu),
            "lambda" | "liouville" => Ok(FunctionKind::Lambda),
            "big_omega" | "omega" => Ok(FunctionKind::BigOmega),
            "mangoldt" | "von_mangoldt" => Ok(FunctionKind::Mangoldt),
            "is_prime" | "prime" => Ok(FunctionKind::IsPrime),
            other => Err(format!("unknown function kind `{other}`")),
        }
    }
}

/// `n = prime^exponent` with `exponent >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

impl PrimePower {
    /// Λ(n) = log p, evaluated in double precision.
    pub fn log_prime(&self) -> f64 {
        (self.prime as f64).ln()
    }
}

/// One value of an arithmetic function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArithValue {
    Int(i64),
    /// `None` when the argument is not a prime power.
    PrimePower(Option<PrimePower>),
}

impl std::fmt::Display for ArithValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ArithValue::Int(v) => write!(f, "{v}"),
            ArithValue::PrimePower(Some(pp)) => write!(f, "{}^{}", pp.prime, pp.exponent),
            ArithValue::PrimePower(None) => write!(f, "-"),
        }
    }
}
