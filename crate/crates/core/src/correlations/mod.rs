//! Correlation sums `Σ_{n ∈ D} w(n) Π f_i(n + a_i)` with `f_i ∈ {μ, λ, μ²}`.
//!
//! Unit-weight sums are exact integers. Λ-weighted and reciprocal sums are
//! compensated floating sums reduced in segment order.

mod audit;
mod engine;
mod hypothesis;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::reduce::{Approx, CompensatedSum};
use crate::sieve::Factored;
use crate::window::MAX_ARGUMENT;

pub use audit::{identity_audit, identity_audit_with, AuditMismatch, AuditReport, Identity};
pub(crate) use engine::{fold_domain, Span};
pub use hypothesis::{
    hypothesis_sum, hypothesis_sum_for_moduli, hypothesis_sum_with, max_modulus, HypothesisResult,
};

/// The index set of a sum. All bounds are inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Domain {
    /// `1 <= n <= x`.
    Integers { x: u64 },
    /// Primes `p <= x`.
    ShiftedPrimes { x: u64 },
    /// `x <= n <= x + y`.
    ShortInterval { x: u64, y: u64 },
    /// `1 <= n <= x`, `n ≡ r (mod q)`.
    ArithProgression { x: u64, q: u64, r: u64 },
    /// Primes `p <= x`, `p ≡ r (mod q)`.
    PrimeArithProgression { x: u64, q: u64, r: u64 },
}

impl Domain {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Domain(msg));
        match *self {
            Domain::Integers { x } | Domain::ShiftedPrimes { x } if x == 0 => bad("x must be at least 1".into()),
            Domain::ShortInterval { x, y } => {
                if x == 0 {
                    bad("x must be at least 1".into())
                } else if x.checked_add(y).is_none_or(|hi| hi > MAX_ARGUMENT) {
                    Err(Error::Range(format!("interval end {x} + {y} exceeds 2^63 - 1")))
                } else {
                    Ok(())
                }
            }
            Domain::ArithProgression { x, q, r } | Domain::PrimeArithProgression { x, q, r } => {
                if x == 0 {
                    bad("x must be at least 1".into())
                } else if q == 0 || r >= q {
                    bad(format!("progression needs 0 <= r < q, got r = {r}, q = {q}"))
                } else {
                    Ok(())
                }
            }
            _ => {
                if self.upper() > MAX_ARGUMENT {
                    Err(Error::Range("x exceeds 2^63 - 1".into()))
                } else {
                    Ok(())
                }
            }
        }
    }

    fn upper(&self) -> u64 {
        match *self {
            Domain::Integers { x }
            | Domain::ShiftedPrimes { x }
            | Domain::ArithProgression { x, .. }
            | Domain::PrimeArithProgression { x, .. } => x,
            Domain::ShortInterval { x, y } => x + y,
        }
    }

    pub(crate) fn span(&self) -> Span {
        match *self {
            Domain::Integers { x } => Span { lo: 1, hi: x, primes_only: false, progression: None },
            Domain::ShiftedPrimes { x } => Span { lo: 1, hi: x, primes_only: true, progression: None },
            Domain::ShortInterval { x, y } => Span { lo: x, hi: x + y, primes_only: false, progression: None },
            Domain::ArithProgression { x, q, r } => Span { lo: 1, hi: x, primes_only: false, progression: Some((q, r)) },
            Domain::PrimeArithProgression { x, q, r } => {
                Span { lo: 1, hi: x, primes_only: true, progression: Some((q, r)) }
            }
        }
    }

    fn admits_von_mangoldt(&self) -> bool {
        matches!(self, Domain::Integers { .. } | Domain::ShortInterval { .. })
    }

    pub fn is_primes(&self) -> bool {
        matches!(self, Domain::ShiftedPrimes { .. } | Domain::PrimeArithProgression { .. })
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Domain::Integers { x } => write!(f, "integers(x={x})"),
            Domain::ShiftedPrimes { x } => write!(f, "primes(x={x})"),
            Domain::ShortInterval { x, y } => write!(f, "short(x={x},y={y})"),
            Domain::ArithProgression { x, q, r } => write!(f, "ap(x={x},q={q},r={r})"),
            Domain::PrimeArithProgression { x, q, r } => write!(f, "prime-ap(x={x},q={q},r={r})"),
        }
    }
}

/// A ±1-valued (μ admits 0) sign function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SignFn {
    Mu,
    Lambda,
}

impl SignFn {
    #[inline]
    pub(crate) fn eval(self, f: &Factored, n: u64) -> i8 {
        match self {
            SignFn::Mu => f.mu(n),
            SignFn::Lambda => f.lambda(n),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SignFn::Mu => "mu",
            SignFn::Lambda => "lambda",
        }
    }
}

impl FromStr for SignFn {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mu" | "mobius" => Ok(SignFn::Mu),
            "lambda" | "liouville" => Ok(SignFn::Lambda),
            other => Err(format!("unknown sign function `{other}` (expected mu or lambda)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TermFn {
    Mu,
    Lambda,
    MuSquared,
}

impl TermFn {
    #[inline]
    fn eval(self, f: &Factored, n: u64) -> i8 {
        match self {
            TermFn::Mu => f.mu(n),
            TermFn::Lambda => f.lambda(n),
            TermFn::MuSquared => f.mu_squared(n),
        }
    }

    fn name(self) -> &'static str {
        match self {
            TermFn::Mu => "mu",
            TermFn::Lambda => "lambda",
            TermFn::MuSquared => "musq",
        }
    }
}

impl From<SignFn> for TermFn {
    fn from(s: SignFn) -> Self {
        match s {
            SignFn::Mu => TermFn::Mu,
            SignFn::Lambda => TermFn::Lambda,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub shift: i64,
    pub func: TermFn,
}

/// Product of shifted factors. μ³ is written as `musq@a,mu@a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermSpec {
    factors: Vec<Factor>,
}

impl TermSpec {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Query("a term needs at least one factor".into()));
        }
        Ok(TermSpec { factors })
    }

    /// `Π func(n + a)` over `shifts`.
    pub fn uniform(func: TermFn, shifts: &[i64]) -> Result<Self> {
        TermSpec::new(shifts.iter().map(|&shift| Factor { shift, func }).collect())
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn shifts(&self) -> Vec<i64> {
        self.factors.iter().map(|f| f.shift).collect()
    }

    #[inline]
    pub(crate) fn eval(&self, f: &Factored, n: u64) -> i8 {
        let mut product = 1i8;
        for factor in &self.factors {
            product *= factor.func.eval(f, n.wrapping_add_signed(factor.shift));
            if product == 0 {
                break;
            }
        }
        product
    }
}

impl fmt::Display for TermSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| format!("{}@{}", x.func.name(), x.shift)).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for TermSpec {
    type Err = Error;

    /// Parses `mu@0,lambda@1,musq@-2`.
    fn from_str(s: &str) -> Result<Self> {
        let factors = s
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|part| {
                let (name, shift) = part
                    .split_once('@')
                    .ok_or_else(|| Error::Query(format!("factor `{part}` must look like fn@shift")))?;
                let func = match name.to_ascii_lowercase().as_str() {
                    "mu" => TermFn::Mu,
                    "lambda" => TermFn::Lambda,
                    "musq" | "mu2" | "mu_squared" => TermFn::MuSquared,
                    other => return Err(Error::Query(format!("unknown factor function `{other}`"))),
                };
                let shift = shift
                    .parse()
                    .map_err(|_| Error::Query(format!("bad shift in `{part}`")))?;
                Ok(Factor { shift, func })
            })
            .collect::<Result<Vec<_>>>()?;
        TermSpec::new(factors)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Weight {
    Unit,
    /// Λ(n); only over integer domains.
    VonMangoldt,
    /// 1/n.
    Reciprocal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CorrelationValue {
    Exact(i64),
    Approx(Approx),
}

impl CorrelationValue {
    pub fn exact(&self) -> Option<i64> {
        match self {
            CorrelationValue::Exact(v) => Some(*v),
            CorrelationValue::Approx(_) => None,
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            CorrelationValue::Exact(v) => *v as f64,
            CorrelationValue::Approx(a) => a.value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationResult {
    pub domain: Domain,
    pub weight: Weight,
    pub terms: TermSpec,
    /// Lower end after raising it so that every `n + shift >= 1`.
    pub effective_lo: u64,
    pub value: CorrelationValue,
    /// Number of domain elements summed over.
    pub term_count: u64,
}

#[derive(Default)]
struct Accumulator {
    exact: i64,
    float: CompensatedSum,
    count: u64,
}

pub fn correlate(domain: Domain, weight: Weight, terms: &TermSpec) -> Result<CorrelationResult> {
    correlate_with(domain, weight, terms, &Config::default())
}

pub fn correlate_with(domain: Domain, weight: Weight, terms: &TermSpec, config: &Config) -> Result<CorrelationResult> {
    if weight == Weight::VonMangoldt && !domain.admits_von_mangoldt() {
        return Err(Error::Query(format!("von Mangoldt weight is not defined over {domain}")));
    }
    let shifts = terms.shifts();
    let (span, acc) = fold_domain(
        &domain,
        &shifts,
        config,
        Accumulator::default,
        |acc: &mut Accumulator, n, f| {
            acc.count += 1;
            match weight {
                Weight::Unit => acc.exact += terms.eval(f, n) as i64,
                Weight::VonMangoldt => {
                    if let Some(pp) = f.prime_power(n) {
                        let v = terms.eval(f, n);
                        if v != 0 {
                            acc.float.add(v as f64 * pp.log_prime());
                        }
                    }
                }
                Weight::Reciprocal => {
                    let v = terms.eval(f, n);
                    if v != 0 {
                        acc.float.add(v as f64 / n as f64);
                    }
                }
            }
        },
        |mut a, b| {
            a.exact += b.exact;
            a.float.merge(&b.float);
            a.count += b.count;
            a
        },
    )?;
    let value = match weight {
        Weight::Unit => CorrelationValue::Exact(acc.exact),
        _ => CorrelationValue::Approx(acc.float.approx(f64::EPSILON)),
    };
    Ok(CorrelationResult {
        domain,
        weight,
        terms: terms.clone(),
        effective_lo: span.map_or(domain.span().hi + 1, |s| s.lo),
        value,
        term_count: acc.count,
    })
}

/// `Σ_{n<=x} Π f_i(n + a_i) / n`.
pub fn log_average(terms: &TermSpec, x: u64) -> Result<Approx> {
    log_average_with(terms, x, &Config::default())
}

pub fn log_average_with(terms: &TermSpec, x: u64, config: &Config) -> Result<Approx> {
    match correlate_with(Domain::Integers { x }, Weight::Reciprocal, terms, config)?.value {
        CorrelationValue::Approx(a) => Ok(a),
        CorrelationValue::Exact(_) => unreachable!("reciprocal weight is floating"),
    }
}
