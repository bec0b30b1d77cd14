//! Term-by-term checks of decomposition identities.
//!
//! Each identity is evaluated with both sides computed per index `n`, the
//! right side by literally looping over the square divisors it names. A
//! report lists every index where the two sides differ.

use serde::{Deserialize, Serialize};

use crate::arith::FunctionKind;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::sieve::{build_table_with, FunctionTable};
use crate::window::{Window, MAX_ARGUMENT};

/// Largest `x` for the pointwise identities.
pub const MAX_POINTWISE_AUDIT: u64 = 10_000_000;
/// Largest `x` for identities with a double divisor sum.
pub const MAX_SPLIT_AUDIT: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "identity", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Identity {
    /// `μ(n) = λ(n) μ²(n)` for `n <= x`.
    MuEqLambdaMuSquared,
    /// `λ(n) = Σ_{d²|n} μ(n/d²)` for `n <= x`.
    LambdaDivisorSum,
    /// `μ(p+a) = Σ_{d²|p+a} μ(d) λ(p+a)` for primes `p <= x`.
    ShiftedPrimeSplit { shift: i64 },
    /// `μ(n)μ(n+t) = Σ_{d²|n} Σ_{e²|n+t} μ(d)μ(e) λ(n)λ(n+t)`.
    MobiusPairSplit { shift: i64 },
    /// `λ(n)λ(n+t) = Σ_{d²|n} Σ_{e²|n+t} μ(n/d²) μ((n+t)/e²)`.
    LiouvillePairSplit { shift: i64 },
}

impl Identity {
    pub fn name(&self) -> &'static str {
        match self {
            Identity::MuEqLambdaMuSquared => "mu-lambda-musq",
            Identity::LambdaDivisorSum => "lambda-divisor-sum",
            Identity::ShiftedPrimeSplit { .. } => "shifted-prime-split",
            Identity::MobiusPairSplit { .. } => "mobius-pair-split",
            Identity::LiouvillePairSplit { .. } => "liouville-pair-split",
        }
    }

    pub fn shift(&self) -> i64 {
        match *self {
            Identity::ShiftedPrimeSplit { shift }
            | Identity::MobiusPairSplit { shift }
            | Identity::LiouvillePairSplit { shift } => shift,
            _ => 0,
        }
    }

    fn limit(&self) -> u64 {
        match self {
            Identity::MuEqLambdaMuSquared | Identity::LambdaDivisorSum => MAX_POINTWISE_AUDIT,
            _ => MAX_SPLIT_AUDIT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditMismatch {
    pub n: u64,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub identity: Identity,
    pub x: u64,
    pub terms_checked: u64,
    pub lhs_total: i64,
    pub rhs_total: i64,
    pub mismatches: Vec<AuditMismatch>,
    pub holds: bool,
}

pub fn identity_audit(identity: Identity, x: u64) -> Result<AuditReport> {
    identity_audit_with(identity, x, &Config::default())
}

/// Small-valued table over `[1, top]` indexed by `n - 1`.
fn table(kind: FunctionKind, top: u64, config: &Config) -> Result<Vec<i8>> {
    let t: FunctionTable = build_table_with(kind, Window::up_to(top)?, config)?;
    Ok(t.small_values().expect("small kind").to_vec())
}

pub fn identity_audit_with(identity: Identity, x: u64, config: &Config) -> Result<AuditReport> {
    if x == 0 {
        return Err(Error::Domain("x must be at least 1".into()));
    }
    if x > identity.limit() {
        return Err(Error::Guard(format!("audit of {} is limited to x <= {}", identity.name(), identity.limit())));
    }
    let t = identity.shift();
    // indices n in [lo, x] with n + t >= 1
    let lo = if t < 0 { 1 + t.unsigned_abs() } else { 1 };
    let top = x.checked_add_signed(t.max(0)).filter(|&v| v <= MAX_ARGUMENT).ok_or_else(|| {
        Error::Range("x + shift exceeds 2^63 - 1".into())
    })?;
    let at = |v: &[i8], n: u64| v[(n - 1) as usize] as i64;
    let shifted = |n: u64| n.wrapping_add_signed(t);

    let mut pairs: Vec<(u64, i64, i64)> = Vec::new();
    match identity {
        Identity::MuEqLambdaMuSquared => {
            let mu = table(FunctionKind::Mu, x, config)?;
            let lambda = table(FunctionKind::Lambda, x, config)?;
            for n in 1..=x {
                let m = at(&mu, n);
                pairs.push((n, m, at(&lambda, n) * m * m));
            }
        }
        Identity::LambdaDivisorSum => {
            let mu = table(FunctionKind::Mu, x, config)?;
            let lambda = table(FunctionKind::Lambda, x, config)?;
            let mut rhs = vec![0i64; x as usize];
            let mut d = 1u64;
            while d * d <= x {
                for k in 1..=x / (d * d) {
                    rhs[(k * d * d - 1) as usize] += at(&mu, k);
                }
                d += 1;
            }
            for n in 1..=x {
                pairs.push((n, at(&lambda, n), rhs[(n - 1) as usize]));
            }
        }
        Identity::ShiftedPrimeSplit { .. } => {
            let mu = table(FunctionKind::Mu, top, config)?;
            let lambda = table(FunctionKind::Lambda, top, config)?;
            let prime = table(FunctionKind::IsPrime, x, config)?;
            let mut rhs = vec![0i64; x as usize];
            let mut d = 1u64;
            while d * d <= top {
                let mu_d = at(&mu, d);
                if mu_d != 0 {
                    let step = d * d;
                    let mut m = step;
                    while m <= top {
                        if let Some(p) = m.checked_add_signed(-t).filter(|p| (lo..=x).contains(p)) {
                            if at(&prime, p) == 1 {
                                rhs[(p - 1) as usize] += mu_d * at(&lambda, m);
                            }
                        }
                        m += step;
                    }
                }
                d += 1;
            }
            for p in lo..=x {
                if at(&prime, p) == 1 {
                    pairs.push((p, at(&mu, shifted(p)), rhs[(p - 1) as usize]));
                }
            }
        }
        Identity::MobiusPairSplit { .. } | Identity::LiouvillePairSplit { .. } => {
            let mobius = matches!(identity, Identity::MobiusPairSplit { .. });
            let mu = table(FunctionKind::Mu, top, config)?;
            let lambda = table(FunctionKind::Lambda, top, config)?;
            for n in lo..=x {
                let m = shifted(n);
                let lhs = if mobius {
                    at(&mu, n) * at(&mu, m)
                } else {
                    at(&lambda, n) * at(&lambda, m)
                };
                let mut rhs = 0i64;
                let mut d = 1u64;
                while d * d <= n {
                    if n % (d * d) == 0 {
                        let mut e = 1u64;
                        while e * e <= m {
                            if m % (e * e) == 0 {
                                rhs += if mobius {
                                    at(&mu, d) * at(&mu, e) * at(&lambda, n) * at(&lambda, m)
                                } else {
                                    at(&mu, n / (d * d)) * at(&mu, m / (e * e))
                                };
                            }
                            e += 1;
                        }
                    }
                    d += 1;
                }
                pairs.push((n, lhs, rhs));
            }
        }
    }

    let lhs_total = pairs.iter().map(|p| p.1).sum();
    let rhs_total = pairs.iter().map(|p| p.2).sum();
    let mismatches: Vec<AuditMismatch> = pairs
        .iter()
        .filter(|p| p.1 != p.2)
        .map(|&(n, lhs, rhs)| AuditMismatch { n, lhs, rhs })
        .collect();
    Ok(AuditReport {
        identity,
        x,
        terms_checked: pairs.len() as u64,
        lhs_total,
        rhs_total,
        holds: mismatches.is_empty(),
        mismatches,
    })
}
