//! Reference values by trial division and direct loops.
//!
//! Nothing here touches the sieve: the oracle exists to disagree with it
//! when the sieve is wrong.

use serde::{Deserialize, Serialize};

use crate::arith::{ArithValue, FunctionKind, PrimePower};
use crate::error::{Error, Result};
use crate::sieve::FunctionTable;
use crate::window::Window;

pub const MAX_ORACLE_ARGUMENT: u64 = 1_000_000_000_000;
pub const MAX_CHECK_WIDTH: u64 = 1_000_000;

/// Prime factorization `[(p, e)]` by trial division, ascending in `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

pub fn naive_value(kind: FunctionKind, n: u64) -> Result<ArithValue> {
    if n == 0 {
        return Err(Error::Domain("arithmetic functions are defined for n >= 1".into()));
    }
    if n > MAX_ORACLE_ARGUMENT {
        return Err(Error::Range(format!("oracle argument {n} exceeds 10^12")));
    }
    let factors = factorize(n);
    let big_omega: u32 = factors.iter().map(|&(_, e)| e).sum();
    Ok(match kind {
        FunctionKind::Mu => {
            if factors.iter().any(|&(_, e)| e > 1) {
                ArithValue::Int(0)
            } else if factors.len().is_multiple_of(2) {
                ArithValue::Int(1)
            } else {
                ArithValue::Int(-1)
            }
        }
        FunctionKind::Lambda => ArithValue::Int(if big_omega.is_multiple_of(2) { 1 } else { -1 }),
        FunctionKind::BigOmega => ArithValue::Int(big_omega as i64),
        FunctionKind::IsPrime => ArithValue::Int((factors.len() == 1 && big_omega == 1) as i64),
        FunctionKind::Mangoldt => ArithValue::PrimePower(match factors.as_slice() {
            [(p, e)] => Some(PrimePower { prime: *p, exponent: *e }),
            _ => None,
        }),
    })
}

fn naive_int(kind: FunctionKind, n: u64) -> Result<i64> {
    match naive_value(kind, n)? {
        ArithValue::Int(v) => Ok(v),
        ArithValue::PrimePower(_) => unreachable!("integer kinds only"),
    }
}

pub fn naive_mu(n: u64) -> Result<i64> {
    naive_int(FunctionKind::Mu, n)
}

pub fn naive_lambda(n: u64) -> Result<i64> {
    naive_int(FunctionKind::Lambda, n)
}

/// λ(n) evaluated as Σ_{d²|n} μ(n/d²).
pub fn lambda_via_identity(n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let mut total = 0;
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d * d) {
            total += naive_mu(n / (d * d))?;
        }
        d += 1;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub n: u64,
    pub expected: ArithValue,
    pub got: ArithValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub kind: FunctionKind,
    pub checked_window: Window,
    pub mismatches: Vec<Mismatch>,
}

impl OracleReport {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares every entry of `table` over `window` against trial division.
pub fn check_window(kind: FunctionKind, window: Window, table: &FunctionTable) -> Result<OracleReport> {
    if window.len() > MAX_CHECK_WIDTH {
        return Err(Error::Guard(format!(
            "oracle check width {} exceeds {MAX_CHECK_WIDTH}",
            window.len()
        )));
    }
    if table.kind() != kind {
        return Err(Error::Query(format!("table holds {}, not {}", table.kind().name(), kind.name())));
    }
    let mut mismatches = Vec::new();
    for n in window.lo()..=window.hi() {
        let expected = naive_value(kind, n)?;
        let got = table
            .get(n)
            .ok_or_else(|| Error::Query(format!("table does not cover {n}")))?;
        if expected != got {
            mismatches.push(Mismatch { n, expected, got });
        }
    }
    Ok(OracleReport { kind, checked_window: window, mismatches })
}

/// Primes in `[lo, hi]` by trial division.
pub fn naive_primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi)
        .filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .collect()
}
