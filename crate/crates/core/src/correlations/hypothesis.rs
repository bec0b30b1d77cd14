//! Worst-case discrepancy of shifted-prime sign sums over progressions:
//!
//! ```text
//! Σ_{q<=Q} max_{d mod q} max_{z<=x} | Σ_{p<=z, p≡d (q)} Π f(p + a_i) |
//! ```

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::reduce::ordered_map_reduce;

use super::{fold_domain, Domain, SignFn, TermFn, TermSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisResult {
    pub func: SignFn,
    pub shifts: Vec<i64>,
    pub x: u64,
    /// Largest modulus `Q` summed over.
    pub moduli: u64,
    pub value: u64,
    /// Primes `p <= x` that entered the sums.
    pub prime_count: u64,
    /// `Q · π(x)`, the bound from `|S| <= π(x)` for every modulus.
    pub crude_cap: u64,
}

/// `Q = floor(√x / (ln x)^b)`; `b = 0` gives `floor(√x)` exactly.
pub fn max_modulus(x: u64, b: f64) -> Result<u64> {
    if b.is_nan() || b < 0.0 || b.is_infinite() {
        return Err(Error::Domain(format!("exponent b must be finite and >= 0, got {b}")));
    }
    if x < 3 {
        return Err(Error::Domain(format!("x must be at least 3, got {x}")));
    }
    if b == 0.0 {
        return Ok(x.isqrt());
    }
    let q = (x as f64).sqrt() / (x as f64).ln().powf(b);
    Ok((q.floor() as u64).min(x.isqrt()))
}

pub fn hypothesis_sum(func: SignFn, shifts: &[i64], x: u64, b: f64) -> Result<HypothesisResult> {
    hypothesis_sum_with(func, shifts, x, b, &Config::default())
}

pub fn hypothesis_sum_with(func: SignFn, shifts: &[i64], x: u64, b: f64, config: &Config) -> Result<HypothesisResult> {
    let q = max_modulus(x, b)?;
    hypothesis_sum_for_moduli(func, shifts, x, q, config)
}

/// The same sum with an explicit largest modulus.
pub fn hypothesis_sum_for_moduli(
    func: SignFn,
    shifts: &[i64],
    x: u64,
    moduli: u64,
    config: &Config,
) -> Result<HypothesisResult> {
    if shifts.is_empty() || shifts.len() > 2 {
        return Err(Error::Query(format!("expected one or two shifts, got {}", shifts.len())));
    }
    if shifts.len() == 2 && shifts[0] == shifts[1] {
        return Err(Error::Query("shifts must be distinct".into()));
    }
    let cells = moduli as u128 * (moduli as u128 + 1) / 2;
    if cells > config.hypothesis_cell_budget as u128 {
        return Err(Error::Guard(format!(
            "{cells} residue cells exceed the budget of {}",
            config.hypothesis_cell_budget
        )));
    }
    let terms = TermSpec::uniform(TermFn::from(func), shifts)?;
    let (_, values) = fold_domain(
        &Domain::ShiftedPrimes { x },
        shifts,
        config,
        Vec::new,
        |acc: &mut Vec<(u64, i8)>, p, f| acc.push((p, terms.eval(f, p))),
        |mut a, b| {
            a.extend(b);
            a
        },
    )?;

    // Every running sum starts at 0, so the maximum over z is the running
    // maximum of |S| as primes arrive in increasing order.
    let value = config.install(|| {
        ordered_map_reduce(
            moduli as usize,
            |i| {
                let q = i as u64 + 1;
                let mut sums = vec![0i64; q as usize];
                let mut best = 0u64;
                for &(p, v) in &values {
                    if v != 0 {
                        let s = &mut sums[(p % q) as usize];
                        *s += v as i64;
                        best = best.max(s.unsigned_abs());
                    }
                }
                best
            },
            0u64,
            |a, b| a + b,
        )
    });
    let prime_count = values.len() as u64;
    Ok(HypothesisResult {
        func,
        shifts: shifts.to_vec(),
        x,
        moduli,
        value,
        prime_count,
        crude_cap: moduli * prime_count,
    })
}
