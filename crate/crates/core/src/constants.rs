//! Euler products and Dirichlet series behind the density predictions.
//!
//! Products are summed in log space (`Σ log(1 - c_p)`, compensated, in
//! ascending prime order) and exponentiated once. Tail bounds are the crude
//! `1/cutoff`-type bounds; tighter values come from raising the cutoff.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reduce::{ordered_map_reduce, CompensatedSum};
use crate::sieve::primes_up_to;

const PRIME_CHUNK: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    EulerProduct,
    DirichletSeries,
    ClosedForm,
}

/// A constant with the truncation point used and an absolute bound on
/// `|value - limit|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantResult {
    pub value: f64,
    /// Largest prime in the product, or number of series terms.
    pub cutoff: u64,
    pub tail_bound: f64,
    pub method: Method,
}

/// Values as printed in the literature, kept for side-by-side reporting.
pub fn published_value(name: &str) -> Option<&'static str> {
    match name {
        "s0" => Some("0.373955838964330040631201"),
        "zeta2inv" => Some("0.607988295164627617135754"),
        "s1" => Some("0.32263461660543396347"),
        "s2" => Some("0.106780412897381"),
        "s3" => Some("0.142646242624296"),
        _ => None,
    }
}

/// `Π (1 - c_p)` over `primes`, with `c_p = local(p)`, in log space.
/// Returns `None` when some factor vanishes.
fn euler_product(primes: &[u64], local: impl Fn(u64) -> f64 + Sync + Send) -> Option<(f64, f64)> {
    let chunks = primes.len().div_ceil(PRIME_CHUNK);
    let (sum, zero) = ordered_map_reduce(
        chunks,
        |i| {
            let chunk = &primes[i * PRIME_CHUNK..((i + 1) * PRIME_CHUNK).min(primes.len())];
            let mut acc = CompensatedSum::new();
            let mut zero = false;
            for &p in chunk {
                let c = local(p);
                if c >= 1.0 {
                    zero = true;
                } else {
                    acc.add((-c).ln_1p());
                }
            }
            (acc, zero)
        },
        (CompensatedSum::new(), false),
        |(mut acc, z), (part, pz)| {
            acc.merge(&part);
            (acc, z || pz)
        },
    );
    if zero {
        return None;
    }
    let value = sum.value().exp();
    // ln_1p and exp are faithful to a couple of ulps
    let rounding = value * (sum.rounding_bound() + 2.0 * f64::EPSILON * sum.magnitude() + 2.0 * f64::EPSILON);
    Some((value, rounding))
}

fn require_cutoff(cutoff: u64) -> Result<()> {
    if cutoff < 2 {
        return Err(Error::Domain(format!("cutoff prime must be at least 2, got {cutoff}")));
    }
    Ok(())
}

/// s₀ = Π_p (1 - 1/(p(p-1))) truncated at `cutoff`.
///
/// Tail: `Σ_{p > P} 1/(p(p-1)) <= Σ_{n > P} 1/(n(n-1)) = 1/P`.
pub fn s0(cutoff: u64) -> Result<ConstantResult> {
    require_cutoff(cutoff)?;
    let primes = primes_up_to(cutoff);
    let (value, rounding) =
        euler_product(&primes, |p| 1.0 / (p as f64 * (p - 1) as f64)).expect("factors are positive");
    Ok(ConstantResult { value, cutoff, tail_bound: 1.0 / cutoff as f64 + rounding, method: Method::EulerProduct })
}

/// μ(n) and φ(n) for `n <= limit` by a linear sieve.
fn mu_and_totient(limit: usize) -> (Vec<i8>, Vec<u64>) {
    let mut mu = vec![0i8; limit + 1];
    let mut phi = vec![0u64; limit + 1];
    let mut primes: Vec<usize> = Vec::new();
    let mut composite = vec![false; limit + 1];
    if limit >= 1 {
        mu[1] = 1;
        phi[1] = 1;
    }
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
            phi[i] = i as u64 - 1;
        }
        for &p in &primes {
            let m = i * p;
            if m > limit {
                break;
            }
            composite[m] = true;
            if i % p == 0 {
                mu[m] = 0;
                phi[m] = phi[i] * p as u64;
                break;
            }
            mu[m] = -mu[i];
            phi[m] = phi[i] * (p as u64 - 1);
        }
    }
    (mu, phi)
}

/// s₀ = Σ_n μ(n)/φ(n²) = Σ_n μ(n)/(n φ(n)) truncated after `terms` terms.
///
/// Tail: with `n/φ(n) = Σ_{d|n} μ²(d)/φ(d)` and `Σ_{m>y} m⁻² <= 2/y`,
/// `Σ_{n>N} 1/(nφ(n)) <= (2/N) Π_p (1 + 1/(p(p-1))) < 4/N`.
pub fn s0_series(terms: u64) -> Result<ConstantResult> {
    if terms == 0 {
        return Err(Error::Domain("series needs at least one term".into()));
    }
    let (mu, phi) = mu_and_totient(terms as usize);
    let sum: CompensatedSum = (1..=terms as usize)
        .filter(|&n| mu[n] != 0)
        .map(|n| mu[n] as f64 / (n as f64 * phi[n] as f64))
        .collect();
    let approx = sum.approx(2.0 * f64::EPSILON);
    Ok(ConstantResult {
        value: approx.value,
        cutoff: terms,
        tail_bound: 4.0 / terms as f64 + approx.error_bound,
        method: Method::DirichletSeries,
    })
}

/// 1/ζ(2) = 6/π².
pub fn zeta2_inverse() -> ConstantResult {
    let pi = std::f64::consts::PI;
    ConstantResult { value: 6.0 / (pi * pi), cutoff: 0, tail_bound: 2.0 * f64::EPSILON, method: Method::ClosedForm }
}

/// Π_p (1 - 1/p²) truncated at `cutoff`; tail `<= 1/cutoff`.
pub fn zeta2_inverse_product(cutoff: u64) -> Result<ConstantResult> {
    require_cutoff(cutoff)?;
    let primes = primes_up_to(cutoff);
    let (value, rounding) = euler_product(&primes, |p| 1.0 / (p as f64 * p as f64)).expect("positive");
    Ok(ConstantResult { value, cutoff, tail_bound: 1.0 / cutoff as f64 + rounding, method: Method::EulerProduct })
}

/// Forbidden residue classes mod p² for one prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleLocalCount {
    pub p: u64,
    pub varpi: u64,
}

fn is_prime_trial(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn check_shifts(shifts: &[i64]) -> Result<()> {
    if shifts.is_empty() {
        return Err(Error::Query("at least one shift required".into()));
    }
    let mut sorted = shifts.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Query(format!("shifts must be distinct: {shifts:?}")));
    }
    Ok(())
}

/// Number of `m mod p²` with `q·m + a ≡ 0 (mod p²)` for at least one shift `a`.
fn local_count(p: u64, q: i64, shifts: &[i64]) -> u64 {
    let modulus = (p as i128) * (p as i128);
    if (q as i128).rem_euclid(p as i128) != 0 {
        // q is invertible mod p²: each shift forbids exactly the class -a/q
        let mut classes: Vec<i128> = shifts.iter().map(|&a| (a as i128).rem_euclid(modulus)).collect();
        classes.sort_unstable();
        classes.dedup();
        return classes.len() as u64;
    }
    (1..=modulus)
        .filter(|&m| shifts.iter().any(|&a| (q as i128 * m + a as i128).rem_euclid(modulus) == 0))
        .count() as u64
}

pub fn varpi(p: u64, q: i64, shifts: &[i64]) -> Result<TupleLocalCount> {
    if !is_prime_trial(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if q == 0 {
        return Err(Error::Domain("q must be nonzero".into()));
    }
    check_shifts(shifts)?;
    Ok(TupleLocalCount { p, varpi: local_count(p, q, shifts) })
}

/// Π_p (1 - ϖ(p)/p²), the density of `n` with every `q·n + a_i` squarefree.
///
/// Primes dividing `q` are always included; beyond the cutoff `ϖ(p) <= k`,
/// giving the tail bound `k/cutoff`.
pub fn correlation_constant(q: i64, shifts: &[i64], cutoff: u64) -> Result<ConstantResult> {
    require_cutoff(cutoff)?;
    if q == 0 {
        return Err(Error::Domain("q must be nonzero".into()));
    }
    check_shifts(shifts)?;
    let mut primes = primes_up_to(cutoff);
    let extra: Vec<u64> = crate::oracle::factorize(q.unsigned_abs())
        .into_iter()
        .map(|(p, _)| p)
        .filter(|&p| p > cutoff)
        .collect();
    primes.extend(extra);
    let k = shifts.len() as f64;
    let product = euler_product(&primes, |p| local_count(p, q, shifts) as f64 / (p as f64 * p as f64));
    Ok(match product {
        Some((value, rounding)) => ConstantResult {
            value,
            cutoff,
            tail_bound: k / cutoff as f64 + rounding,
            method: Method::EulerProduct,
        },
        None => ConstantResult { value: 0.0, cutoff, tail_bound: 0.0, method: Method::EulerProduct },
    })
}

/// s₂ = 1 - 2/ζ(2) + s₁ and s₃ = (1/ζ(2) - s₁)/2 with s₁ = Π(1 - ϖ(p)/p²)
/// for the shifts (0, 1).
pub fn derived_densities(cutoff: u64) -> Result<(ConstantResult, ConstantResult)> {
    let z = zeta2_inverse();
    let s1 = correlation_constant(1, &[0, 1], cutoff)?;
    let s2 = ConstantResult {
        value: 1.0 - 2.0 * z.value + s1.value,
        cutoff,
        tail_bound: s1.tail_bound + 2.0 * z.tail_bound + 2.0 * f64::EPSILON,
        method: Method::EulerProduct,
    };
    let s3 = ConstantResult {
        value: (z.value - s1.value) / 2.0,
        cutoff,
        tail_bound: (s1.tail_bound + z.tail_bound) / 2.0 + f64::EPSILON,
        method: Method::EulerProduct,
    };
    Ok((s2, s3))
}
