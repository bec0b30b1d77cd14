//! Sign-pattern censuses: how often each tuple `(f(n+a_1), …, f(n+a_k))`
//! over `{+1, -1, 0}` occurs on a domain.
//!
//! Keys are stored as base-3 digits with `+1 → 0`, `-1 → 1`, `0 → 2`, first
//! shift most significant, so the zero-free cells of a pair come out in the
//! order `++, +-, -+, --`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::constants::{correlation_constant, s0, zeta2_inverse};
use crate::correlations::{fold_domain, Domain, TermSpec};
use crate::error::{Error, Result};
use crate::reduce::{Approx, CompensatedSum};

pub use crate::correlations::SignFn;

/// Largest shift tuple a census accepts.
pub const MAX_PATTERN_LENGTH: usize = 4;
/// Prime cutoff for the Euler products behind predicted densities.
pub const PREDICTION_CUTOFF: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PatternKey(pub Vec<i8>);

impl PatternKey {
    fn from_index(mut index: usize, k: usize) -> Self {
        let mut symbols = vec![0i8; k];
        for slot in symbols.iter_mut().rev() {
            *slot = match index % 3 {
                0 => 1,
                1 => -1,
                _ => 0,
            };
            index /= 3;
        }
        PatternKey(symbols)
    }

    fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, &s| acc * 3 + digit(s))
    }

    pub fn has_zero(&self) -> bool {
        self.0.contains(&0)
    }

    /// Product of the symbols.
    pub fn sign(&self) -> i64 {
        self.0.iter().map(|&s| s as i64).product()
    }
}

#[inline]
fn digit(symbol: i8) -> usize {
    match symbol {
        1 => 0,
        -1 => 1,
        _ => 2,
    }
}

impl fmt::Display for PatternKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                1 => "+",
                -1 => "-",
                _ => "0",
            })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternCensus {
    pub func: SignFn,
    pub shifts: Vec<i64>,
    pub domain: Domain,
    pub effective_lo: u64,
    /// One count per key, in key-index order.
    counts: Vec<u64>,
    pub total: u64,
}

impl PatternCensus {
    pub fn k(&self) -> usize {
        self.shifts.len()
    }

    pub fn count(&self, key: &PatternKey) -> u64 {
        if key.0.len() != self.k() {
            return 0;
        }
        self.counts[key.index()]
    }

    /// Count for symbols given directly, e.g. `census.get(&[1, -1])`.
    pub fn get(&self, symbols: &[i8]) -> u64 {
        self.count(&PatternKey(symbols.to_vec()))
    }

    /// Every key with its count, in key-index order.
    pub fn cells(&self) -> impl Iterator<Item = (PatternKey, u64)> + '_ {
        let k = self.k();
        self.counts.iter().enumerate().map(move |(i, &c)| (PatternKey::from_index(i, k), c))
    }
}

fn check_shifts(shifts: &[i64]) -> Result<()> {
    if shifts.is_empty() || shifts.len() > MAX_PATTERN_LENGTH {
        return Err(Error::Guard(format!(
            "pattern length must be between 1 and {MAX_PATTERN_LENGTH}, got {}",
            shifts.len()
        )));
    }
    let mut sorted = shifts.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Query(format!("shifts must be distinct: {shifts:?}")));
    }
    Ok(())
}

pub fn census(func: SignFn, shifts: &[i64], domain: Domain) -> Result<PatternCensus> {
    census_with(func, shifts, domain, &Config::default())
}

pub fn census_with(func: SignFn, shifts: &[i64], domain: Domain, config: &Config) -> Result<PatternCensus> {
    check_shifts(shifts)?;
    let cells = 3usize.pow(shifts.len() as u32);
    let (span, counts) = fold_domain(
        &domain,
        shifts,
        config,
        || vec![0u64; cells],
        |acc: &mut Vec<u64>, n, f| {
            let index = shifts
                .iter()
                .fold(0, |i, &a| i * 3 + digit(func.eval(f, n.wrapping_add_signed(a))));
            acc[index] += 1;
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    )?;
    Ok(PatternCensus {
        func,
        shifts: shifts.to_vec(),
        domain,
        effective_lo: span.map_or(domain.span().hi + 1, |s| s.lo),
        total: counts.iter().sum(),
        counts,
    })
}

/// `Σ (product of symbols) · count` over zero-free keys, which is the
/// unit-weight correlation sum of the same shifts.
pub fn signed_combination(census: &PatternCensus) -> i64 {
    census
        .cells()
        .filter(|(key, _)| !key.has_zero())
        .map(|(key, count)| key.sign() * count as i64)
        .sum()
}

/// `(Q⁺, Q⁻) = (++ plus --, +- plus -+)` for a pair of λ values.
pub fn joined_counts(census: &PatternCensus) -> Result<(u64, u64)> {
    if census.func != SignFn::Lambda || census.k() != 2 {
        return Err(Error::Query("joined counts need a two-shift lambda census".into()));
    }
    Ok((census.get(&[1, 1]) + census.get(&[-1, -1]), census.get(&[1, -1]) + census.get(&[-1, 1])))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityRow {
    pub key: PatternKey,
    pub count: u64,
    pub empirical: f64,
    pub predicted: Option<f64>,
    /// Short label naming what the prediction is.
    pub source: Option<String>,
}

/// Empirical density of every cell next to its predicted limit, where one
/// is known.
pub fn densities(census: &PatternCensus) -> Result<Vec<DensityRow>> {
    let predictions = predict(census.func, &census.shifts, &census.domain)?;
    Ok(census
        .cells()
        .zip(predictions)
        .map(|((key, count), prediction)| DensityRow {
            empirical: if census.total == 0 { 0.0 } else { count as f64 / census.total as f64 },
            predicted: prediction.as_ref().map(|p| p.0),
            source: prediction.map(|p| p.1.to_string()),
            key,
            count,
        })
        .collect())
}

/// `s₀ · Π_{l|a} (1 - 1/(l(l-1)))⁻¹`: the local factor at `l` drops out
/// when `l` divides the shift.
fn shifted_prime_squarefree_density(a: i64) -> Result<f64> {
    let base = s0(PREDICTION_CUTOFF)?.value;
    Ok(crate::oracle::factorize(a.unsigned_abs())
        .iter()
        .map(|&(l, _)| l as f64)
        .fold(base, |acc, l| acc / (1.0 - 1.0 / (l * (l - 1.0)))))
}

type Prediction = Option<(f64, &'static str)>;

fn predict(func: SignFn, shifts: &[i64], domain: &Domain) -> Result<Vec<Prediction>> {
    let k = shifts.len();
    let cells = 3usize.pow(k as u32);
    let keys: Vec<PatternKey> = (0..cells).map(|i| PatternKey::from_index(i, k)).collect();
    let none = vec![None; cells];
    let integer_like = !domain.is_primes();

    Ok(match (func, integer_like, k) {
        (SignFn::Lambda, true, 1 | 2) => keys
            .iter()
            .map(|key| Some(if key.has_zero() { (0.0, "nonvanishing") } else { (0.5f64.powi(k as i32), "equidistribution") }))
            .collect(),
        (SignFn::Lambda, false, 1) if shifts[0] == 0 => {
            keys.iter().map(|key| Some((if key.0[0] == -1 { 1.0 } else { 0.0 }, "prime"))).collect()
        }
        (SignFn::Lambda, false, 1) => keys
            .iter()
            .map(|key| Some(if key.has_zero() { (0.0, "nonvanishing") } else { (0.5, "equidistribution") }))
            .collect(),
        (SignFn::Mu, true, 1) => {
            let z = zeta2_inverse().value;
            keys.iter()
                .map(|key| Some(if key.has_zero() { (1.0 - z, "1-6/pi^2") } else { (z / 2.0, "3/pi^2") }))
                .collect()
        }
        (SignFn::Mu, true, 2) => {
            let z = zeta2_inverse().value;
            let s1 = correlation_constant(1, shifts, PREDICTION_CUTOFF)?.value;
            keys.iter()
                .map(|key| {
                    Some(match key.0.iter().filter(|&&s| s == 0).count() {
                        0 => (s1 / 4.0, "s1/4"),
                        1 => ((z - s1) / 2.0, "s3"),
                        _ => (1.0 - 2.0 * z + s1, "s2"),
                    })
                })
                .collect()
        }
        (SignFn::Mu, false, 1) if shifts[0] == 0 => {
            keys.iter().map(|key| Some((if key.0[0] == -1 { 1.0 } else { 0.0 }, "prime"))).collect()
        }
        (SignFn::Mu, false, 1) => {
            let s = shifted_prime_squarefree_density(shifts[0])?;
            keys.iter()
                .map(|key| Some(if key.has_zero() { (1.0 - s, "1-s0") } else { (s / 2.0, "s0/2") }))
                .collect()
        }
        _ => none,
    })
}

/// `Σ_{n<=x} Λ(n) μ⁺(n+a)` and `Σ_{n<=x} Λ(n) μ⁻(n+a)`, where `μ^±` is the
/// indicator of `μ = ±1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightedCensus {
    pub shift: i64,
    pub x: u64,
    pub plus: Approx,
    pub minus: Approx,
}

pub fn weighted_census(shift: i64, x: u64) -> Result<WeightedCensus> {
    weighted_census_with(shift, x, &Config::default())
}

pub fn weighted_census_with(shift: i64, x: u64, config: &Config) -> Result<WeightedCensus> {
    if x < 100 {
        return Err(Error::Domain(format!("x must be at least 100, got {x}")));
    }
    let terms = TermSpec::uniform(crate::correlations::TermFn::Mu, &[shift])?;
    let (_, (plus, minus)) = fold_domain(
        &Domain::Integers { x },
        &[shift],
        config,
        || (CompensatedSum::new(), CompensatedSum::new()),
        |acc: &mut (CompensatedSum, CompensatedSum), n, f| {
            if let Some(pp) = f.prime_power(n) {
                match terms.eval(f, n) {
                    1 => acc.0.add(pp.log_prime()),
                    -1 => acc.1.add(pp.log_prime()),
                    _ => {}
                }
            }
        },
        |mut a, b| {
            a.0.merge(&b.0);
            a.1.merge(&b.1);
            a
        },
    )?;
    Ok(WeightedCensus {
        shift,
        x,
        plus: plus.approx(f64::EPSILON),
        minus: minus.approx(f64::EPSILON),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::{correlate, Weight};
    use crate::oracle::{naive_lambda, naive_mu};

    fn unit(domain: Domain, t: &str) -> i64 {
        correlate(domain, Weight::Unit, &t.parse().unwrap()).unwrap().value.exact().unwrap()
    }

    #[test]
    fn key_order() {
        let keys: Vec<String> = (0..9).map(|i| PatternKey::from_index(i, 2).to_string()).collect();
        assert_eq!(keys, ["++", "+-", "+0", "-+", "--", "-0", "0+", "0-", "00"]);
        for i in 0..81 {
            assert_eq!(PatternKey::from_index(i, 4).index(), i);
        }
    }

    #[test]
    fn liouville_tables() {
        let c = census(SignFn::Lambda, &[0, 1], Domain::Integers { x: 10_000 }).unwrap();
        let zero_free: Vec<u64> = [[1, 1], [1, -1], [-1, 1], [-1, -1]].iter().map(|s| c.get(s)).collect();
        assert_eq!(zero_free, [2481, 2472, 2472, 2575]);
        assert_eq!(c.total, 10_000);
        assert_eq!(signed_combination(&c), 112);
        assert_eq!(joined_counts(&c).unwrap(), (5056, 4944));

        let c = census(SignFn::Lambda, &[0, 1], Domain::ShortInterval { x: 10_000_000, y: 1000 }).unwrap();
        let zero_free: Vec<u64> = [[1, 1], [1, -1], [-1, 1], [-1, -1]].iter().map(|s| c.get(s)).collect();
        assert_eq!(zero_free, [275, 244, 243, 239]);
        assert_eq!(c.total, 1001);
        assert_eq!(signed_combination(&c), 27);
    }

    #[test]
    fn liouville_on_first_ten() {
        let c = census(SignFn::Lambda, &[0], Domain::Integers { x: 10 }).unwrap();
        assert_eq!((c.get(&[1]), c.get(&[-1]), c.get(&[0])), (5, 5, 0));
    }

    #[test]
    fn mobius_pair_census_matches_oracle() {
        let c = census(SignFn::Mu, &[0, 1], Domain::Integers { x: 10_000 }).unwrap();
        let mut oracle = [[0u64; 3]; 3];
        for n in 1..=10_000u64 {
            let (a, b) = (naive_mu(n).unwrap(), naive_mu(n + 1).unwrap());
            oracle[(1 - a) as usize][(1 - b) as usize] += 1;
        }
        for a in [1i8, 0, -1] {
            for b in [1i8, 0, -1] {
                assert_eq!(c.get(&[a, b]), oracle[(1 - a) as usize][(1 - b) as usize], "({a},{b})");
            }
        }
        // values frozen from the trial-division count
        assert_eq!((c.get(&[1, 1]), c.get(&[1, -1]), c.get(&[-1, 1]), c.get(&[-1, -1])), (807, 788, 821, 814));
        assert_eq!((c.get(&[0, 0]), c.get(&[1, 0]), c.get(&[-1, 0]), c.get(&[0, 1]), c.get(&[0, -1])), (1064, 1435, 1418, 1402, 1451));
        assert_eq!(signed_combination(&c), 12);
    }

    #[test]
    fn single_shift_census_is_a_mertens_sum() {
        let c = census(SignFn::Mu, &[0], Domain::Integers { x: 100_000 }).unwrap();
        assert_eq!(signed_combination(&c), unit(Domain::Integers { x: 100_000 }, "mu@0"));
        let squarefree = unit(Domain::Integers { x: 100_000 }, "musq@0") as u64;
        assert_eq!(c.get(&[0]), 100_000 - squarefree);
    }

    #[test]
    fn shifted_prime_census_identities() {
        let (a, b, x) = (1i64, 3i64, 10_000u64);
        let d = Domain::ShiftedPrimes { x };
        let pi = 1229i64;
        let c = census(SignFn::Mu, &[a], d).unwrap();
        let (sq, m) = (unit(d, &format!("musq@{a}")), unit(d, &format!("mu@{a}")));
        assert_eq!(2 * c.get(&[1]) as i64, sq + m);
        assert_eq!(2 * c.get(&[-1]) as i64, sq - m);

        let c = census(SignFn::Lambda, &[a], d).unwrap();
        let l = unit(d, &format!("lambda@{a}"));
        assert_eq!(2 * c.get(&[1]) as i64, pi + l);
        assert_eq!(2 * c.get(&[-1]) as i64, pi - l);

        // 4·R^{εδ} = Σ (μ² + ε μ³)(p+a) (μ² + δ μ³)(p+b), with μ³ written as μ²·μ
        let c = census(SignFn::Mu, &[a, b], d).unwrap();
        let sq2 = unit(d, &format!("musq@{a},musq@{b}"));
        let cube_a = unit(d, &format!("musq@{a},mu@{a},musq@{b}"));
        let cube_b = unit(d, &format!("musq@{a},musq@{b},mu@{b}"));
        let both = unit(d, &format!("musq@{a},mu@{a},musq@{b},mu@{b}"));
        for e in [1i64, -1] {
            for g in [1i64, -1] {
                let rhs = sq2 + e * cube_a + g * cube_b + e * g * both;
                assert_eq!(4 * c.get(&[e as i8, g as i8]) as i64, rhs);
            }
        }

        let c = census(SignFn::Lambda, &[a, b], d).unwrap();
        let la = unit(d, &format!("lambda@{a}"));
        let lb = unit(d, &format!("lambda@{b}"));
        let lab = unit(d, &format!("lambda@{a},lambda@{b}"));
        for e in [1i64, -1] {
            for g in [1i64, -1] {
                assert_eq!(4 * c.get(&[e as i8, g as i8]) as i64, pi + e * la + g * lb + e * g * lab);
            }
        }
    }

    #[test]
    fn liouville_has_no_zero_cells() {
        let c = census(SignFn::Lambda, &[0, 2, 5], Domain::ArithProgression { x: 30_000, q: 5, r: 2 }).unwrap();
        assert!(c.cells().filter(|(k, _)| k.has_zero()).all(|(_, n)| n == 0));
        assert_eq!(c.total, 6000);
        let oracle: i64 = (1..=30_000u64)
            .filter(|n| n % 5 == 2)
            .map(|n| naive_lambda(n).unwrap() * naive_lambda(n + 2).unwrap() * naive_lambda(n + 5).unwrap())
            .sum();
        assert_eq!(signed_combination(&c), oracle);
    }

    #[test]
    fn guards() {
        let d = Domain::Integers { x: 100 };
        assert!(matches!(census(SignFn::Mu, &[0, 1, 2, 3, 4], d), Err(Error::Guard(_))));
        assert!(matches!(census(SignFn::Mu, &[], d), Err(Error::Guard(_))));
        assert!(matches!(census(SignFn::Mu, &[1, 1], d), Err(Error::Query(_))));
        let c = census(SignFn::Mu, &[0, 1], d).unwrap();
        assert!(joined_counts(&c).is_err());
        assert!(weighted_census(1, 99).is_err());
    }

    #[test]
    fn weighted_census_splits() {
        let w = weighted_census(1, 10_000).unwrap();
        let lam: TermSpec = "musq@1".parse().unwrap();
        let total = correlate(Domain::Integers { x: 10_000 }, Weight::VonMangoldt, &lam).unwrap().value.as_f64();
        assert!((w.plus.value + w.minus.value - total).abs() < 1e-9);
        let signed = correlate(Domain::Integers { x: 10_000 }, Weight::VonMangoldt, &"mu@1".parse().unwrap())
            .unwrap()
            .value
            .as_f64();
        assert!((w.plus.value - w.minus.value - signed).abs() < 1e-9);
    }

    #[test]
    fn predictions_attached() {
        let c = census(SignFn::Mu, &[0, 1], Domain::Integers { x: 10_000 }).unwrap();
        let rows = densities(&c).unwrap();
        assert_eq!(rows.len(), 9);
        assert!(rows.iter().all(|r| r.predicted.is_some()));
        let total: f64 = rows.iter().map(|r| r.predicted.unwrap()).sum();
        assert!((total - 1.0).abs() < 1e-12);
        let c = census(SignFn::Mu, &[1], Domain::ShiftedPrimes { x: 10_000 }).unwrap();
        let rows = densities(&c).unwrap();
        assert!((rows[0].predicted.unwrap() - 0.373_955_8 / 2.0).abs() < 1e-6);
        let c = census(SignFn::Mu, &[0, 1, 2], Domain::Integers { x: 100 }).unwrap();
        assert!(densities(&c).unwrap().iter().all(|r| r.predicted.is_none()));
    }
}
