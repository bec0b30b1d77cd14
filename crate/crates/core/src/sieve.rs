//! Segmented sieving of μ, λ, Ω, Λ and primality over arbitrary windows.
//!
//! Each window element is factored by the primes up to `√hi`: the sieve
//! walks every prime power `p^j <= hi` across the segment, counting distinct
//! and repeated prime factors and accumulating `log p`. Whatever part of `n`
//! is not explained by those primes is a single prime larger than `√hi`,
//! detected by comparing the accumulated logarithm against `log n` (the gap
//! is at least `log 2`, far above the accumulated rounding).

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::arith::{ArithValue, FunctionKind, PrimePower};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::reduce::{ordered_map_reduce, Approx, CompensatedSum};
use crate::window::Window;

const SIMPLE_SIEVE_LIMIT: u64 = 1 << 24;

/// Primes `<= limit` by a plain sieve of Eratosthenes over odd numbers.
fn simple_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let half = (limit as usize - 1) / 2; // index i <-> 2i + 1
    let mut composite = vec![false; half + 1];
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= limit as usize {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = (p * p - 1) / 2;
            while j <= half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = vec![2];
    primes.extend((1..=half).filter(|&i| !composite[i]).map(|i| 2 * i as u64 + 1));
    primes
}

/// All primes `<= limit`.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit <= SIMPLE_SIEVE_LIMIT {
        simple_primes(limit)
    } else {
        primes_in_with(Window::new(2, limit).expect("limit >= 2"), &Config::default())
    }
}

/// Primes up to `√hi`, enough to factor anything in a window ending at `hi`.
pub(crate) fn base_primes(hi: u64) -> Vec<u64> {
    primes_up_to(hi.isqrt())
}

fn first_multiple_at_least(lo: u64, m: u64) -> u64 {
    lo.div_ceil(m) * m
}

fn sieve_primes_segment(seg: Window, base: &[u64]) -> Vec<u64> {
    let len = seg.len() as usize;
    let mut composite = vec![false; len];
    for &p in base {
        let square = p * p;
        if square > seg.hi() {
            break;
        }
        let start = square.max(first_multiple_at_least(seg.lo(), p));
        let mut i = (start - seg.lo()) as usize;
        while i < len {
            composite[i] = true;
            i += p as usize;
        }
    }
    (0..len)
        .filter(|&i| !composite[i])
        .map(|i| seg.lo() + i as u64)
        .filter(|&n| n >= 2)
        .collect()
}

/// The primes in `window`, ascending.
pub fn primes_in(window: Window) -> Vec<u64> {
    primes_in_with(window, &Config::default())
}

pub fn primes_in_with(window: Window, config: &Config) -> Vec<u64> {
    let base = base_primes(window.hi());
    let segments: Vec<Window> = window.segments(config.segment_size).collect();
    config.install(|| {
        ordered_map_reduce(
            segments.len(),
            |i| sieve_primes_segment(segments[i], &base),
            Vec::new(),
            |mut acc, part| {
                acc.extend(part);
                acc
            },
        )
    })
}

/// Per-element factorization summary of one window.
#[derive(Debug, Clone)]
pub(crate) struct Factored {
    lo: u64,
    omega: Vec<u8>,
    big_omega: Vec<u8>,
    squarefree: Vec<bool>,
    lambda_fault: Option<u64>,
}

impl Factored {
    /// `base` must contain every prime `<= √window.hi()`.
    pub(crate) fn sieve(window: Window, base: &[u64], lambda_fault: Option<u64>) -> Factored {
        let (lo, hi) = (window.lo(), window.hi());
        let len = window.len() as usize;
        let mut omega = vec![0u8; len];
        let mut big_omega = vec![0u8; len];
        let mut squarefree = vec![true; len];
        let mut logs = vec![0f32; len];

        let root = hi.isqrt();
        for &p in base {
            if p > root {
                break;
            }
            let log_p = (p as f64).ln() as f32;
            let mut power = p;
            let mut exponent = 1;
            loop {
                let start = first_multiple_at_least(lo, power);
                if start > hi {
                    break;
                }
                let step = power as usize;
                let mut i = (start - lo) as usize;
                match exponent {
                    1 => {
                        while i < len {
                            omega[i] += 1;
                            big_omega[i] += 1;
                            logs[i] += log_p;
                            i += step;
                        }
                    }
                    2 => {
                        while i < len {
                            squarefree[i] = false;
                            big_omega[i] += 1;
                            logs[i] += log_p;
                            i += step;
                        }
                    }
                    _ => {
                        while i < len {
                            big_omega[i] += 1;
                            logs[i] += log_p;
                            i += step;
                        }
                    }
                }
                match power.checked_mul(p) {
                    Some(next) if next <= hi => power = next,
                    _ => break,
                }
                exponent += 1;
            }
        }

        let threshold = 0.5 * std::f64::consts::LN_2;
        for i in 0..len {
            let n = lo + i as u64;
            if n > 1 && (n as f64).ln() - logs[i] as f64 > threshold {
                omega[i] += 1;
                big_omega[i] += 1;
            }
        }

        Factored { lo, omega, big_omega, squarefree, lambda_fault }
    }

    #[inline]
    fn index(&self, n: u64) -> usize {
        debug_assert!(n >= self.lo && ((n - self.lo) as usize) < self.omega.len());
        (n - self.lo) as usize
    }

    #[inline]
    pub(crate) fn mu(&self, n: u64) -> i8 {
        let i = self.index(n);
        if !self.squarefree[i] {
            0
        } else if self.omega[i].is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    #[inline]
    pub(crate) fn mu_squared(&self, n: u64) -> i8 {
        self.squarefree[self.index(n)] as i8
    }

    #[inline]
    pub(crate) fn lambda(&self, n: u64) -> i8 {
        let v = if self.big_omega[self.index(n)].is_multiple_of(2) { 1 } else { -1 };
        if self.lambda_fault == Some(n) {
            -v
        } else {
            v
        }
    }

    #[inline]
    pub(crate) fn big_omega(&self, n: u64) -> u8 {
        self.big_omega[self.index(n)]
    }

    #[inline]
    pub(crate) fn is_prime(&self, n: u64) -> bool {
        let i = self.index(n);
        self.omega[i] == 1 && self.big_omega[i] == 1
    }

    #[inline]
    pub(crate) fn prime_power(&self, n: u64) -> Option<PrimePower> {
        let i = self.index(n);
        if self.omega[i] != 1 {
            return None;
        }
        let exponent = self.big_omega[i] as u32;
        if exponent == 1 {
            return Some(PrimePower { prime: n, exponent });
        }
        exact_root(n, exponent).map(|prime| PrimePower { prime, exponent })
    }
}

/// The integer `r` with `r^k = n`, if any.
fn exact_root(n: u64, k: u32) -> Option<u64> {
    let guess = (n as f64).powf(1.0 / k as f64).round() as u64;
    (guess.saturating_sub(1)..=guess + 1).find(|&r| r.checked_pow(k) == Some(n))
}

/// Sieves `window` segment by segment and hands each segment to `visit`.
/// Results come back in segment order.
pub(crate) fn map_segments<T, F>(window: Window, config: &Config, visit: F) -> Vec<T>
where
    T: Send,
    F: Fn(Window, &Factored) -> T + Sync + Send,
{
    let base = base_primes(window.hi());
    let segments: Vec<Window> = window.segments(config.segment_size).collect();
    config.install(|| {
        ordered_map_reduce(
            segments.len(),
            |i| {
                let factored = Factored::sieve(segments[i], &base, config.lambda_fault);
                vec![visit(segments[i], &factored)]
            },
            Vec::new(),
            |mut acc, part| {
                acc.extend(part);
                acc
            },
        )
    })
}

/// Dense values of one arithmetic function over a window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableValues {
    /// μ, λ, Ω or primality flags.
    Small(Vec<i8>),
    /// Λ as prime powers.
    PrimePowers(Vec<Option<PrimePower>>),
}

impl TableValues {
    pub fn len(&self) -> usize {
        match self {
            TableValues::Small(v) => v.len(),
            TableValues::PrimePowers(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionTable {
    kind: FunctionKind,
    window: Window,
    values: TableValues,
}

impl FunctionTable {
    /// Wraps precomputed values; the representation must match `kind` and the length the window.
    pub fn new(kind: FunctionKind, window: Window, values: TableValues) -> Result<Self> {
        let shape_ok = matches!(
            (&values, kind),
            (TableValues::PrimePowers(_), FunctionKind::Mangoldt)
        ) || (!matches!(values, TableValues::PrimePowers(_)) && kind != FunctionKind::Mangoldt);
        if !shape_ok {
            return Err(Error::Query(format!("value representation does not match kind {}", kind.name())));
        }
        if values.len() as u64 != window.len() {
            return Err(Error::Query(format!(
                "table has {} values for a window of {}",
                values.len(),
                window.len()
            )));
        }
        Ok(FunctionTable { kind, window, values })
    }

    pub fn kind(&self) -> FunctionKind {
        self.kind
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn values(&self) -> &TableValues {
        &self.values
    }

    pub fn into_values(self) -> TableValues {
        self.values
    }

    pub fn get(&self, n: u64) -> Option<ArithValue> {
        if !self.window.contains(n) {
            return None;
        }
        let i = (n - self.window.lo()) as usize;
        Some(match &self.values {
            TableValues::Small(v) => ArithValue::Int(v[i] as i64),
            TableValues::PrimePowers(v) => ArithValue::PrimePower(v[i]),
        })
    }

    /// `(n, value)` pairs in ascending `n`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, ArithValue)> + '_ {
        (self.window.lo()..=self.window.hi()).map(move |n| (n, self.get(n).expect("in window")))
    }

    pub fn small_values(&self) -> Option<&[i8]> {
        match &self.values {
            TableValues::Small(v) => Some(v),
            TableValues::PrimePowers(_) => None,
        }
    }
}

pub fn build_table(kind: FunctionKind, window: Window) -> Result<FunctionTable> {
    build_table_with(kind, window, &Config::default())
}

pub fn build_table_with(kind: FunctionKind, window: Window, config: &Config) -> Result<FunctionTable> {
    let values = if kind == FunctionKind::Mangoldt {
        let parts = map_segments(window, config, |seg, f| {
            (seg.lo()..=seg.hi()).map(|n| f.prime_power(n)).collect::<Vec<_>>()
        });
        TableValues::PrimePowers(parts.concat())
    } else {
        let parts = map_segments(window, config, |seg, f| {
            (seg.lo()..=seg.hi())
                .map(|n| match kind {
                    FunctionKind::Mu => f.mu(n),
                    FunctionKind::Lambda => f.lambda(n),
                    FunctionKind::BigOmega => f.big_omega(n) as i8,
                    FunctionKind::IsPrime => f.is_prime(n) as i8,
                    FunctionKind::Mangoldt => unreachable!(),
                })
                .collect::<Vec<_>>()
        });
        TableValues::Small(parts.concat())
    };
    FunctionTable::new(kind, window, values)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SummatoryKind {
    /// Mertens function M(x).
    Mu,
    /// L(x) = Σ λ(n).
    Lambda,
    /// Squarefree count Q(x).
    MuSquared,
    PrimeCount,
    /// Chebyshev ψ(x).
    MangoldtPsi,
}

impl std::str::FromStr for SummatoryKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "mu" | "mertens" => Ok(SummatoryKind::Mu),
            "lambda" | "liouville" => Ok(SummatoryKind::Lambda),
            "mu_squared" | "musq" | "squarefree" => Ok(SummatoryKind::MuSquared),
            "prime_count" | "pi" => Ok(SummatoryKind::PrimeCount),
            "mangoldt_psi" | "psi" => Ok(SummatoryKind::MangoldtPsi),
            other => Err(format!("unknown summatory kind `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SummatoryValue {
    Exact(i64),
    Approx(Approx),
}

impl SummatoryValue {
    pub fn exact(&self) -> Option<i64> {
        match self {
            SummatoryValue::Exact(v) => Some(*v),
            SummatoryValue::Approx(_) => None,
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            SummatoryValue::Exact(v) => *v as f64,
            SummatoryValue::Approx(a) => a.value,
        }
    }
}

pub fn summatory(kind: SummatoryKind, x: u64) -> Result<SummatoryValue> {
    summatory_with(kind, x, &Config::default())
}

pub fn summatory_with(kind: SummatoryKind, x: u64, config: &Config) -> Result<SummatoryValue> {
    let window = Window::up_to(x)?;
    if kind == SummatoryKind::MangoldtPsi {
        let parts = map_segments(window, config, |seg, f| {
            let mut acc = CompensatedSum::new();
            for n in seg.lo()..=seg.hi() {
                if let Some(pp) = f.prime_power(n) {
                    acc.add(pp.log_prime());
                }
            }
            acc
        });
        let mut total = CompensatedSum::new();
        for p in &parts {
            total.merge(p);
        }
        return Ok(SummatoryValue::Approx(total.approx(f64::EPSILON)));
    }
    let parts = map_segments(window, config, |seg, f| {
        (seg.lo()..=seg.hi())
            .map(|n| match kind {
                SummatoryKind::Mu => f.mu(n) as i64,
                SummatoryKind::Lambda => f.lambda(n) as i64,
                SummatoryKind::MuSquared => f.mu_squared(n) as i64,
                SummatoryKind::PrimeCount => f.is_prime(n) as i64,
                SummatoryKind::MangoldtPsi => unreachable!(),
            })
            .sum::<i64>()
    });
    Ok(SummatoryValue::Exact(parts.into_iter().sum()))
}

const GAUSS_ORDER: usize = 20;

/// Gauss–Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
fn gauss_legendre() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GAUSS_ORDER;
        let mut rule = Vec::with_capacity(n);
        for i in 0..n {
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut derivative = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, z);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                derivative = n as f64 * (z * p1 - p0) / (z * z - 1.0);
                let step = p1 / derivative;
                z -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            rule.push((z, 2.0 / ((1.0 - z * z) * derivative * derivative)));
        }
        rule
    })
}

/// li(x) = ∫₂ˣ dt / log t.
///
/// Integrates `e^u / u` over `u ∈ [log 2, log x]` with 20-point Gauss–Legendre
/// panels of width at most 1/2, summed with compensation. The relative error
/// is a few ulps.
pub fn log_integral(x: f64) -> Result<f64> {
    if x.is_nan() || x < 2.0 || x.is_infinite() {
        return Err(Error::Domain(format!("log integral needs finite x >= 2, got {x}")));
    }
    if x == 2.0 {
        return Ok(0.0);
    }
    let (a, b) = (std::f64::consts::LN_2, x.ln());
    let panels = ((b - a) / 0.5).ceil().max(1.0) as usize;
    let width = (b - a) / panels as f64;
    let rule = gauss_legendre();
    let mut total = CompensatedSum::new();
    for k in 0..panels {
        let left = a + k as f64 * width;
        let (mid, half) = (left + 0.5 * width, 0.5 * width);
        let panel: CompensatedSum = rule
            .iter()
            .map(|&(node, weight)| {
                let u = mid + half * node;
                weight * u.exp() / u
            })
            .collect();
        total.add(half * panel.value());
    }
    Ok(total.value())
}
