//! Acceptance suite. Prints one PASS/FAIL line per criterion, with the
//! individual checks indented beneath it, and exits nonzero if any fail.
//!
//! Every criterion is run twice, single-threaded and on several threads,
//! and the serialized computed values of the two runs are compared.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use acor::constants::{correlation_constant, derived_densities, published_value, s0, s0_series, zeta2_inverse};
use acor::correlations::{
    correlate_with, hypothesis_sum_for_moduli, hypothesis_sum_with, identity_audit_with, Domain, Identity, SignFn,
    TermSpec, Weight,
};
use acor::oracle::{check_window, naive_mu, naive_primes};
use acor::patterns::{census_with, signed_combination, weighted_census_with, PatternCensus};
use acor::repro::repro_with;
use acor::sieve::{build_table_with, log_integral, summatory_with, SummatoryKind};
use acor::{Config, FunctionKind, Window};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Check {
    label: String,
    passed: bool,
    detail: String,
}

#[derive(Default)]
struct Outcome {
    checks: Vec<Check>,
    /// Computed values, serialized, for the thread-count comparison.
    record: Vec<String>,
}

impl Outcome {
    fn check(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        let detail = detail.into();
        self.record.push(detail.clone());
        self.checks.push(Check { label: label.into(), passed, detail });
    }

    fn within(&mut self, label: &str, got: f64, want: f64, tolerance: f64) {
        let passed = (got - want).abs() <= tolerance;
        self.check(label, passed, format!("got {got:?}, want {want:?} within {tolerance:e}"));
    }

    fn relative(&mut self, label: &str, got: f64, want: f64, tolerance: f64) {
        let rel = (got - want).abs() / want.abs();
        self.check(label, rel <= tolerance, format!("got {got:?}, want {want:?}, relative deviation {rel:.3e} <= {tolerance}"));
    }

    fn exact(&mut self, label: &str, got: i64, want: i64) {
        self.check(label, got == want, format!("got {got}, want {want}"));
    }

    fn timed(&mut self, label: &str, elapsed: Duration, limit: Duration) {
        // timings are not part of the determinism record
        self.checks.push(Check {
            label: label.into(),
            passed: elapsed <= limit,
            detail: format!("{:.3} s, limit {} s", elapsed.as_secs_f64(), limit.as_secs_f64()),
        });
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

type Criterion = fn(&Config) -> Outcome;

fn unit(domain: Domain, terms: &str, cfg: &Config) -> i64 {
    let terms: TermSpec = terms.parse().unwrap();
    correlate_with(domain, Weight::Unit, &terms, cfg).unwrap().value.exact().unwrap()
}

fn floating(domain: Domain, weight: Weight, terms: &str, cfg: &Config) -> f64 {
    let terms: TermSpec = terms.parse().unwrap();
    correlate_with(domain, weight, &terms, cfg).unwrap().value.as_f64()
}

fn pair_cells(c: &PatternCensus) -> [u64; 4] {
    [c.get(&[1, 1]), c.get(&[1, -1]), c.get(&[-1, 1]), c.get(&[-1, -1])]
}

fn mobius_pair_sum(cfg: &Config) -> Outcome {
    let mut o = Outcome::default();
    let start = Instant::now();
    let value = unit(Domain::Integers { x: 10_000 }, "mu@0,mu@1", cfg);
    let elapsed = start.elapsed();
    o.exact("sum of mu(n)mu(n+1), n <= 1e4", value, 12);
    o.timed("runtime", elapsed, Duration::from_secs(1));
    o
}

fn liouville_pair(domain: Domain, sum: i64, cells: [u64; 4], total: u64, cfg: &Config) -> Outcome {
    let mut o = Outcome::default();
    o.exact("sum of lambda(n)lambda(n+1)", unit(domain, "lambda@0,lambda@1", cfg), sum);
    let c = census_with(SignFn::Lambda, &[0, 1], domain, cfg).unwrap();
    let got = pair_cells(&c);
    o.check("census ++, +-, -+, --", got == cells, format!("got {got:?}, want {cells:?}"));
    let zero_free: u64 = got.iter().sum();
    o.check("counts sum to the domain size", zero_free == total && c.total == total, format!("{zero_free} of {total}"));
    o.exact("signed combination of the census", signed_combination(&c), sum);
    o
}

fn liouville_pair_integers(cfg: &Config) -> Outcome {
    liouville_pair(Domain::Integers { x: 10_000 }, 112, [2481, 2472, 2472, 2575], 10_000, cfg)
}

fn liouville_pair_short(cfg: &Config) -> Outcome {
    liouville_pair(Domain::ShortInterval { x: 10_000_000, y: 1000 }, 27, [275, 244, 243, 239], 1001, cfg)
}

fn constants(_cfg: &Config) -> Outcome {
    let mut o = Outcome::default();
    let published: f64 = published_value("zeta2inv").unwrap().parse().unwrap();
    o.within("6/pi^2 against the 24 published digits", zeta2_inverse().value, published, 1e-15);
    let product = correlation_constant(1, &[0, 1], 100_000).unwrap();
    o.within("prod over p <= 1e5 of (1 - 2/p^2)", product.value, 0.322_634_616_605_433_97, 1e-12);
    let p = s0(10_000_000).unwrap();
    let s = s0_series(1_000_000).unwrap();
    o.within("s0 product (1e7) against series (1e6)", p.value, s.value, p.tail_bound + s.tail_bound);
    let digits = |v: f64| format!("{:.7}", (v * 1e7).trunc() / 1e7);
    o.check(
        "s0 leading digits 0.3739558",
        digits(p.value) == "0.3739558" && digits(s.value) == "0.3739558",
        format!("product {:?}, series {:?}", p.value, s.value),
    );
    o
}

fn audit(o: &mut Outcome, label: &str, identity: Identity, x: u64, totals: Option<(i64, i64)>, cfg: &Config) {
    let r = identity_audit_with(identity, x, cfg).unwrap();
    let totals_ok = totals.is_none_or(|t| t == (r.lhs_total, r.rhs_total));
    o.check(
        label,
        r.holds && totals_ok,
        format!(
            "{} terms, {} mismatches, totals {} / {}",
            r.terms_checked,
            r.mismatches.len(),
            r.lhs_total,
            r.rhs_total
        ),
    );
}

fn identities(cfg: &Config) -> Outcome {
    let mut o = Outcome::default();
    audit(&mut o, "mu = lambda mu^2 for n <= 1e6", Identity::MuEqLambdaMuSquared, 1_000_000, None, cfg);
    audit(&mut o, "lambda = sum over d^2 | n of mu(n/d^2), n <= 1e5", Identity::LambdaDivisorSum, 100_000, None, cfg);
    audit(&mut o, "shifted-prime partition, a = 1, x = 1e4", Identity::ShiftedPrimeSplit { shift: 1 }, 10_000, Some((-16, -16)), cfg);
    audit(&mut o, "mobius pair double decomposition, t = 1, x = 1e3", Identity::MobiusPairSplit { shift: 1 }, 1000, Some((-11, -11)), cfg);
    audit(&mut o, "liouville pair double decomposition, t = 1, x = 1e3", Identity::LiouvillePairSplit { shift: 1 }, 1000, Some((14, 14)), cfg);

    let d = Domain::ShiftedPrimes { x: 10_000 };
    let pi = 1229i64;
    let (a, b) = (1i64, 3i64);
    for shift in [a, b] {
        let c = census_with(SignFn::Mu, &[shift], d, cfg).unwrap();
        let (sq, m) = (unit(d, &format!("musq@{shift}"), cfg), unit(d, &format!("mu@{shift}"), cfg));
        o.exact(&format!("2 R+ = sum mu^2 + sum mu, a = {shift}"), 2 * c.get(&[1]) as i64, sq + m);
        o.exact(&format!("2 R- = sum mu^2 - sum mu, a = {shift}"), 2 * c.get(&[-1]) as i64, sq - m);
        let c = census_with(SignFn::Lambda, &[shift], d, cfg).unwrap();
        let l = unit(d, &format!("lambda@{shift}"), cfg);
        o.exact(&format!("2 Q+ = pi(x) + sum lambda, a = {shift}"), 2 * c.get(&[1]) as i64, pi + l);
        o.exact(&format!("2 Q- = pi(x) - sum lambda, a = {shift}"), 2 * c.get(&[-1]) as i64, pi - l);
    }
    let c = census_with(SignFn::Mu, &[a, b], d, cfg).unwrap();
    let sq2 = unit(d, &format!("musq@{a},musq@{b}"), cfg);
    let cube_a = unit(d, &format!("musq@{a},mu@{a},musq@{b}"), cfg);
    let cube_b = unit(d, &format!("musq@{a},musq@{b},mu@{b}"), cfg);
    let both = unit(d, &format!("musq@{a},mu@{a},musq@{b},mu@{b}"), cfg);
    let l = census_with(SignFn::Lambda, &[a, b], d, cfg).unwrap();
    let (la, lb) = (unit(d, &format!("lambda@{a}"), cfg), unit(d, &format!("lambda@{b}"), cfg));
    let lab = unit(d, &format!("lambda@{a},lambda@{b}"), cfg);
    for (e, g) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
        let key = [e as i8, g as i8];
        let cell = format!("{}{}", if e > 0 { '+' } else { '-' }, if g > 0 { '+' } else { '-' });
        o.exact(
            &format!("4 R{cell} from mu^2 and mu^3 correlations, shifts (1, 3)"),
            4 * c.get(&key) as i64,
            sq2 + e * cube_a + g * cube_b + e * g * both,
        );
        o.exact(
            &format!("4 Q{cell} from lambda correlations, shifts (1, 3)"),
            4 * l.get(&key) as i64,
            pi + e * la + g * lb + e * g * lab,
        );
    }

    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut agree = 0;
    let mut details = Vec::new();
    for _ in 0..20 {
        let func = if rng.random_bool(0.5) { SignFn::Mu } else { SignFn::Lambda };
        let k = rng.random_range(1..=3usize);
        let mut shifts: Vec<i64> = Vec::new();
        while shifts.len() < k {
            let s = rng.random_range(-5..=12i64);
            if !shifts.contains(&s) {
                shifts.push(s);
            }
        }
        let x = rng.random_range(100..=100_000u64);
        let domain = if rng.random_bool(0.5) { Domain::Integers { x } } else { Domain::ShiftedPrimes { x } };
        let terms = TermSpec::uniform(func.into(), &shifts).unwrap();
        let direct = correlate_with(domain, Weight::Unit, &terms, cfg).unwrap().value.exact().unwrap();
        let census = signed_combination(&census_with(func, &shifts, domain, cfg).unwrap());
        agree += (direct == census) as usize;
        details.push(format!("{}:{terms}:{domain}={direct}/{census}", func.name()));
    }
    o.record.push(details.join(";"));
    o.checks.push(Check {
        label: "census signed combination equals correlate, 20 random queries".into(),
        passed: agree == 20,
        detail: format!("{agree} of 20 agree"),
    });
    o
}

fn oracle_equivalence(cfg: &Config) -> Outcome {
    let mut o = Outcome::default();
    for window in [Window::new(1, 10_000).unwrap(), Window::new(1_000_000_000, 1_000_001_000).unwrap()] {
        for kind in FunctionKind::ALL {
            let table = build_table_with(kind, window, cfg).unwrap();
            let report = check_window(kind, window, &table).unwrap();
            o.check(
                format!("{} on {window}", kind.name()),
                report.agrees(),
                format!("{} mismatches", report.mismatches.len()),
            );
        }
    }
    o
}

fn densities(cfg: &Config) -> Outcome {
    let mut o = Outcome::default();
    let x = 1_000_000u64;
    let xf = x as f64;
    let integers = Domain::Integers { x };
    let z = zeta2_inverse().value;
    let s0v = s0(10_000_000).unwrap().value;

    let squarefree = summatory_with(SummatoryKind::MuSquared, x, cfg).unwrap().as_f64() / xf;
    o.within("squarefree density against 6/pi^2", squarefree, z, 1e-3);

    let s1 = correlation_constant(1, &[0, 1], x).unwrap().value;
    let pair = unit(integers, "musq@0,musq@1", cfg) as f64 / xf;
    o.within("mu^2(n) mu^2(n+1) density against s1", pair, s1, 1.5e-2);

    let (s2, s3) = derived_densities(x).unwrap();
    let mu = census_with(SignFn::Mu, &[0, 1], integers, cfg).unwrap();
    let density = |key: [i8; 2]| mu.get(&key) as f64 / xf;
    o.within("mu (0,0) cell against s2", density([0, 0]), s2.value, 1.5e-2);
    for key in [[1, 0], [-1, 0], [0, 1], [0, -1]] {
        o.within(&format!("mu ({},{}) cell against s3", key[0], key[1]), density(key), s3.value, 1e-2);
    }

    let lambda = census_with(SignFn::Lambda, &[0, 1], integers, cfg).unwrap();
    for (key, cell) in [[1, 1], [1, -1], [-1, 1], [-1, -1]].into_iter().zip(pair_cells(&lambda)) {
        o.within(&format!("lambda ({},{}) cell against 1/4", key[0], key[1]), cell as f64 / xf, 0.25, 1e-2);
    }

    let shifted = unit(Domain::ShiftedPrimes { x }, "musq@1", cfg) as f64;
    o.relative("sum over p <= 1e6 of mu^2(p+1) against s0 li(1e6)", shifted, s0v * log_integral(xf).unwrap(), 0.02);

    let weighted = floating(integers, Weight::VonMangoldt, "musq@1", cfg);
    o.relative("sum of Lambda(n) mu^2(n+1) against s0 x", weighted, s0v * xf, 0.03);

    let w = weighted_census_with(1, x, cfg).unwrap();
    o.relative("Lambda-weighted mu(n+1) = +1 against s0 x / 2", w.plus.value, s0v * xf / 2.0, 0.03);
    o.relative("Lambda-weighted mu(n+1) = -1 against s0 x / 2", w.minus.value, s0v * xf / 2.0, 0.03);
    o
}

/// Direct loop over q, d and z.
fn hypothesis_oracle(x: u64, q_max: u64, shift: i64) -> u64 {
    let primes = naive_primes(1, x);
    let values: Vec<i64> = primes.iter().map(|&p| naive_mu(p.wrapping_add_signed(shift)).unwrap()).collect();
    let mut total = 0;
    for q in 1..=q_max {
        let mut worst = 0u64;
        for d in 0..q {
            for z in 1..=x {
                let s: i64 = primes
                    .iter()
                    .zip(&values)
                    .filter(|(&p, _)| p <= z && p % q == d)
                    .map(|(_, &v)| v)
                    .sum();
                worst = worst.max(s.unsigned_abs());
            }
        }
        total += worst;
    }
    total
}

fn hypothesis(cfg: &Config) -> Outcome {
    let mut o = Outcome::default();
    let r = hypothesis_sum_with(SignFn::Mu, &[1], 1000, 0.0, cfg).unwrap();
    o.exact("mu, a = 1, x = 1e3, B = 0 against the triple loop", r.value as i64, hypothesis_oracle(1000, r.moduli, 1) as i64);
    let again = hypothesis_sum_for_moduli(SignFn::Mu, &[1], 1000, r.moduli, cfg).unwrap();
    o.exact("explicit modulus bound gives the same sum", again.value as i64, r.value as i64);

    let start = Instant::now();
    let r = hypothesis_sum_with(SignFn::Lambda, &[1, 3], 100_000, 1.0, cfg).unwrap();
    let elapsed = start.elapsed();
    o.timed("lambda, shifts (1, 3), x = 1e5, B = 1", elapsed, Duration::from_secs(60));
    o.check(
        "bounded by Q pi(x)",
        r.value <= r.crude_cap,
        format!("value {}, Q = {}, cap {}", r.value, r.moduli, r.crude_cap),
    );
    o
}

fn repro(cfg: &Config) -> Outcome {
    let mut o = Outcome::default();
    let single = Config { threads: 1, ..cfg.clone() };
    let start = Instant::now();
    let report = repro_with(&single).unwrap();
    let elapsed = start.elapsed();
    for c in &report.checks {
        o.check(format!("repro {}", c.name), c.passed, format!("expected {}, computed {}", c.expected, c.computed));
    }
    o.timed("single-threaded runtime", elapsed, Duration::from_secs(120));
    o.check("overall status (exit code 0)", report.passed, format!("exit code {}", if report.passed { 0 } else { 1 }));
    o
}

fn main() -> ExitCode {
    // libtest flags such as --nocapture are accepted and ignored
    let segment = 1 << 16;
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get()).max(2);
    let single = Config::default().with_segment_size(segment).with_threads(1);
    let multi = Config::default().with_segment_size(segment).with_threads(threads);

    let criteria: [(&str, Criterion); 9] = [
        ("exact mobius pair sum at 1e4", mobius_pair_sum),
        ("exact liouville pair sum and census at 1e4", liouville_pair_integers),
        ("exact liouville pair sum and census on [1e7, 1e7 + 1e3]", liouville_pair_short),
        ("constants", constants),
        ("identity suite", identities),
        ("sieve tables against trial division", oracle_equivalence),
        ("densities at 1e6", densities),
        ("hypothesis sums", hypothesis),
        ("repro", repro),
    ];

    let mut lines = Vec::new();
    let mut all_passed = true;
    let mut deterministic = Vec::new();
    for (i, (title, run)) in criteria.iter().enumerate() {
        let id = if i == 8 { 10 } else { i + 1 };
        let one = run(&single);
        let many = run(&multi);
        let same = one.record == many.record;
        deterministic.push((id, same));
        let passed = one.passed() && many.passed();
        all_passed &= passed;
        lines.push(format!("criterion {id:>2} {}: {title}", if passed { "PASS" } else { "FAIL" }));
        for (a, b) in one.checks.iter().zip(&many.checks) {
            let mark = if a.passed && b.passed { "ok  " } else { "FAIL" };
            lines.push(format!("    {mark} {}: {}", a.label, a.detail));
        }
    }
    let det_ok = deterministic.iter().all(|d| d.1);
    all_passed &= det_ok;
    lines.insert(
        lines.iter().position(|l| l.starts_with("criterion 10")).unwrap_or(lines.len()),
        format!("criterion  9 {}: identical results at 1 and {threads} threads", if det_ok { "PASS" } else { "FAIL" }),
    );
    let at = lines.iter().position(|l| l.starts_with("criterion  9")).unwrap();
    for (j, (id, same)) in deterministic.iter().enumerate() {
        lines.insert(at + 1 + j, format!("    {} criterion {id}", if *same { "ok  " } else { "FAIL" }));
    }

    for line in &lines {
        println!("{line}");
    }
    let failed: Vec<&String> = lines.iter().filter(|l| l.starts_with("criterion") && l.contains("FAIL")).collect();
    println!("\n{} criteria, {} failed", criteria.len() + 1, failed.len());
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
