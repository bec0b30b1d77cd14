//! End-to-end recomputation of the published exact values and constants.
//!
//! Each check records the published reference, what it expects, what was
//! computed, and whether the two agree.

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::constants::{correlation_constant, published_value, s0, s0_series, zeta2_inverse};
use crate::correlations::{correlate_with, Domain, TermSpec, Weight};
use crate::error::Result;
use crate::patterns::{census_with, signed_combination, SignFn};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproCheck {
    pub name: String,
    /// Where the expected value comes from.
    pub reference: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproReport {
    pub checks: Vec<ReproCheck>,
    pub passed: bool,
}

impl ReproReport {
    pub fn failures(&self) -> impl Iterator<Item = &ReproCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check(name: &str, reference: &str, expected: String, computed: String, passed: bool) -> ReproCheck {
    ReproCheck { name: name.into(), reference: reference.into(), expected, computed, passed }
}

fn unit_sum(domain: Domain, terms: &str, config: &Config) -> Result<i64> {
    let terms: TermSpec = terms.parse()?;
    Ok(correlate_with(domain, Weight::Unit, &terms, config)?.value.exact().expect("unit weight is exact"))
}

fn pair_counts(domain: Domain, config: &Config) -> Result<(Vec<u64>, u64, i64)> {
    let c = census_with(SignFn::Lambda, &[0, 1], domain, config)?;
    let cells = [[1, 1], [1, -1], [-1, 1], [-1, -1]].iter().map(|s| c.get(s)).collect();
    Ok((cells, c.total, signed_combination(&c)))
}

fn exact_check(name: &str, reference: &str, expected: i64, computed: i64) -> ReproCheck {
    check(name, reference, expected.to_string(), computed.to_string(), expected == computed)
}

fn census_check(name: &str, reference: &str, expected: &[u64], total: u64, computed: (Vec<u64>, u64, i64)) -> ReproCheck {
    let (cells, got_total, _) = computed;
    let fmt = |v: &[u64], t: u64| format!("{v:?} total {t}");
    check(name, reference, fmt(expected, total), fmt(&cells, got_total), cells == expected && got_total == total)
}

fn close(name: &str, reference: &str, expected: f64, computed: f64, tolerance: f64) -> ReproCheck {
    check(
        name,
        reference,
        format!("{expected:.17} ± {tolerance:e}"),
        format!("{computed:.17}"),
        (computed - expected).abs() <= tolerance,
    )
}

pub fn repro() -> Result<ReproReport> {
    repro_with(&Config::default())
}

pub fn repro_with(config: &Config) -> Result<ReproReport> {
    let integers = Domain::Integers { x: 10_000 };
    let short = Domain::ShortInterval { x: 10_000_000, y: 1000 };
    let mut checks = vec![
        exact_check("mobius_pair_sum_1e4", "published autocorrelation", 12, unit_sum(integers, "mu@0,mu@1", config)?),
        exact_check("liouville_pair_sum_1e4", "published autocorrelation", 112, unit_sum(integers, "lambda@0,lambda@1", config)?),
        census_check(
            "liouville_pair_census_1e4",
            "published pattern table",
            &[2481, 2472, 2472, 2575],
            10_000,
            pair_counts(integers, config)?,
        ),
        exact_check("liouville_pair_sum_short", "published short-interval autocorrelation", 27, unit_sum(short, "lambda@0,lambda@1", config)?),
        census_check(
            "liouville_pair_census_short",
            "published short-interval pattern table",
            &[275, 244, 243, 239],
            1001,
            pair_counts(short, config)?,
        ),
    ];

    let published_zeta: f64 = published_value("zeta2inv").expect("known").parse().expect("digits");
    checks.push(check(
        "inverse_zeta2_published_digits",
        "published 6/pi^2 digits",
        format!("{} ± 1e-15", published_value("zeta2inv").expect("known")),
        format!("{:.17}", zeta2_inverse().value),
        (zeta2_inverse().value - published_zeta).abs() <= 1e-15,
    ));

    let s1 = correlation_constant(1, &[0, 1], 100_000)?;
    checks.push(close(
        "two_over_p_squared_product_1e5",
        "published truncated product",
        published_value("s1").expect("known").parse().expect("digits"),
        s1.value,
        1e-12,
    ));

    let product = s0(10_000_000)?;
    let series = s0_series(1_000_000)?;
    let tails = product.tail_bound + series.tail_bound;
    checks.push(check(
        "s0_product_vs_series",
        "Euler product at 1e7 against Dirichlet series at 1e6",
        format!("|difference| <= {tails:e}"),
        format!("{:e}", (product.value - series.value).abs()),
        (product.value - series.value).abs() <= tails,
    ));
    let digits = |v: f64| format!("{:.7}", (v * 1e7).trunc() / 1e7);
    checks.push(check(
        "s0_leading_digits",
        "published s0, trusted digits",
        "0.3739558".into(),
        format!("{} / {}", digits(product.value), digits(series.value)),
        digits(product.value) == "0.3739558" && digits(series.value) == "0.3739558",
    ));

    let passed = checks.iter().all(|c| c.passed);
    Ok(ReproReport { checks, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn injected_fault_is_caught() {
        let cfg = Config { lambda_fault: Some(4), ..Config::default() };
        let report = repro_with(&cfg).unwrap();
        let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        assert!(failed.contains(&"liouville_pair_sum_1e4"));
        assert!(failed.contains(&"liouville_pair_census_1e4"));
        assert!(!failed.contains(&"mobius_pair_sum_1e4"));
        assert!(!report.passed);
    }
}
