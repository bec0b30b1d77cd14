use std::time::Instant;

use acor::arith::ArithValue;
use acor::cache::load_or_build;
use acor::constants::{
    correlation_constant, derived_densities, published_value, s0, s0_series, zeta2_inverse, zeta2_inverse_product,
    ConstantResult,
};
use acor::correlations::{correlate_with, hypothesis_sum_with, identity_audit_with, CorrelationValue, Domain, TermSpec, Weight};
use acor::patterns::{census_with, densities, signed_combination, SignFn};
use acor::repro::repro_with;
use acor::sieve::{build_table_with, summatory_with, SummatoryKind, SummatoryValue};
use acor::{Config, FunctionKind, Result, Window};
use serde_json::json;

use crate::experiment::{Command, ConstantName, ExperimentConfig};
use crate::output::{float, opt_float, Outcome};

pub fn run(experiment: &ExperimentConfig) -> Result<Outcome> {
    let config = experiment.engine();
    match &experiment.command {
        Command::Table { kind, lo, hi } => table(*kind, Window::new(*lo, *hi)?, experiment, &config),
        Command::Sum { kind, x } => sum(*kind, *x, &config),
        Command::Correlate { domain, weight, terms } => correlate(*domain, *weight, terms, &config),
        Command::Census { func, shifts, domain } => census(*func, shifts, *domain, &config),
        Command::Constants { name, cutoff, q, shifts } => constants(*name, *cutoff, *q, shifts),
        Command::Hypothesis { func, shifts, x, b } => {
            let r = hypothesis_sum_with(*func, shifts, *x, *b, &config)?;
            let row = vec![
                r.func.name().to_string(),
                join(&r.shifts),
                r.x.to_string(),
                r.moduli.to_string(),
                r.value.to_string(),
                r.prime_count.to_string(),
                r.crude_cap.to_string(),
            ];
            Ok(Outcome::new(vec!["fn", "shifts", "x", "moduli", "value", "prime_count", "crude_cap"], vec![row], &r))
        }
        Command::Audit { identity, x } => {
            let r = identity_audit_with(*identity, *x, &config)?;
            let row = vec![
                identity.name().to_string(),
                identity.shift().to_string(),
                r.x.to_string(),
                r.terms_checked.to_string(),
                r.lhs_total.to_string(),
                r.rhs_total.to_string(),
                r.mismatches.len().to_string(),
                r.holds.to_string(),
            ];
            let holds = r.holds;
            Ok(Outcome::new(
                vec!["identity", "shift", "x", "terms_checked", "lhs_total", "rhs_total", "mismatches", "holds"],
                vec![row],
                &r,
            )
            .with_status(holds))
        }
        Command::Repro => {
            let report = repro_with(&config)?;
            let rows = report
                .checks
                .iter()
                .map(|c| vec![c.name.clone(), c.reference.clone(), c.expected.clone(), c.computed.clone(), c.passed.to_string()])
                .collect();
            let passed = report.passed;
            Ok(Outcome::new(vec!["check", "reference", "expected", "computed", "passed"], rows, &report).with_status(passed))
        }
        Command::Bench { x } => bench(*x, &config),
    }
}

fn join(shifts: &[i64]) -> String {
    shifts.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

fn table(kind: FunctionKind, window: Window, experiment: &ExperimentConfig, config: &Config) -> Result<Outcome> {
    let table = match &experiment.cache_dir {
        Some(dir) => load_or_build(kind, window, dir, config)?,
        None => build_table_with(kind, window, config)?,
    };
    let mangoldt = kind == FunctionKind::Mangoldt;
    let header = if mangoldt { vec!["n", "prime", "exponent", "value"] } else { vec!["n", "value"] };
    let rows = table
        .iter()
        .map(|(n, v)| match v {
            ArithValue::Int(v) => vec![n.to_string(), v.to_string()],
            ArithValue::PrimePower(Some(pp)) => {
                vec![n.to_string(), pp.prime.to_string(), pp.exponent.to_string(), float(pp.log_prime())]
            }
            ArithValue::PrimePower(None) => vec![n.to_string(), String::new(), String::new(), "0".into()],
        })
        .collect();
    let json = json!({ "kind": kind, "window": window, "values": table.values() });
    Ok(Outcome::new(header, rows, &json))
}

fn value_cells(value: Option<i64>, approx: Option<(f64, f64)>) -> [String; 2] {
    match (value, approx) {
        (Some(v), _) => [v.to_string(), "0".into()],
        (None, Some((v, e))) => [float(v), float(e)],
        (None, None) => [String::new(), String::new()],
    }
}

fn sum(kind: SummatoryKind, x: u64, config: &Config) -> Result<Outcome> {
    let value = summatory_with(kind, x, config)?;
    let cells = match value {
        SummatoryValue::Exact(v) => value_cells(Some(v), None),
        SummatoryValue::Approx(a) => value_cells(None, Some((a.value, a.error_bound))),
    };
    let row = vec![format!("{kind:?}"), x.to_string(), cells[0].clone(), cells[1].clone()];
    Ok(Outcome::new(
        vec!["kind", "x", "value", "error_bound"],
        vec![row],
        &json!({ "kind": kind, "x": x, "value": value }),
    ))
}

fn correlate(domain: Domain, weight: Weight, terms: &TermSpec, config: &Config) -> Result<Outcome> {
    let r = correlate_with(domain, weight, terms, config)?;
    let cells = match r.value {
        CorrelationValue::Exact(v) => value_cells(Some(v), None),
        CorrelationValue::Approx(a) => value_cells(None, Some((a.value, a.error_bound))),
    };
    let row = vec![
        domain.to_string(),
        format!("{weight:?}"),
        terms.to_string(),
        r.effective_lo.to_string(),
        r.term_count.to_string(),
        cells[0].clone(),
        cells[1].clone(),
    ];
    Ok(Outcome::new(
        vec!["domain", "weight", "terms", "effective_lo", "term_count", "value", "error_bound"],
        vec![row],
        &r,
    ))
}

fn census(func: SignFn, shifts: &[i64], domain: Domain, config: &Config) -> Result<Outcome> {
    let c = census_with(func, shifts, domain, config)?;
    let rows = densities(&c)?;
    let csv = rows
        .iter()
        .map(|r| {
            vec![
                r.key.to_string(),
                r.count.to_string(),
                float(r.empirical),
                opt_float(r.predicted),
                r.source.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let json = json!({
        "fn": func,
        "shifts": shifts,
        "domain": domain,
        "effective_lo": c.effective_lo,
        "total": c.total,
        "signed_combination": signed_combination(&c),
        "cells": rows.iter().map(|r| json!({
            "key": r.key.to_string(),
            "count": r.count,
            "empirical": r.empirical,
            "predicted": r.predicted,
            "source": r.source,
        })).collect::<Vec<_>>(),
    });
    Ok(Outcome::new(vec!["key", "count", "empirical", "predicted", "source"], csv, &json))
}

fn constants(name: ConstantName, cutoff: u64, q: i64, shifts: &[i64]) -> Result<Outcome> {
    let mut entries: Vec<(&'static str, ConstantResult, Option<&'static str>)> = Vec::new();
    let want = |n: ConstantName| name == n || name == ConstantName::All;
    if want(ConstantName::S0) {
        entries.push(("s0", s0(cutoff)?, published_value("s0")));
    }
    if want(ConstantName::S0Series) {
        entries.push(("s0_series", s0_series(cutoff)?, published_value("s0")));
    }
    if want(ConstantName::Zeta2inv) {
        entries.push(("zeta2inv", zeta2_inverse(), published_value("zeta2inv")));
    }
    if want(ConstantName::Zeta2invProduct) {
        entries.push(("zeta2inv_product", zeta2_inverse_product(cutoff)?, published_value("zeta2inv")));
    }
    if want(ConstantName::S1) {
        entries.push(("s1", correlation_constant(1, &[0, 1], cutoff)?, published_value("s1")));
    }
    if want(ConstantName::S2) || want(ConstantName::S3) {
        let (s2, s3) = derived_densities(cutoff)?;
        if want(ConstantName::S2) {
            entries.push(("s2", s2, published_value("s2")));
        }
        if want(ConstantName::S3) {
            entries.push(("s3", s3, published_value("s3")));
        }
    }
    if name == ConstantName::Tuple {
        entries.push(("tuple", correlation_constant(q, shifts, cutoff)?, None));
    }
    let rows = entries
        .iter()
        .map(|(n, c, published)| {
            vec![
                n.to_string(),
                float(c.value),
                c.cutoff.to_string(),
                float(c.tail_bound),
                format!("{:?}", c.method),
                published.unwrap_or_default().to_string(),
            ]
        })
        .collect();
    let json: Vec<_> = entries
        .iter()
        .map(|(n, c, published)| json!({ "name": n, "result": c, "published": published }))
        .collect();
    Ok(Outcome::new(vec!["name", "value", "cutoff", "tail_bound", "method", "published"], rows, &json))
}

fn bench(x: u64, config: &Config) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut timed = |task: &'static str, f: &mut dyn FnMut() -> Result<String>| -> Result<()> {
        let start = Instant::now();
        let result = f()?;
        rows.push(vec![task.to_string(), x.to_string(), float(start.elapsed().as_secs_f64()), result]);
        Ok(())
    };
    timed("table_mu", &mut || Ok(build_table_with(FunctionKind::Mu, Window::up_to(x)?, config)?.values().len().to_string()))?;
    timed("mertens", &mut || Ok(summatory_with(SummatoryKind::Mu, x, config)?.as_f64().to_string()))?;
    timed("psi", &mut || Ok(float(summatory_with(SummatoryKind::MangoldtPsi, x, config)?.as_f64())))?;
    let pair: TermSpec = "lambda@0,lambda@1".parse()?;
    timed("liouville_pair_sum", &mut || {
        Ok(correlate_with(Domain::Integers { x }, Weight::Unit, &pair, config)?.value.as_f64().to_string())
    })?;
    timed("mobius_pair_census", &mut || {
        Ok(signed_combination(&census_with(SignFn::Mu, &[0, 1], Domain::Integers { x }, config)?).to_string())
    })?;
    timed("s0_product", &mut || Ok(float(s0(x)?.value)))?;
    let json: Vec<_> = rows
        .iter()
        .map(|r| json!({ "task": r[0], "x": x, "seconds": r[2].parse::<f64>().unwrap_or(0.0), "result": r[3] }))
        .collect();
    Ok(Outcome::new(vec!["task", "x", "seconds", "result"], rows, &json))
}
