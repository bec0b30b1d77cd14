//! Compensated summation and order-preserving parallel reduction.
//!
//! Floating sums are accumulated per segment with Neumaier's variant of
//! Kahan summation, then merged strictly in segment order. Segment
//! boundaries depend only on the configured segment size, so the result is
//! bit-identical for any number of threads.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Running Neumaier sum that also tracks `Σ|x|` for an error bound.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
    magnitude: f64,
    terms: u64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
        self.magnitude += value.abs();
        self.terms += 1;
    }

    /// Appends a later partial sum; `self` must precede `other` in canonical order.
    pub fn merge(&mut self, other: &CompensatedSum) {
        let (magnitude, terms) = (self.magnitude + other.magnitude, self.terms + other.terms);
        self.add(other.sum);
        self.add(other.compensation);
        self.magnitude = magnitude;
        self.terms = terms;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    pub fn terms(&self) -> u64 {
        self.terms
    }

    /// Σ|x_i| over the added terms.
    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    /// Bound on the summation error alone: `ε|S| + 2nε²Σ|x|`.
    pub fn rounding_bound(&self) -> f64 {
        let eps = f64::EPSILON / 2.0;
        eps * self.value().abs() + 2.0 * self.terms as f64 * eps * eps * self.magnitude
    }

    /// Error bound when every input term carries a relative error `input_rel`.
    pub fn approx(&self, input_rel: f64) -> Approx {
        Approx {
            value: self.value(),
            error_bound: self.rounding_bound() + input_rel * self.magnitude,
        }
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// A floating result with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Approx {
    pub value: f64,
    pub error_bound: f64,
}

/// Maps `0..count` in parallel and folds the results in index order.
pub fn ordered_map_reduce<A, M, R>(count: usize, map: M, init: A, mut reduce: R) -> A
where
    A: Send,
    M: Fn(usize) -> A + Sync + Send,
    R: FnMut(A, A) -> A,
{
    let parts: Vec<A> = (0..count).into_par_iter().map(map).collect();
    parts.into_iter().fold(init, &mut reduce)
}
