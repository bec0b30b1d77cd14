use crate::config::Config;
use crate::error::{Error, Result};
use crate::reduce::ordered_map_reduce;
use crate::sieve::{base_primes, Factored};
use crate::window::{Window, MAX_ARGUMENT};

use super::Domain;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Span {
    pub lo: u64,
    pub hi: u64,
    pub primes_only: bool,
    /// `(q, r)`: only `n ≡ r (mod q)`.
    pub progression: Option<(u64, u64)>,
}

/// Runs `visit` on every element of `domain`, segment by segment, with a
/// sieve covering `n + shift` for every shift. Per-segment accumulators are
/// merged in segment order.
///
/// Returns the effective span (`None` when raising the lower bound empties
/// the domain) and the merged accumulator.
pub(crate) fn fold_domain<A, I, V, M>(
    domain: &Domain,
    shifts: &[i64],
    config: &Config,
    init: I,
    visit: V,
    merge: M,
) -> Result<(Option<Span>, A)>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    V: Fn(&mut A, u64, &Factored) + Sync + Send,
    M: FnMut(A, A) -> A + Send,
{
    domain.validate()?;
    let min_shift = shifts.iter().copied().min().unwrap_or(0).min(0);
    let max_shift = shifts.iter().copied().max().unwrap_or(0).max(0);
    let below = min_shift.unsigned_abs();
    let above = max_shift as u64;

    let mut span = domain.span();
    if span.hi.checked_add(above).is_none_or(|top| top > MAX_ARGUMENT) {
        return Err(Error::Range(format!(
            "argument {} + {above} exceeds 2^63 - 1",
            span.hi
        )));
    }
    span.lo = span.lo.max(below + 1);
    if span.lo > span.hi {
        return Ok((None, init()));
    }
    let spread = below + above;
    if spread > config.segment_size.max(1 << 16) as u64 {
        return Err(Error::Guard(format!(
            "shift spread {spread} exceeds the segment size {}",
            config.segment_size
        )));
    }

    let base = base_primes(span.hi + above);
    let whole = Window::new(span.lo, span.hi)?;
    let chunks: Vec<Window> = whole.segments(config.segment_size).collect();
    let acc = config.install(|| {
        ordered_map_reduce(
            chunks.len(),
            |i| {
                let chunk = chunks[i];
                let padded = Window::new(chunk.lo() - below, chunk.hi() + above).expect("padded window is valid");
                let f = Factored::sieve(padded, &base, config.lambda_fault);
                let mut acc = init();
                let (start, step) = match span.progression {
                    Some((q, r)) => {
                        let offset = (r + q - chunk.lo() % q) % q;
                        (chunk.lo().saturating_add(offset), q)
                    }
                    None => (chunk.lo(), 1),
                };
                let mut n = start;
                while n <= chunk.hi() {
                    if !span.primes_only || f.is_prime(n) {
                        visit(&mut acc, n, &f);
                    }
                    n = match n.checked_add(step) {
                        Some(next) => next,
                        None => break,
                    };
                }
                acc
            },
            init(),
            merge,
        )
    });
    Ok((Some(span), acc))
}
