//! Summation of power series with cancellation bookkeeping.

use crate::error::{QError, Result};
use crate::qcore::{bits_to_digits, cancellation_digits, Real, Scalar};

/// Metadata of a series evaluation.
#[derive(Clone, Debug)]
pub struct QSeriesEval<S> {
    /// Terms summed, counting the constant term.
    pub terms_used: usize,
    pub value: S,
    /// Modulus of the first omitted term.
    pub truncation_bound: Real,
    /// Decimal digits lost between the largest partial sum and the value.
    pub cancellation_digits: u32,
    /// Working precision of the accepted pass.
    pub precision_bits: usize,
}

/// Consecutive negligible terms needed before truncating.
const QUIET_TERMS: usize = 3;
/// Hard cap on series length.
pub(crate) const MAX_TERMS: usize = 2_000_000;

/// One pass at fixed working precision `prec`. `terms` yields the series
/// terms in order, already at `prec` bits.
pub(crate) fn sum_once<S, I>(terms: I, prec: usize) -> Result<QSeriesEval<S>>
where
    S: Scalar,
    I: IntoIterator<Item = S>,
{
    let mut sum: Option<S> = None;
    let mut max_log2 = f64::NEG_INFINITY;
    let mut quiet = 0;
    let mut used = 0;
    let mut iter = terms.into_iter();
    loop {
        let Some(term) = iter.next() else { break };
        let tl = term.log2_abs();
        if used > 0 && tl < max_log2 - prec as f64 {
            quiet += 1;
            if quiet == QUIET_TERMS {
                let value = sum.unwrap_or_else(|| S::zero(prec));
                let truncation_bound = iter.next().map(|t| t.modulus()).unwrap_or_else(|| Real::zero(prec));
                let cancellation = cancellation_digits(max_log2, value.log2_abs(), prec);
                return Ok(QSeriesEval {
                    terms_used: used,
                    value,
                    truncation_bound,
                    cancellation_digits: cancellation,
                    precision_bits: prec,
                });
            }
        } else {
            quiet = 0;
        }
        let next = match sum.take() {
            None => term,
            Some(s) => s + &term,
        };
        max_log2 = max_log2.max(next.log2_abs());
        sum = Some(next);
        used += 1;
        if used > MAX_TERMS {
            return Err(QError::NoConvergence(MAX_TERMS));
        }
    }
    // finite series: the iterator ran dry
    let value = sum.unwrap_or_else(|| S::zero(prec));
    let cancellation = cancellation_digits(max_log2, value.log2_abs(), prec);
    Ok(QSeriesEval {
        terms_used: used.max(1),
        value,
        truncation_bound: Real::zero(prec),
        cancellation_digits: cancellation,
        precision_bits: prec,
    })
}

/// Sums at precision `prec`, doubling the working precision up to twice while
/// cancellation eats more than half the requested digits. The value is
/// rounded back to `prec`.
pub(crate) fn sum_adaptive<S, I, F>(prec: usize, make_terms: F) -> Result<QSeriesEval<S>>
where
    S: Scalar,
    I: IntoIterator<Item = S>,
    F: Fn(usize) -> Result<I>,
{
    let wanted = bits_to_digits(prec);
    let mut working = prec;
    let mut last = None;
    for _ in 0..3 {
        let eval = sum_once(make_terms(working)?, working)?;
        if bits_to_digits(working) - eval.cancellation_digits as f64 >= wanted / 2.0 {
            return Ok(QSeriesEval {
                value: eval.value.with_precision(prec),
                truncation_bound: eval.truncation_bound.with_precision(prec),
                ..eval
            });
        }
        last = Some(eval.cancellation_digits);
        working *= 2;
    }
    Err(QError::PrecisionExhausted {
        precision_bits: working / 2,
        cancellation_digits: last.unwrap_or(0),
    })
}
