//! Real zeros of the Jackson q-exponential by bisection.

use super::e_q_raw;
use crate::error::{QError, Result};
use crate::qcore::{QBase, Real};

/// The product-form zero `-q^(n+1) / (q - 1)`.
pub fn zero_closed_form(q: &QBase, n: usize, prec: usize) -> Result<Real> {
    if q.is_classical() {
        return Err(QError::Domain("the classical exponential has no real zeros".into()));
    }
    let qr = q.to_real(prec);
    Ok(-(qr.powi(n as i64 + 1) / &(&qr - &Real::one(prec))))
}

/// The first `n_max + 1` real zeros of `e_q`, located by bisecting the series
/// at precision `prec`.
///
/// Zero `n` is bracketed by `(x_n·√q, x_n/√q)` around the closed-form
/// location `x_n`, a bracket that contains no other zero. The closed form is
/// only used to place the bracket; the root comes from sign changes of the
/// series.
pub fn zeros_of_eq(q: &QBase, n_max: usize, prec: usize) -> Result<Vec<Real>> {
    let guard = prec + 64;
    let root_q = q.to_real(guard).sqrt()?;
    (0..=n_max)
        .map(|n| {
            let centre = zero_closed_form(q, n, guard)?;
            bisect(q, centre.clone() * &root_q, centre / &root_q, prec, guard)
        })
        .collect()
}

/// Sign of `e_q(x)`, or `None` when it is lost in rounding noise.
fn sign(q: &QBase, x: &Real, prec: usize) -> Result<Option<i32>> {
    let eval = e_q_raw(x, q, prec)?;
    let noise = eval.value.log2_abs() + eval.cancellation_digits as f64 / std::f64::consts::LOG10_2;
    // value within 2^-(prec-16) of the largest partial sum is noise
    if eval.value.is_zero() || noise - eval.value.log2_abs() > prec as f64 - 16.0 {
        return Ok(None);
    }
    Ok(Some(eval.value.signum()))
}

fn bisect(q: &QBase, mut lo: Real, mut hi: Real, prec: usize, guard: usize) -> Result<Real> {
    let exhausted = || QError::PrecisionExhausted { precision_bits: guard, cancellation_digits: 0 };
    let s_lo = sign(q, &lo, guard)?.ok_or_else(exhausted)?;
    let s_hi = sign(q, &hi, guard)?.ok_or_else(exhausted)?;
    if s_lo == s_hi {
        return Err(exhausted());
    }
    let target = lo.log2_abs() - prec as f64 - 4.0;
    while (hi.clone() - &lo).log2_abs() > target {
        let mid = (lo.clone() + &hi).mul_pow2(-1);
        match sign(q, &mid, guard)? {
            None => return Ok(mid.with_precision(prec)),
            Some(s) if s == s_lo => lo = mid,
            Some(_) => hi = mid,
        }
    }
    Ok((lo + &hi).mul_pow2(-1).with_precision(prec))
}
