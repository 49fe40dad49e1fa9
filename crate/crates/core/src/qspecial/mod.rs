//! Jackson q-exponential, q-hyperbolic functions, the q-logarithm series and
//! the real zeros of the q-exponential.

mod series;
mod zeros;

pub use series::QSeriesEval;
pub use zeros::{zero_closed_form, zeros_of_eq};

use dashu::base::{BitTest, PowerOfTwo, UnsignedAbs};
use dashu::rational::RBig;

use crate::error::{QError, Result};
use crate::qcore::{QBase, Real, Scalar};
use series::{sum_adaptive, sum_once};

/// Terms `x^n / [n]_q!` at working precision `prec`.
fn exp_terms<S: Scalar>(x: &S, q: &QBase, prec: usize) -> impl Iterator<Item = S> {
    let x = x.with_precision(prec);
    let qr = q.to_real(prec);
    let one = Real::one(prec);
    let mut term = S::one(prec);
    let mut number = Real::zero(prec);
    let mut first = true;
    std::iter::from_fn(move || {
        if first {
            first = false;
            return Some(term.clone());
        }
        number = &number * &qr + &one;
        term = term.clone() * &x / &S::from_real(number.clone());
        Some(term.clone())
    })
}

/// The Jackson q-exponential `e_q(x) = Σ x^n / [n]_q!` at the precision of `x`.
///
/// At the classical sentinel this is the ordinary exponential.
///
/// ```
/// use qcalc_core::{QBase, Real};
/// use qcalc_core::qspecial::e_q;
/// let (v, meta) = e_q(&Real::one(256), &QBase::rational(2, 1).unwrap()).unwrap();
/// assert!((v.to_f64() - 2.384_231_029).abs() < 1e-9);
/// assert!(meta.terms_used > 10);
/// ```
pub fn e_q<S: Scalar>(x: &S, q: &QBase) -> Result<(S, QSeriesEval<S>)> {
    let prec = x.precision();
    if q.is_classical() {
        let value = x.exp();
        let meta = QSeriesEval {
            terms_used: 1,
            value: value.clone(),
            truncation_bound: Real::zero(prec),
            cancellation_digits: 0,
            precision_bits: prec,
        };
        return Ok((value, meta));
    }
    if x.imag_part().is_zero() {
        if let Some(n) = lattice_zero_index(&x.real_part(), q) {
            let meta = QSeriesEval {
                terms_used: n + 1,
                value: S::zero(prec),
                truncation_bound: Real::zero(prec),
                cancellation_digits: 0,
                precision_bits: prec,
            };
            return Ok((S::zero(prec), meta));
        }
    }
    let eval = sum_adaptive(prec, |p| Ok(exp_terms(x, q, p)))?;
    Ok((eval.value.clone(), eval))
}

/// `Some(n)` when `x` is exactly the zero `-q^(n+1) / (q - 1)`, which needs a
/// rational `q` whose zero is a dyadic rational.
fn lattice_zero_index(x: &Real, q: &QBase) -> Option<usize> {
    let exact = q.exact().ok()?;
    if !x.is_negative() {
        return None;
    }
    let level = (-x.to_f64() * (q.to_f64() - 1.0)).ln() / q.to_f64().ln() - 1.0;
    if !level.is_finite() || level < -0.5 {
        return None;
    }
    let n = level.round() as usize;
    let zero = -(exact.clone().pow(n + 1) / (exact - RBig::ONE));
    if !zero.denominator().is_power_of_two() {
        return None;
    }
    let bits = zero.numerator().unsigned_abs().bit_len() + 2;
    let wide = x.precision().max(bits);
    (Real::from_rational(&zero, wide) == x.with_precision(wide)).then_some(n)
}

/// Just the value of [`e_q`].
pub fn e_q_value<S: Scalar>(x: &S, q: &QBase) -> Result<S> {
    e_q(x, q).map(|(v, _)| v)
}

/// One pass of the series at a fixed working precision, with no cancellation
/// check. Used where only the sign matters.
pub(crate) fn e_q_raw(x: &Real, q: &QBase, prec: usize) -> Result<QSeriesEval<Real>> {
    if q.is_classical() {
        let value = x.with_precision(prec).exp();
        return Ok(QSeriesEval {
            terms_used: 1,
            value,
            truncation_bound: Real::zero(prec),
            cancellation_digits: 0,
            precision_bits: prec,
        });
    }
    sum_once(exp_terms(x, q, prec), prec)
}

/// `e_q` through its infinite product `Π_{k≥0} (1 + (q-1) x / q^(k+1))`,
/// taken until the factors equal one at working precision.
pub fn e_q_product(x: &Real, q: &QBase) -> Result<Real> {
    if q.is_classical() {
        return Err(QError::Domain("the product form needs q > 1".into()));
    }
    let prec = x.precision();
    let qr = q.to_real(prec);
    let one = Real::one(prec);
    let mut step = (&qr - &one) * x / &qr;
    let mut acc = one.clone();
    let floor = -(prec as f64) - 8.0;
    while !step.is_zero() && step.log2_abs() > floor {
        acc = acc * &(&one + &step);
        step = step / &qr;
    }
    Ok(acc)
}

/// `(e_q(x) - e_q(-x)) / 2`
pub fn sinh_q<S: Scalar>(x: &S, q: &QBase) -> Result<S> {
    let (a, b) = both_signs(x, q)?;
    Ok(half(a - &b))
}

/// `(e_q(x) + e_q(-x)) / 2`
pub fn cosh_q<S: Scalar>(x: &S, q: &QBase) -> Result<S> {
    let (a, b) = both_signs(x, q)?;
    Ok(half(a + &b))
}

/// `sinh_q / cosh_q`; a vanishing denominator is reported as a pole.
pub fn tanh_q<S: Scalar>(x: &S, q: &QBase) -> Result<S> {
    let (a, b) = both_signs(x, q)?;
    let den = a.clone() + &b;
    let scale = a.log2_abs().max(b.log2_abs());
    if den.is_zero() || den.log2_abs() < scale - x.precision() as f64 {
        return Err(QError::Pole { x: x.real_part().to_f64(), t: 0.0, bracket: None });
    }
    Ok((a - &b) / &den)
}

fn both_signs<S: Scalar>(x: &S, q: &QBase) -> Result<(S, S)> {
    let neg = -x.clone();
    Ok((e_q_value(x, q)?, e_q_value(&neg, q)?))
}

fn half<S: Scalar>(v: S) -> S {
    let prec = v.precision();
    v.scale(&Real::one(prec).mul_pow2(-1))
}

/// The q-logarithm series `ln_q(z) = Σ_{N≥1} (-1)^(N-1) z^N / [N]_q`,
/// the expansion of `Ln_q(1 + z)`, for `0 < |z| < q`.
///
/// At the classical sentinel the series is the Mercator series, valid for
/// `0 < |z| < 1`.
pub fn ln_q<S: Scalar>(z: &S, q: &QBase) -> Result<(S, QSeriesEval<S>)> {
    let prec = z.precision();
    let radius = if q.is_classical() { Real::one(prec) } else { q.to_real(prec) };
    let modulus = z.modulus();
    if z.is_zero() || modulus >= radius {
        return Err(QError::Domain(format!(
            "ln_q needs 0 < |z| < {}, got |z| = {}",
            radius.to_sci_string(12),
            modulus.to_sci_string(12)
        )));
    }
    let eval = sum_adaptive(prec, |p| {
        let z = z.with_precision(p);
        let qr = if q.is_classical() { Real::one(p) } else { q.to_real(p) };
        let one = Real::one(p);
        let mut power = S::one(p);
        let mut number = Real::zero(p);
        let mut sign = -one.clone();
        Ok(std::iter::from_fn(move || {
            power = power.clone() * &z;
            number = &number * &qr + &one;
            sign = -sign.clone();
            Some(power.scale(&sign) / &S::from_real(number.clone()))
        }))
    })?;
    Ok((eval.value.clone(), eval))
}
