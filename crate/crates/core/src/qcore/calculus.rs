//! The Jackson q-derivative and dilation on functions and polynomials, plus
//! the classical finite-difference helpers used for time derivatives and
//! classical-limit comparisons.

use dashu::rational::RBig;

use super::base::{QBase, QTable};
use super::poly::{BiPoly, Poly};
use super::ratio::Ring;
use super::real::{bits_to_digits, Real, Scalar};
use crate::error::{QError, Result};

/// Polynomial with exact rational coefficients, univariate in `x` or
/// bivariate in `x` and the auxiliary variable `s = νt`.
#[derive(Clone, Debug, PartialEq)]
pub enum QPoly {
    Uni(Poly<RBig>),
    Bi(BiPoly<RBig>),
}

/// Exact q-derivative of a polynomial (in `x` for bivariate ones).
pub fn q_derivative_poly(p: &QPoly, q: &QBase) -> Result<QPoly> {
    let deg = match p {
        QPoly::Uni(u) => u.degree().unwrap_or(0),
        QPoly::Bi(b) => b.degree().unwrap_or(0),
    };
    let table = QTable::new(q, deg)?;
    Ok(match p {
        QPoly::Uni(u) => QPoly::Uni(u.q_derivative(&table)),
        QPoly::Bi(b) => QPoly::Bi(b.q_derivative(&table)),
    })
}

/// Point value of a polynomial: exact when `x` (and `s`) are exact.
#[derive(Clone, Debug, PartialEq)]
pub enum PolyArg {
    Exact(RBig),
    Float(Real),
}

/// Horner evaluation of a [`QPoly`]; `s` must be given exactly when `p` is
/// bivariate. Mixed exact/float arguments evaluate in floating point.
pub fn poly_eval(p: &QPoly, x: &PolyArg, s: Option<&PolyArg>) -> Result<PolyArg> {
    match (p, s) {
        (QPoly::Uni(u), None) => Ok(match x {
            PolyArg::Exact(x) => PolyArg::Exact(u.eval(x)),
            PolyArg::Float(x) => PolyArg::Float(u.eval_hp(x)),
        }),
        (QPoly::Uni(_), Some(_)) => Err(QError::Arity("univariate polynomial given a value for s".into())),
        (QPoly::Bi(_), None) => Err(QError::Arity("bivariate polynomial needs a value for s".into())),
        (QPoly::Bi(b), Some(s)) => Ok(match (x, s) {
            (PolyArg::Exact(x), PolyArg::Exact(s)) => PolyArg::Exact(b.eval_s(s).eval(x)),
            (PolyArg::Float(x), PolyArg::Float(s)) => PolyArg::Float(b.eval2_hp(x, s)),
            (PolyArg::Float(x), PolyArg::Exact(s)) => PolyArg::Float(b.eval_s(s).eval_hp(x)),
            (PolyArg::Exact(x), PolyArg::Float(s)) => {
                let xr = Real::from_rational(x, s.precision());
                PolyArg::Float(b.eval2_hp(&xr, s))
            }
        }),
    }
}

/// A q-derivative value with its cancellation bookkeeping.
#[derive(Clone, Debug)]
pub struct QDerivative<S> {
    pub value: S,
    /// Bits lost in `f(qx) - f(x)`.
    pub lost_bits: f64,
    /// Set when more than half the working precision cancelled.
    pub precision_loss: bool,
}

/// `D_q f(x) = (f(qx) - f(x)) / ((q-1)x)` by dilation.
///
/// Undefined at `x = 0`; series-backed representations supply their own
/// limit there. The classical sentinel has no dilation to take and is
/// rejected as well.
pub fn q_derivative_fn<S, F>(f: F, x: &Real, q: &QBase) -> Result<QDerivative<S>>
where
    S: Scalar,
    F: Fn(&Real) -> Result<S>,
{
    if x.is_zero() {
        return Err(QError::Domain("q-derivative by dilation is undefined at x = 0".into()));
    }
    if q.is_classical() {
        return Err(QError::Domain("q = 1 has no dilation quotient; use the classical derivative".into()));
    }
    let prec = x.precision();
    let qr = q.to_real(prec);
    let qx = x * &qr;
    let fq = f(&qx)?;
    let f0 = f(x)?;
    let diff = fq.clone() - &f0;
    let scale = fq.log2_abs().max(f0.log2_abs());
    let lost_bits = if diff.is_zero() {
        if scale.is_finite() { prec as f64 } else { 0.0 }
    } else {
        (scale - diff.log2_abs()).max(0.0)
    };
    let den = (qr - Real::one(prec)) * x;
    Ok(QDerivative {
        value: diff / &S::from_real(den),
        lost_bits,
        precision_loss: lost_bits > prec as f64 / 2.0,
    })
}

/// Second q-derivative by two dilations:
/// `D²f(x) = [f(q²x) - (1+q) f(qx) + q f(x)] / (q (q-1)² x²)`.
pub fn q_second_derivative_fn<S, F>(f: F, x: &Real, q: &QBase) -> Result<S>
where
    S: Scalar,
    F: Fn(&Real) -> Result<S>,
{
    if x.is_zero() {
        return Err(QError::Domain("q-derivative by dilation is undefined at x = 0".into()));
    }
    if q.is_classical() {
        return Err(QError::Domain("q = 1 has no dilation quotient".into()));
    }
    let prec = x.precision();
    let qr = q.to_real(prec);
    let one = Real::one(prec);
    let qx = x * &qr;
    let q2x = &qx * &qr;
    let num = f(&q2x)? - &f(&qx)?.scale(&(&one + &qr)) + &f(x)?.scale(&qr);
    let qm1 = &qr - &one;
    let den = qr * &qm1 * &qm1 * x * x;
    Ok(num / &S::from_real(den))
}

/// Dilation operator `M_q: f ↦ (x ↦ f(qx))`.
pub fn dilate<S, F>(f: F, q: &QBase) -> impl Fn(&Real) -> Result<S>
where
    S: Scalar,
    F: Fn(&Real) -> Result<S>,
{
    let q = q.clone();
    move |x: &Real| {
        let qx = x * &q.to_real(x.precision());
        f(&qx)
    }
}

/// Default finite-difference step `2^(-P/8)` at precision `P`.
pub fn fd_step(prec: usize) -> Real {
    Real::one(prec).mul_pow2(-((prec / 8) as isize))
}

fn stencil<S: Scalar, F: Fn(&Real) -> Result<S>>(f: &F, at: &Real, h: &Real) -> Result<[S; 5]> {
    let two_h = h.mul_pow2(1);
    Ok([
        f(&(at - &two_h))?,
        f(&(at - h))?,
        f(at)?,
        f(&(at + h))?,
        f(&(at + &two_h))?,
    ])
}

fn first_5pt<S: Scalar>(v: &[S; 5], h: &Real) -> S {
    // [f(-2h) - 8 f(-h) + 8 f(h) - f(2h)] / (12 h)
    let prec = h.precision();
    let eight = Real::from_i64(8, prec);
    let num = v[0].clone() - &v[1].scale(&eight) + &v[3].scale(&eight) - &v[4];
    num / &S::from_real(h * &Real::from_i64(12, prec))
}

fn second_5pt<S: Scalar>(v: &[S; 5], h: &Real) -> S {
    // [-f(-2h) + 16 f(-h) - 30 f(0) + 16 f(h) - f(2h)] / (12 h²)
    let prec = h.precision();
    let sixteen = Real::from_i64(16, prec);
    let num = -v[0].clone() + &v[1].scale(&sixteen) - &v[2].scale(&Real::from_i64(30, prec))
        + &v[3].scale(&sixteen)
        - &v[4];
    num / &S::from_real(h * h * &Real::from_i64(12, prec))
}

fn richardson<S: Scalar>(coarse: S, fine: S) -> S {
    // both rules are O(h^4): (16 fine - coarse) / 15
    let prec = fine.precision();
    (fine.scale(&Real::from_i64(16, prec)) - &coarse) / &S::from_real(Real::from_i64(15, prec))
}

/// Classical first derivative: 5-point central difference, Richardson
/// extrapolated over `h` and `h/2`, with `h = 2^(-P/8)`.
pub fn derivative_fd<S, F>(f: F, at: &Real) -> Result<S>
where
    S: Scalar,
    F: Fn(&Real) -> Result<S>,
{
    let h = fd_step(at.precision());
    let coarse = first_5pt(&stencil(&f, at, &h)?, &h);
    let h2 = h.mul_pow2(-1);
    let fine = first_5pt(&stencil(&f, at, &h2)?, &h2);
    Ok(richardson(coarse, fine))
}

/// Classical second derivative, same scheme as [`derivative_fd`].
pub fn second_derivative_fd<S, F>(f: F, at: &Real) -> Result<S>
where
    S: Scalar,
    F: Fn(&Real) -> Result<S>,
{
    let h = fd_step(at.precision());
    let coarse = second_5pt(&stencil(&f, at, &h)?, &h);
    let h2 = h.mul_pow2(-1);
    let fine = second_5pt(&stencil(&f, at, &h2)?, &h2);
    Ok(richardson(coarse, fine))
}

/// A scalar field `φ(x, t)` on the real (x, t) plane.
pub trait Field: Sync {
    type Value: Scalar;

    fn eval(&self, x: &Real, t: &Real) -> Result<Self::Value>;

    /// `∂φ/∂t`; finite differences unless the field knows better.
    fn time_derivative(&self, x: &Real, t: &Real) -> Result<Self::Value> {
        derivative_fd(|tt: &Real| self.eval(x, tt), t)
    }

    fn precision(&self) -> usize;
}

/// A [`Field`] backed by a closure.
pub struct FnField<F> {
    f: F,
    prec: usize,
}

impl<F> FnField<F> {
    pub fn new(f: F, prec: usize) -> Self {
        FnField { f, prec }
    }
}

impl<S, F> Field for FnField<F>
where
    S: Scalar,
    F: Fn(&Real, &Real) -> Result<S> + Sync,
{
    type Value = S;

    fn eval(&self, x: &Real, t: &Real) -> Result<S> {
        (self.f)(&x.with_precision(self.prec), &t.with_precision(self.prec))
    }

    fn precision(&self) -> usize {
        self.prec
    }
}

/// Cancellation measured in decimal digits, given the log2 magnitudes of the
/// largest intermediate and of the result.
pub fn cancellation_digits(max_log2: f64, value_log2: f64, prec: usize) -> u32 {
    if max_log2 == f64::NEG_INFINITY {
        return 0;
    }
    if value_log2 == f64::NEG_INFINITY {
        return bits_to_digits(prec).ceil() as u32;
    }
    (((max_log2 - value_log2) * std::f64::consts::LOG10_2).max(0.0)).floor() as u32
}

/// Exact check of the q-Leibniz rule `D(pr) = D(p)·r(qx) + p·D(r)`.
pub fn q_leibniz_holds<C: Ring>(p: &Poly<C>, r: &Poly<C>, table: &QTable) -> bool {
    let lhs = (p.clone() * r.clone()).q_derivative(table);
    let rhs = p.q_derivative(table) * r.dilate(table.q()) + p.clone() * r.q_derivative(table);
    lhs == rhs
}
