//! Arbitrary-precision real and complex scalars.
//!
//! [`Real`] wraps a binary `FBig` and carries its working precision in bits.
//! Arithmetic between two values runs at the larger of the two precisions.
//! [`Complex`] is a pair of reals. Both implement [`Scalar`], the interface
//! the series, field and residual code is generic over.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu::base::{Abs, BitTest, EstimatedLog2, Sign, UnsignedAbs};
use dashu::float::round::mode::HalfEven;
use dashu::float::FBig;
use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;

use crate::error::{QError, Result};

type Fb = FBig<HalfEven, 2>;

/// Smallest admissible working precision.
pub const MIN_PRECISION: usize = 64;

/// Precision used when the caller does not ask for one.
pub const DEFAULT_PRECISION: usize = 256;

/// Decimal digits carried by `bits` binary digits.
pub fn bits_to_digits(bits: usize) -> f64 {
    bits as f64 * std::f64::consts::LOG10_2
}

/// Arbitrary-precision real number.
#[derive(Clone, PartialEq)]
pub struct Real(Fb);

impl Real {
    fn wrap(value: Fb, prec: usize) -> Self {
        Real(value.with_precision(prec.max(MIN_PRECISION)).value())
    }

    pub fn zero(prec: usize) -> Self {
        Self::wrap(Fb::ZERO, prec)
    }

    pub fn one(prec: usize) -> Self {
        Self::wrap(Fb::ONE, prec)
    }

    pub fn from_i64(v: i64, prec: usize) -> Self {
        Self::wrap(Fb::from(v), prec)
    }

    /// Exact conversion of a binary double, then widened to `prec`.
    pub fn from_f64(v: f64, prec: usize) -> Self {
        let f = Fb::try_from(v).expect("finite f64");
        Self::wrap(f, prec)
    }

    /// Correctly rounded value of an exact rational.
    pub fn from_rational(r: &RBig, prec: usize) -> Self {
        let prec = prec.max(MIN_PRECISION);
        let num = Fb::from(r.numerator().clone()).with_precision(prec).value();
        let den = Fb::from(IBig::from(r.denominator().clone()));
        Real(num / den)
    }

    /// Parses a decimal (`-1.25e-3`) or a fraction (`3/2`).
    pub fn parse(s: &str, prec: usize) -> Result<Self> {
        Ok(Self::from_rational(&super::ratio::parse_rational(s)?, prec))
    }

    pub fn precision(&self) -> usize {
        self.0.precision()
    }

    /// The same value rounded or widened to `prec` bits.
    pub fn with_precision(&self, prec: usize) -> Self {
        Self::wrap(self.0.clone(), prec)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    pub fn is_zero(&self) -> bool {
        self.0.repr().is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.sign() == Sign::Negative && !self.is_zero()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Self {
        Real(self.0.clone().abs())
    }

    /// Estimate of log2|x|; `-inf` at zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.0.log2_est() as f64
        }
    }

    pub fn exp(&self) -> Self {
        Real(self.0.exp())
    }

    pub fn ln(&self) -> Result<Self> {
        if self.is_negative() || self.is_zero() {
            return Err(QError::Domain(format!("ln of non-positive value {}", self.to_f64())));
        }
        Ok(Real(self.0.ln()))
    }

    pub fn sqrt(&self) -> Result<Self> {
        use dashu::base::SquareRoot;
        if self.is_negative() {
            return Err(QError::Domain(format!("sqrt of negative value {}", self.to_f64())));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        Ok(Real(self.0.sqrt()))
    }

    pub fn powi(&self, n: i64) -> Self {
        if n == 0 {
            return Real::one(self.precision());
        }
        Real(self.0.powi(IBig::from(n)))
    }

    /// Multiplication by 2^k.
    pub fn mul_pow2(&self, k: isize) -> Self {
        if k >= 0 {
            Real(self.0.clone() << k)
        } else {
            Real(self.0.clone() >> (-k))
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Sine and cosine, by argument halving, Taylor series and doubling.
    pub fn sin_cos(&self) -> (Real, Real) {
        let prec = self.precision();
        if self.is_zero() {
            return (Real::zero(prec), Real::one(prec));
        }
        let halvings = (self.log2_abs().ceil() as isize + 8).max(0);
        let work = prec + 32 + halvings as usize;
        let a = self.with_precision(work).mul_pow2(-halvings);
        let a2 = a.clone() * &a;
        // sin a = a - a^3/3! + ..., cos a = 1 - a^2/2! + ...
        let mut s = a.clone();
        let mut c = Real::one(work);
        let mut st = a.clone();
        let mut ct = Real::one(work);
        let mut n: i64 = 1;
        loop {
            ct = -(ct * &a2) / Real::from_i64(n * (n + 1), work);
            st = -(st * &a2) / Real::from_i64((n + 1) * (n + 2), work);
            c = c + &ct;
            s = s + &st;
            n += 2;
            if ct.log2_abs() < -(work as f64) - 4.0 && st.log2_abs() < a.log2_abs() - work as f64 - 4.0 {
                break;
            }
        }
        let one = Real::one(work);
        for _ in 0..halvings {
            let s2 = (s.clone() * &c).mul_pow2(1);
            c = (c.clone() * &c).mul_pow2(1) - &one;
            s = s2;
        }
        (s.with_precision(prec), c.with_precision(prec))
    }

    /// Scientific notation with `digits` significant decimal digits,
    /// e.g. `-1.2345e-3`. Zero prints as `0`.
    pub fn to_sci_string(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let digits = digits.max(1);
        let sig = self.0.repr().significand();
        let negative = *sig < IBig::ZERO;
        let (mut text, mut exp) = decimal_digits(&sig.unsigned_abs(), self.0.repr().exponent(), digits, self.log2_abs());
        // normalise the mantissa, dropping trailing zeros
        while text.len() > 1 && text.ends_with('0') {
            text.pop();
            exp += 1;
        }
        let sci_exp = exp + text.len() as isize - 1;
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        out.push_str(&text[..1]);
        if text.len() > 1 {
            out.push('.');
            out.push_str(&text[1..]);
        }
        if sci_exp != 0 {
            out.push_str(&format!("e{sci_exp}"));
        }
        out
    }
}

/// `m·2^e` rounded half to even to `digits` significant decimal
/// digits, as the digit string and the power of ten of its last digit.
fn decimal_digits(m: &UBig, e: isize, digits: usize, log2: f64) -> (String, isize) {
    let mut lead = (log2 * std::f64::consts::LOG10_2).floor() as isize;
    loop {
        let k = digits as isize - 1 - lead;
        let ten = |n: isize| UBig::from(10u8).pow(n.unsigned_abs());
        let mut num = m.clone();
        let mut den = UBig::ONE;
        if k >= 0 {
            num *= ten(k);
        } else {
            den *= ten(k);
        }
        if e >= 0 {
            num <<= e as usize;
        } else {
            den <<= e.unsigned_abs();
        }
        let (mut rounded, rem) = (&num / &den, &num % &den);
        let twice: UBig = rem * 2u8;
        if twice > den || (twice == den && rounded.bit(0)) {
            rounded += 1u8;
        }
        let text = rounded.to_string();
        match text.len().cmp(&digits) {
            Ordering::Greater => lead += 1,
            Ordering::Less => lead -= 1,
            Ordering::Equal => return (text, -k),
        }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_sci_string(20))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(((bits_to_digits(self.precision())) as usize).max(1));
        f.write_str(&self.to_sci_string(digits))
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                Real(self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &'a Real) -> Real {
                Real(self.0 $op &rhs.0)
            }
        }
        impl<'a> $trait<&'a Real> for &'a Real {
            type Output = Real;
            fn $method(self, rhs: &'a Real) -> Real {
                Real(&self.0 $op &rhs.0)
            }
        }
    };
}

real_binop!(Add, add, +);
real_binop!(Sub, sub, -);
real_binop!(Mul, mul, *);
real_binop!(Div, div, /);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0.clone())
    }
}

/// Arbitrary-precision complex number.
#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn from_real(re: Real) -> Self {
        let prec = re.precision();
        Complex { re, im: Real::zero(prec) }
    }

    /// The imaginary unit times `im`.
    pub fn imag(im: Real) -> Self {
        let prec = im.precision();
        Complex { re: Real::zero(prec), im }
    }

    pub fn i(prec: usize) -> Self {
        Complex::imag(Real::one(prec))
    }

    pub fn conj(&self) -> Self {
        Complex { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Real {
        self.re.clone() * &self.re + self.im.clone() * &self.im
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex({} + {}i)", self.re.to_sci_string(20), self.im.to_sci_string(20))
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(((bits_to_digits(self.re.precision())) as usize).max(1));
        let im = self.im.to_sci_string(digits);
        if let Some(stripped) = im.strip_prefix('-') {
            write!(f, "{} - {}i", self.re.to_sci_string(digits), stripped)
        } else {
            write!(f, "{} + {}i", self.re.to_sci_string(digits), im)
        }
    }
}

impl Add for Complex {
    type Output = Complex;
    fn add(self, rhs: Complex) -> Complex {
        Complex { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}
impl<'a> Add<&'a Complex> for Complex {
    type Output = Complex;
    fn add(self, rhs: &'a Complex) -> Complex {
        Complex { re: self.re + &rhs.re, im: self.im + &rhs.im }
    }
}
impl Sub for Complex {
    type Output = Complex;
    fn sub(self, rhs: Complex) -> Complex {
        Complex { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}
impl<'a> Sub<&'a Complex> for Complex {
    type Output = Complex;
    fn sub(self, rhs: &'a Complex) -> Complex {
        Complex { re: self.re - &rhs.re, im: self.im - &rhs.im }
    }
}
impl<'a> Mul<&'a Complex> for Complex {
    type Output = Complex;
    fn mul(self, rhs: &'a Complex) -> Complex {
        let re = self.re.clone() * &rhs.re - self.im.clone() * &rhs.im;
        let im = self.re * &rhs.im + self.im * &rhs.re;
        Complex { re, im }
    }
}
impl Mul for Complex {
    type Output = Complex;
    fn mul(self, rhs: Complex) -> Complex {
        self * &rhs
    }
}
impl<'a> Div<&'a Complex> for Complex {
    type Output = Complex;
    fn div(self, rhs: &'a Complex) -> Complex {
        let den = rhs.norm_sqr();
        let re = (self.re.clone() * &rhs.re + self.im.clone() * &rhs.im) / &den;
        let im = (self.im * &rhs.re - self.re * &rhs.im) / &den;
        Complex { re, im }
    }
}
impl Div for Complex {
    type Output = Complex;
    fn div(self, rhs: Complex) -> Complex {
        self / &rhs
    }
}
impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -self.re, im: -self.im }
    }
}

/// Field-like scalar interface shared by [`Real`] and [`Complex`].
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    fn from_real(r: Real) -> Self;
    fn zero(prec: usize) -> Self {
        Self::from_real(Real::zero(prec))
    }
    fn one(prec: usize) -> Self {
        Self::from_real(Real::one(prec))
    }
    fn from_rational(r: &RBig, prec: usize) -> Self {
        Self::from_real(Real::from_rational(r, prec))
    }
    fn scale(&self, r: &Real) -> Self;
    /// Modulus.
    fn modulus(&self) -> Real;
    /// Estimate of log2 of the modulus; `-inf` at zero.
    fn log2_abs(&self) -> f64;
    fn precision(&self) -> usize;
    fn with_precision(&self, prec: usize) -> Self;
    fn is_zero(&self) -> bool;
    fn exp(&self) -> Self;
    fn real_part(&self) -> Real;
    fn imag_part(&self) -> Real;
    fn to_f64_pair(&self) -> (f64, f64) {
        (self.real_part().to_f64(), self.imag_part().to_f64())
    }
}

impl Scalar for Real {
    fn from_real(r: Real) -> Self {
        r
    }
    fn scale(&self, r: &Real) -> Self {
        self * r
    }
    fn modulus(&self) -> Real {
        self.abs()
    }
    fn log2_abs(&self) -> f64 {
        Real::log2_abs(self)
    }
    fn precision(&self) -> usize {
        Real::precision(self)
    }
    fn with_precision(&self, prec: usize) -> Self {
        Real::with_precision(self, prec)
    }
    fn is_zero(&self) -> bool {
        Real::is_zero(self)
    }
    fn exp(&self) -> Self {
        Real::exp(self)
    }
    fn real_part(&self) -> Real {
        self.clone()
    }
    fn imag_part(&self) -> Real {
        Real::zero(self.precision())
    }
}

impl Scalar for Complex {
    fn from_real(r: Real) -> Self {
        Complex::from_real(r)
    }
    fn scale(&self, r: &Real) -> Self {
        Complex { re: &self.re * r, im: &self.im * r }
    }
    fn modulus(&self) -> Real {
        self.norm_sqr().sqrt().expect("non-negative")
    }
    fn log2_abs(&self) -> f64 {
        let a = self.re.log2_abs();
        let b = self.im.log2_abs();
        let m = a.max(b);
        if m == f64::NEG_INFINITY {
            return m;
        }
        m + 0.5 * (1.0 + 2f64.powf(2.0 * (a.min(b) - m))).log2()
    }
    fn precision(&self) -> usize {
        self.re.precision().max(self.im.precision())
    }
    fn with_precision(&self, prec: usize) -> Self {
        Complex { re: self.re.with_precision(prec), im: self.im.with_precision(prec) }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn exp(&self) -> Self {
        let r = self.re.exp();
        let (s, c) = self.im.sin_cos();
        Complex { re: r.clone() * &c, im: r * &s }
    }
    fn real_part(&self) -> Real {
        self.re.clone()
    }
    fn imag_part(&self) -> Real {
        self.im.clone()
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl Eq for Real {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_is_max_of_operands() {
        let a = Real::one(128);
        let b = Real::one(300);
        assert_eq!((a + &b).precision(), 300);
    }

    #[test]
    fn precision_floor() {
        assert_eq!(Real::one(8).precision(), MIN_PRECISION);
    }

    #[test]
    fn sci_string() {
        let x = Real::parse("-0.0012345", 128).unwrap();
        assert_eq!(x.to_sci_string(5), "-1.2345e-3");
        assert_eq!(Real::from_i64(250, 64).to_sci_string(10), "2.5e2");
        assert_eq!(Real::from_i64(3, 64).to_sci_string(10), "3");
    }

    #[test]
    fn sci_string_rounding() {
        assert_eq!(Real::parse("9.996", 128).unwrap().to_sci_string(3), "1e1");
        assert_eq!(Real::from_f64(0.125, 64).to_sci_string(2), "1.2e-1");
        assert_eq!(Real::from_f64(0.375, 64).to_sci_string(2), "3.8e-1");
        assert_eq!(Real::from_f64(-2.5, 64).to_sci_string(1), "-2");
        let tiny = Real::one(256).mul_pow2(-900);
        let wide = tiny.0.clone().with_base_and_precision::<10>(30).value();
        let sig = wide.repr().significand().to_string();
        assert!(tiny.to_sci_string(30).starts_with(&format!("{}.{}", &sig[..1], &sig[1..5])));
        assert!(tiny.to_sci_string(30).ends_with("e-271"));
        let third = Real::one(256) / &Real::from_i64(3, 256);
        assert_eq!(third.powi(-400).to_sci_string(4), "7.055e190");
        assert_eq!(Real::from_i64(-7, 256).powi(300).to_sci_string(3), "3.38e253");
    }

    #[test]
    fn sin_cos_matches_f64() {
        for v in [0.3, -1.7, 5.0, 42.0, 1e-9] {
            let (s, c) = Real::from_f64(v, 256).sin_cos();
            assert!((s.to_f64() - v.sin()).abs() < 1e-15, "sin {v}");
            assert!((c.to_f64() - v.cos()).abs() < 1e-15, "cos {v}");
            let one = s.clone() * &s + c.clone() * &c - Real::one(256);
            assert!(one.log2_abs() < -240.0);
        }
    }

    #[test]
    fn complex_exp_of_i_pi_half() {
        // pi/2 from 4*atan(1) is not available; use exp(i a) exp(-i a) = 1 instead
        let z = Complex::imag(Real::from_f64(0.7, 256));
        let w = z.exp() * (-z).exp();
        assert!((w.re - Real::one(256)).log2_abs() < -240.0);
        assert!(w.im.log2_abs() < -240.0);
    }

    #[test]
    fn complex_division() {
        let a = Complex::new(Real::from_i64(3, 128), Real::from_i64(4, 128));
        let b = a.clone() / &a;
        assert_eq!(b.re.to_f64(), 1.0);
        assert_eq!(b.im.to_f64(), 0.0);
        assert!((a.modulus().to_f64() - 5.0).abs() < 1e-30);
    }
}
