//! Exact coefficient rings: rationals and Gaussian rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;

use super::real::{Complex, Real, Scalar};
use crate::error::{QError, Result};

/// Commutative ring with exact arithmetic and scaling by rationals.
///
/// Implemented by [`RBig`], [`GaussRational`] and, recursively, by
/// [`Poly`](super::poly::Poly) so that bivariate polynomials are
/// polynomials with polynomial coefficients.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn scale(&self, r: &RBig) -> Self;
}

impl Ring for RBig {
    fn zero() -> Self {
        RBig::ZERO
    }
    fn one() -> Self {
        RBig::ONE
    }
    fn is_zero(&self) -> bool {
        *self == RBig::ZERO
    }
    fn scale(&self, r: &RBig) -> Self {
        self * r
    }
}

/// Exact coefficients that can be rounded into a high-precision scalar `S`.
pub trait Embed<S: Scalar>: Ring {
    fn embed(&self, prec: usize) -> S;
}

impl Embed<Real> for RBig {
    fn embed(&self, prec: usize) -> Real {
        Real::from_rational(self, prec)
    }
}

impl Embed<Complex> for RBig {
    fn embed(&self, prec: usize) -> Complex {
        Complex::from_real(Real::from_rational(self, prec))
    }
}

impl Embed<Complex> for GaussRational {
    fn embed(&self, prec: usize) -> Complex {
        Complex::new(Real::from_rational(&self.re, prec), Real::from_rational(&self.im, prec))
    }
}

/// Rational complex number `re + i·im`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRational {
    pub re: RBig,
    pub im: RBig,
}

impl GaussRational {
    pub fn new(re: RBig, im: RBig) -> Self {
        GaussRational { re, im }
    }

    pub fn real(re: RBig) -> Self {
        GaussRational { re, im: RBig::ZERO }
    }

    pub fn i() -> Self {
        GaussRational { re: RBig::ZERO, im: RBig::ONE }
    }

    pub fn conj(&self) -> Self {
        GaussRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> RBig {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` at zero.
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n == RBig::ZERO {
            return None;
        }
        Some(GaussRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(GaussRational::one(), |acc, _| acc * self.clone())
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re == RBig::ZERO, self.im == RBig::ZERO) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "({})i", self.im),
            (false, false) => write!(f, "({} + ({})i)", self.re, self.im),
        }
    }
}

impl Add for GaussRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussRational { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for GaussRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussRational { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for GaussRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        GaussRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for GaussRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussRational { re: -self.re, im: -self.im }
    }
}

impl Ring for GaussRational {
    fn zero() -> Self {
        GaussRational::real(RBig::ZERO)
    }
    fn one() -> Self {
        GaussRational::real(RBig::ONE)
    }
    fn is_zero(&self) -> bool {
        self.re == RBig::ZERO && self.im == RBig::ZERO
    }
    fn scale(&self, r: &RBig) -> Self {
        GaussRational { re: &self.re * r, im: &self.im * r }
    }
}

/// Parses `"7"`, `"-3/2"`, `"1.000001"` or `"2.5e-3"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<RBig> {
    let s = s.trim();
    let bad = || QError::Domain(format!("cannot parse '{s}' as a rational number"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: IBig = n.trim().parse().map_err(|_| bad())?;
        let d: IBig = d.trim().parse().map_err(|_| bad())?;
        if d == IBig::ZERO {
            return Err(QError::Domain(format!("zero denominator in '{s}'")));
        }
        let (sign, mag) = d.into_parts();
        let n = if sign == dashu::base::Sign::Negative { -n } else { n };
        return Ok(RBig::from_parts(n, mag));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mag: UBig = if digits.is_empty() { UBig::ZERO } else { digits.parse().map_err(|_| bad())? };
    let scale = exp - frac_part.len() as i64;
    let ten = UBig::from(10u8);
    let value = if scale >= 0 {
        RBig::from(IBig::from(mag * ten.pow(scale as usize)))
    } else {
        RBig::from_parts(IBig::from(mag), ten.pow((-scale) as usize))
    };
    Ok(if negative { -value } else { value })
}

/// Convenience constructor `num/den`.
pub fn rat(num: i64, den: u64) -> RBig {
    RBig::from_parts(IBig::from(num), UBig::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(parse_rational("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("4/-2").unwrap(), rat(-2, 1));
        assert_eq!(parse_rational("1.000001").unwrap(), rat(1_000_001, 1_000_000));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("2.5e-3").unwrap(), rat(1, 400));
        assert_eq!(parse_rational("1e2").unwrap(), rat(100, 1));
        assert_eq!(parse_rational(".25").unwrap(), rat(1, 4));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn gaussian_inverse() {
        let z = GaussRational::new(rat(3, 1), rat(4, 1));
        let w = z.clone() * z.inv().unwrap();
        assert_eq!(w, GaussRational::one());
        assert!(GaussRational::zero().inv().is_none());
        assert_eq!(GaussRational::i().pow(2), -GaussRational::one());
    }
}
