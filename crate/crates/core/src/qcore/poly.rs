//! Dense polynomials over an exact [`Ring`].
//!
//! `Poly<C>` is itself a ring, so `Poly<Poly<RBig>>` is a bivariate
//! polynomial: outer variable `x`, inner variable `s` (the Kampe-de Feriet
//! time variable `s = νt`). Truncated power series in a third variable reuse
//! the same type with [`Poly::truncate`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use dashu::rational::RBig;

use super::base::QTable;
use super::ratio::{Embed, Ring};
use super::real::Scalar;

/// Dense polynomial; `coeffs[n]` multiplies the n-th power. Trailing zeros
/// are always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

/// Polynomial in `x` whose coefficients are polynomials in `s`.
pub type BiPoly<C> = Poly<Poly<C>>;

impl<C: Ring> Poly<C> {
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c · x^n`
    pub fn monomial(c: C, n: usize) -> Self {
        let mut coeffs = vec![C::zero(); n];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, n: usize) -> C {
        self.coeffs.get(n).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn scale_by(&self, r: &RBig) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.scale(r)).collect())
    }

    /// Multiplication by a ring element.
    pub fn mul_coeff(&self, c: &C) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Drops every power above `deg`.
    pub fn truncate(&self, deg: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(deg + 1).cloned().collect())
    }

    /// Product truncated at degree `deg` (power-series multiplication).
    pub fn mul_truncated(&self, other: &Self, deg: usize) -> Self {
        let n = (self.coeffs.len() + other.coeffs.len()).saturating_sub(1).min(deg + 1);
        let mut out = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(out)
    }

    /// Jackson q-derivative, `x^n ↦ [n]_q x^(n-1)`.
    pub fn q_derivative(&self, table: &QTable) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c.scale(table.number(n)))
                .collect(),
        )
    }

    /// The `k`-th iterated q-derivative.
    pub fn q_derivative_n(&self, table: &QTable, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.q_derivative(table))
    }

    /// Classical derivative, `x^n ↦ n x^(n-1)`.
    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c.scale(&RBig::from(n)))
                .collect(),
        )
    }

    /// Dilation `p(x) ↦ p(a·x)`.
    pub fn dilate(&self, a: &RBig) -> Self {
        let mut pow = RBig::ONE;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.scale(&pow));
            pow *= a;
        }
        Self::from_coeffs(coeffs)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &C) -> C {
        self.coeffs.iter().rev().fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Applies `f` to every coefficient.
    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Horner evaluation at a high-precision point.
    pub fn eval_hp<S: Scalar>(&self, x: &S) -> S
    where
        C: Embed<S>,
    {
        let prec = x.precision();
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(prec), |acc, c| acc * x + &c.embed(prec))
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc * self.clone())
    }
}

impl<C: Ring> BiPoly<C> {
    /// Lifts a polynomial in `x` to a bivariate one with no `s` dependence.
    pub fn lift(p: &Poly<C>) -> Self {
        p.map(|c| Poly::constant(c.clone()))
    }

    /// `c · x^i s^j`
    pub fn term(c: C, i: usize, j: usize) -> Self {
        Poly::monomial(Poly::monomial(c, j), i)
    }

    /// The polynomial in `x` obtained by fixing `s`.
    pub fn eval_s(&self, s: &C) -> Poly<C> {
        self.map(|c| c.eval(s))
    }

    /// `∂/∂s`
    pub fn ds(&self) -> Self {
        self.map(|c| c.derivative())
    }

    /// Coefficient of `x^i s^j`.
    pub fn coeff2(&self, i: usize, j: usize) -> C {
        self.coeff(i).coeff(j)
    }

    /// Evaluation at a high-precision point `(x, s)`.
    pub fn eval2_hp<S: Scalar>(&self, x: &S, s: &S) -> S
    where
        C: Embed<S>,
    {
        let prec = x.precision().max(s.precision());
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(prec), |acc, c| acc * x + &c.eval_hp(s))
    }
}

impl<C: Ring> Ring for Poly<C> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn one() -> Self {
        Poly::constant(C::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn scale(&self, r: &RBig) -> Self {
        self.scale_by(r)
    }
}

impl<C: Ring> Add for Poly<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        for (i, c) in short.coeffs.into_iter().enumerate() {
            long.coeffs[i] = long.coeffs[i].clone() + c;
        }
        long.trim();
        long
    }
}

impl<C: Ring> Neg for Poly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<C: Ring> Sub for Poly<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Ring> Mul for Poly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero();
        }
        let deg = self.coeffs.len() + rhs.coeffs.len() - 2;
        self.mul_truncated(&rhs, deg)
    }
}

impl<C: Ring + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})·x")?,
                _ => write!(f, "({c})·x^{n}")?,
            }
        }
        Ok(())
    }
}

impl<C: Ring> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::super::base::QBase;
    use super::super::ratio::rat;
    use super::*;

    fn p(cs: &[i64]) -> Poly<RBig> {
        Poly::from_coeffs(cs.iter().map(|&c| RBig::from(c)).collect())
    }

    #[test]
    fn trimming_and_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!(p(&[]).coeffs().is_empty());
    }

    #[test]
    fn q_derivative_rules() {
        let q2 = QTable::new(&QBase::rational(2, 1).unwrap(), 8).unwrap();
        assert_eq!(p(&[0, 0, 1]).q_derivative(&q2), p(&[0, 3]));
        assert_eq!(p(&[1]).q_derivative(&q2), p(&[]));
        let q32 = QTable::new(&QBase::rational(3, 2).unwrap(), 8).unwrap();
        let d = p(&[0, 1, 0, 1]).q_derivative(&q32);
        assert_eq!(d, Poly::from_coeffs(vec![RBig::ONE, RBig::ZERO, rat(19, 4)]));
        let classical = QTable::new(&QBase::classical(), 8).unwrap();
        assert_eq!(p(&[5, 1, 1, 1]).q_derivative(&classical), p(&[5, 1, 1, 1]).derivative());
    }

    #[test]
    fn bivariate_eval() {
        // x^2 + [2]_q s with q = 2, at x = 1, s = 1/2
        let h2 = BiPoly::term(RBig::ONE, 2, 0) + BiPoly::term(rat(3, 1), 0, 1);
        assert_eq!(h2.eval_s(&rat(1, 2)).eval(&RBig::ONE), rat(5, 2));
        assert_eq!(h2.coeff2(0, 1), rat(3, 1));
    }

    #[test]
    fn truncated_product() {
        let a = p(&[1, 1]);
        assert_eq!(a.mul_truncated(&a, 1), p(&[1, 2]));
        assert_eq!(a.clone() * a, p(&[1, 2, 1]));
    }
}
