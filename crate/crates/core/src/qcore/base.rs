//! The deformation parameter q, q-numbers and q-factorials.

use std::fmt;

use dashu::rational::RBig;

use super::ratio::parse_rational;
use super::real::Real;
use crate::error::{QError, Result};

#[derive(Clone, PartialEq)]
enum QValue {
    Rational(RBig),
    Real(Real),
}

/// The base q of the deformation.
///
/// Either an exact rational, a high-precision real, or the classical-limit
/// sentinel q = 1. Outside the sentinel the value is always greater than one,
/// the regime in which the Jackson exponential is entire.
///
/// ```
/// use qcalc_core::QBase;
/// let q = QBase::parse("3/2").unwrap();
/// assert!(!q.is_classical());
/// assert!(QBase::parse("1").unwrap().is_classical());
/// assert!(QBase::parse("0.5").is_err());
/// ```
#[derive(Clone, PartialEq)]
pub struct QBase {
    value: QValue,
    classical_limit: bool,
}

impl QBase {
    /// The classical limit q = 1.
    pub fn classical() -> Self {
        QBase { value: QValue::Rational(RBig::ONE), classical_limit: true }
    }

    /// An exact rational base; `1` maps to the classical sentinel.
    pub fn from_rational(q: RBig) -> Result<Self> {
        if q == RBig::ONE {
            return Ok(Self::classical());
        }
        if q < RBig::ONE {
            return Err(QError::Domain(format!("q must exceed 1, got {q}")));
        }
        Ok(QBase { value: QValue::Rational(q), classical_limit: false })
    }

    pub fn rational(num: i64, den: u64) -> Result<Self> {
        Self::from_rational(super::ratio::rat(num, den))
    }

    /// A base known only to floating-point precision; exact operations refuse it.
    pub fn from_real(q: Real) -> Result<Self> {
        let one = Real::one(q.precision());
        if q == one {
            return Ok(Self::classical());
        }
        if q < one {
            return Err(QError::Domain(format!("q must exceed 1, got {}", q.to_f64())));
        }
        Ok(QBase { value: QValue::Real(q), classical_limit: false })
    }

    /// Parses a decimal or fraction string exactly.
    pub fn parse(s: &str) -> Result<Self> {
        Self::from_rational(parse_rational(s)?)
    }

    pub fn is_classical(&self) -> bool {
        self.classical_limit
    }

    /// The exact value of q, refusing floating-point bases.
    pub fn exact(&self) -> Result<RBig> {
        match &self.value {
            QValue::Rational(r) => Ok(r.clone()),
            QValue::Real(_) => Err(QError::NonRational),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.value, QValue::Rational(_))
    }

    pub fn to_real(&self, prec: usize) -> Real {
        match &self.value {
            QValue::Rational(r) => Real::from_rational(r, prec),
            QValue::Real(r) => r.with_precision(prec),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.value {
            QValue::Rational(r) => r.to_f64().value(),
            QValue::Real(r) => r.to_f64(),
        }
    }
}

impl fmt::Debug for QBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QBase({self})")
    }
}

impl fmt::Display for QBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            _ if self.classical_limit => f.write_str("1"),
            QValue::Rational(r) => write!(f, "{r}"),
            QValue::Real(r) => write!(f, "{}", r.to_sci_string(30)),
        }
    }
}

/// The q-number `[n]_q = (q^n - 1)/(q - 1) = 1 + q + ... + q^(n-1)`.
///
/// ```
/// use qcalc_core::{q_number, QBase};
/// use qcalc_core::qcore::rat;
/// assert_eq!(q_number(4, &QBase::rational(2, 1).unwrap()).unwrap(), rat(15, 1));
/// assert_eq!(q_number(3, &QBase::rational(3, 2).unwrap()).unwrap(), rat(19, 4));
/// ```
pub fn q_number(n: usize, q: &QBase) -> Result<RBig> {
    if q.is_classical() {
        return Ok(RBig::from(n));
    }
    let q = q.exact()?;
    // Horner form of the geometric sum
    Ok((0..n).fold(RBig::ZERO, |acc, _| acc * &q + RBig::ONE))
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`, with `[0]_q! = 1`.
pub fn q_factorial(n: usize, q: &QBase) -> Result<RBig> {
    Ok(QTable::new(q, n)?.factorial(n).clone())
}

/// High-precision `[n]_q`; works for every kind of base.
pub fn q_number_real(n: usize, q: &QBase, prec: usize) -> Real {
    if q.is_classical() {
        return Real::from_i64(n as i64, prec);
    }
    let qr = q.to_real(prec);
    let one = Real::one(prec);
    (0..n).fold(Real::zero(prec), |acc, _| acc * &qr + &one)
}

/// Memo table of exact q-numbers and q-factorials up to some order.
#[derive(Clone, Debug)]
pub struct QTable {
    q: RBig,
    classical: bool,
    numbers: Vec<RBig>,
    factorials: Vec<RBig>,
}

impl QTable {
    pub fn new(q: &QBase, n_max: usize) -> Result<Self> {
        let mut t = QTable {
            q: q.exact()?,
            classical: q.is_classical(),
            numbers: vec![RBig::ZERO],
            factorials: vec![RBig::ONE],
        };
        t.extend(n_max);
        Ok(t)
    }

    fn extend(&mut self, n_max: usize) {
        while self.numbers.len() <= n_max {
            let n = self.numbers.len();
            let next = if self.classical {
                RBig::from(n)
            } else {
                self.numbers[n - 1].clone() * &self.q + RBig::ONE
            };
            let fact = &self.factorials[n - 1] * &next;
            self.numbers.push(next);
            self.factorials.push(fact);
        }
    }

    /// Makes sure entries up to `n` exist.
    pub fn ensure(&mut self, n: usize) {
        self.extend(n);
    }

    pub fn q(&self) -> &RBig {
        &self.q
    }

    pub fn is_classical(&self) -> bool {
        self.classical
    }

    pub fn max_order(&self) -> usize {
        self.numbers.len() - 1
    }

    /// `[n]_q`; panics beyond the table.
    pub fn number(&self, n: usize) -> &RBig {
        &self.numbers[n]
    }

    /// `[n]_q!`; panics beyond the table.
    pub fn factorial(&self, n: usize) -> &RBig {
        &self.factorials[n]
    }

    /// `[2]_q = 1 + q`.
    pub fn two(&self) -> RBig {
        if self.classical {
            RBig::from(2u8)
        } else {
            RBig::ONE + &self.q
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::ratio::rat;
    use dashu::base::AbsOrd;
    use super::*;

    #[test]
    fn q_number_examples() {
        let two = QBase::rational(2, 1).unwrap();
        assert_eq!(q_number(0, &two).unwrap(), RBig::ZERO);
        assert_eq!(q_number(4, &two).unwrap(), rat(15, 1));
        // ((3/2)^3 - 1)/(1/2) evaluated directly
        let q = rat(3, 2);
        let direct = (&q * &q * &q - RBig::ONE) / (&q - RBig::ONE);
        assert_eq!(direct, rat(19, 4));
        assert_eq!(q_number(3, &QBase::rational(3, 2).unwrap()).unwrap(), direct);
        assert_eq!(q_number(7, &QBase::classical()).unwrap(), rat(7, 1));
    }

    #[test]
    fn q_factorial_examples() {
        let two = QBase::rational(2, 1).unwrap();
        assert_eq!(q_factorial(0, &QBase::rational(10, 1).unwrap()).unwrap(), RBig::ONE);
        let product: RBig = (1..=3).map(|k| q_number(k, &two).unwrap()).fold(RBig::ONE, |a, b| a * b);
        assert_eq!(product, rat(21, 1));
        assert_eq!(q_factorial(3, &two).unwrap(), product);
        assert_eq!(q_factorial(4, &QBase::classical()).unwrap(), rat(24, 1));
    }

    #[test]
    fn classical_limit_of_q_numbers() {
        let eps = rat(1, 100_000_000);
        let q = QBase::from_rational(RBig::ONE + &eps).unwrap();
        for n in 0..=50usize {
            let dev = q_number(n, &q).unwrap() - RBig::from(n);
            let bound = RBig::from(n * n) * &eps;
            assert!(dev.clone().abs_cmp(&bound) != std::cmp::Ordering::Greater, "n={n}");
        }
    }

    #[test]
    fn base_validation() {
        assert!(QBase::rational(1, 2).is_err());
        assert!(QBase::rational(1, 1).unwrap().is_classical());
        let real_q = QBase::from_real(Real::from_f64(1.5, 128)).unwrap();
        assert_eq!(q_number(2, &real_q), Err(QError::NonRational));
        assert_eq!(q_number_real(2, &real_q, 128).to_f64(), 2.5);
    }
}
