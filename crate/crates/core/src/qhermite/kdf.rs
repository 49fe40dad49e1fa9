//! q-Kampe-de Feriet polynomials `H_N(x, s;q)`, bivariate in `x` and `s = νt`.

use dashu::rational::RBig;

use super::{exp_second_derivative, factorial, hermite_explicit, s_var};
use crate::error::{QError, Result};
use crate::qcore::{BiPoly, Poly, QBase, QTable, Real, Ring};

type B = BiPoly<RBig>;

fn rpow(r: &RBig, n: usize) -> RBig {
    (0..n).fold(RBig::ONE, |a, _| a * r)
}

/// Explicit sum `Σ_k s^k x^(N-2k) [N]! / (k! [N-2k]!)`.
pub fn kdf_explicit(n: usize, q: &QBase) -> Result<B> {
    let t = QTable::new(q, n)?;
    Ok(explicit_with(n, &t))
}

fn explicit_with(n: usize, t: &QTable) -> B {
    (0..=n / 2)
        .map(|k| B::term(t.factorial(n) / (factorial(k) * t.factorial(n - 2 * k)), n - 2 * k, k))
        .fold(B::zero(), |a, b| a + b)
}

/// The printed N-term recurrence, started from `H_0 = 1`.
pub fn kdf_nterm_recurrence(n_max: usize, q: &QBase) -> Result<super::HermiteFamily> {
    super::HermiteFamily::build(super::Family::KampeDeFeriet, super::Route::NTermRecurrence, n_max, q)
}

pub(super) fn nterm_list(n_max: usize, q: &QBase) -> Result<Vec<B>> {
    let t = QTable::new(q, n_max + 1)?;
    let qv = t.q().clone();
    let two = t.two();
    let one_minus_q2 = RBig::ONE - &qv * &qv;
    let s = s_var();
    let mut h: Vec<B> = vec![B::one()];
    for n in 0..n_max {
        let mut next = h[n].shift(1);
        if n >= 1 {
            next = next + h[n - 1].mul_coeff(&s).scale_by(&(RBig::from(2u8) * t.number(n)));
            next = next - h[n - 1].shift(2).scale_by(&((&qv - RBig::ONE) * t.number(n) / &two));
        }
        for (k, hk) in h.iter().enumerate().take(n.saturating_sub(1)) {
            let c = t.factorial(n) * rpow(&one_minus_q2, n - k)
                / (t.factorial(k) * t.number(n - k + 1) * rpow(&two, n - k));
            next = next + hk.shift(n - k + 1).scale_by(&c);
        }
        h.push(next.scale_by(&(t.number(n + 1) / RBig::from(n + 1))));
    }
    Ok(h)
}

/// Denominator of the `D^l` terms in the one-step operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KdfDenominator {
    /// `[2]^l [l]` as printed.
    Printed,
    /// `[2]^l [l+1]`, the form matching the explicit sum.
    Shifted,
}

/// Iterates the one-step operator
/// `[N+1]/(N+1) · (x + (2s + (1-q)/[2] x²) D + Σ_{l≥2} (1-q²)^l x^(l+1) / ([2]^l [l or l+1]) D^l)`
/// from `H_0 = 1`.
pub fn kdf_operator_steps(n_max: usize, q: &QBase, denominator: KdfDenominator) -> Result<Vec<B>> {
    let t = QTable::new(q, n_max + 2)?;
    let qv = t.q().clone();
    let two = t.two();
    let one_minus_q2 = RBig::ONE - &qv * &qv;
    let s = s_var();
    let mut h = vec![B::one()];
    for n in 0..n_max {
        let cur = &h[n];
        let d = cur.q_derivative(&t);
        let mut next = cur.shift(1)
            + d.mul_coeff(&s).scale_by(&RBig::from(2u8))
            + d.shift(2).scale_by(&((RBig::ONE - &qv) / &two));
        let mut dl = d;
        for l in 2..=n {
            dl = dl.q_derivative(&t);
            let number = match denominator {
                KdfDenominator::Printed => t.number(l),
                KdfDenominator::Shifted => t.number(l + 1),
            };
            let c = rpow(&one_minus_q2, l) / (rpow(&two, l) * number);
            next = next + dl.shift(l + 1).scale_by(&c);
        }
        h.push(next.scale_by(&(t.number(n + 1) / RBig::from(n + 1))));
    }
    Ok(h)
}

/// `e^(s D²) x^N`.
pub(super) fn heat_operator(n: usize, q: &QBase) -> Result<B> {
    let t = QTable::new(q, n)?;
    Ok(exp_second_derivative(&B::monomial(Poly::constant(RBig::ONE), n), &s_var(), &t))
}

/// Checks `H_N(x, s) = (-s)^(N/2) H_N(x / ([2] √(-s)))` at sample points
/// `(x, ν, t)`, to within `2^(16-P)` relative at the samples' precision `P`.
pub fn kdf_scaling_check(n: usize, q: &QBase, samples: &[(Real, Real, Real)]) -> Result<bool> {
    let t = QTable::new(q, n)?;
    let kdf = explicit_with(n, &t);
    let herm = hermite_explicit(n, q)?;
    for (x, nu, time) in samples {
        let prec = x.precision().max(nu.precision()).max(time.precision());
        let s = nu * time;
        if s.signum() >= 0 {
            return Err(QError::Domain(format!("the scaling identity needs νt < 0, got {}", s.to_sci_string(10))));
        }
        let root = (-s.clone()).sqrt()?;
        let lhs = kdf.eval2_hp(&x.with_precision(prec), &s);
        let arg = x / &(Real::from_rational(&t.two(), prec) * &root);
        let rhs = root.powi(n as i64) * &herm.eval_hp(&arg);
        let scale = lhs.log2_abs().max(rhs.log2_abs());
        let diff = (lhs - &rhs).log2_abs();
        if diff > scale - prec as f64 + 16.0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::rat;

    fn q(s: &str) -> QBase {
        QBase::parse(s).unwrap()
    }

    #[test]
    fn listed_polynomials() {
        let base = q("3/2");
        let t = QTable::new(&base, 4).unwrap();
        assert_eq!(kdf_explicit(1, &base).unwrap(), B::term(RBig::ONE, 1, 0));
        assert_eq!(kdf_explicit(2, &base).unwrap(), B::term(RBig::ONE, 2, 0) + B::term(t.two(), 0, 1));
        let h3 = B::term(RBig::ONE, 3, 0) + B::term(t.two() * t.number(3), 1, 1);
        assert_eq!(kdf_explicit(3, &base).unwrap(), h3);
        let h4 = B::term(RBig::ONE, 4, 0)
            + B::term(t.number(3) * t.number(4), 2, 1)
            + B::term(t.factorial(4) / RBig::from(2u8), 0, 2);
        assert_eq!(kdf_explicit(4, &base).unwrap(), h4);
    }

    #[test]
    fn printed_operator_denominator_fails_from_three() {
        for base in [q("3/2"), q("2"), q("10")] {
            let printed = kdf_operator_steps(8, &base, KdfDenominator::Printed).unwrap();
            let shifted = kdf_operator_steps(8, &base, KdfDenominator::Shifted).unwrap();
            for n in 0..=8 {
                let exact = kdf_explicit(n, &base).unwrap();
                assert_eq!(shifted[n], exact);
                assert_eq!(printed[n] == exact, n < 3, "n={n}");
            }
        }
    }

    #[test]
    fn classical_operator_power() {
        // (x + 2s d/dx)^N · 1
        let t = QTable::new(&QBase::classical(), 8).unwrap();
        let mut p = B::one();
        for n in 1..=8 {
            p = p.shift(1) + p.derivative().mul_coeff(&s_var()).scale_by(&RBig::from(2u8));
            assert_eq!(p, explicit_with(n, &t));
        }
    }

    #[test]
    fn vanishing_time_gives_monomials() {
        let base = q("2");
        for n in 0..=10 {
            assert_eq!(kdf_explicit(n, &base).unwrap().eval_s(&RBig::ZERO), Poly::monomial(RBig::ONE, n));
        }
    }

    #[test]
    fn scaling_identity() {
        let one = Real::one(256);
        assert!(kdf_scaling_check(0, &q("2"), &[(one.clone(), one.clone(), -one.clone())]).unwrap());
        let base = q("2");
        let h2 = kdf_explicit(2, &base).unwrap();
        assert_eq!(h2.eval_s(&rat(-1, 1)).eval(&RBig::ONE), rat(-2, 1));
        assert!(kdf_scaling_check(2, &base, &[(one.clone(), one.clone(), -one.clone())]).unwrap());
        let sample = (
            Real::from_rational(&rat(7, 10), 256),
            Real::from_i64(2, 256),
            Real::from_rational(&rat(-1, 4), 256),
        );
        for n in 0..=9 {
            assert!(kdf_scaling_check(n, &q("3/2"), std::slice::from_ref(&sample)).unwrap());
        }
        assert!(kdf_scaling_check(2, &base, &[(one.clone(), one.clone(), one)]).is_err());
    }
}
