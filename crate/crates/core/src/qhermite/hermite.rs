//! q-Hermite polynomials `H_N(x;q)`.

use dashu::rational::RBig;

use super::{exp_second_derivative, factorial};
use crate::error::Result;
use crate::qcore::{BiPoly, Poly, QBase, QTable, Ring};

type P = Poly<RBig>;

fn rpow(r: &RBig, n: usize) -> RBig {
    (0..n).fold(RBig::ONE, |a, _| a * r)
}

/// Explicit sum
/// `Σ_k (-1)^k ([2]x)^(N-2k) [N]! / (k! [N-2k]!)`.
///
/// ```
/// use qcalc_core::QBase;
/// use qcalc_core::qcore::rat;
/// use qcalc_core::qhermite::hermite_explicit;
/// let h3 = hermite_explicit(3, &QBase::rational(2, 1).unwrap()).unwrap();
/// assert_eq!(h3.eval(&rat(1, 1)), rat(-36, 1));
/// ```
pub fn hermite_explicit(n: usize, q: &QBase) -> Result<P> {
    let t = QTable::new(q, n)?;
    Ok(explicit_with(n, &t))
}

fn explicit_with(n: usize, t: &QTable) -> P {
    let two = t.two();
    let coeffs = (0..=n / 2).map(|k| {
        let sign = if k % 2 == 0 { RBig::ONE } else { -RBig::ONE };
        let c = sign * rpow(&two, n - 2 * k) * t.factorial(n) / (factorial(k) * t.factorial(n - 2 * k));
        P::monomial(c, n - 2 * k)
    });
    coeffs.fold(P::zero(), |a, b| a + b)
}

/// The printed N-term recurrence, started from `H_0 = 1`.
pub fn hermite_nterm_recurrence(n_max: usize, q: &QBase) -> Result<super::HermiteFamily> {
    super::HermiteFamily::build(super::Family::Hermite, super::Route::NTermRecurrence, n_max, q)
}

pub(super) fn nterm_list(n_max: usize, q: &QBase) -> Result<Vec<P>> {
    let t = QTable::new(q, n_max + 1)?;
    let qv = t.q().clone();
    let two = t.two();
    let one_minus_q2 = RBig::ONE - &qv * &qv;
    let mut h: Vec<P> = vec![P::constant(RBig::ONE)];
    for n in 0..n_max {
        let mut next = h[n].shift(1).scale_by(&two);
        if n >= 1 {
            next = next - h[n - 1].scale_by(&(RBig::from(2u8) * t.number(n)));
            next = next - h[n - 1].shift(2).scale_by(&((&qv - RBig::ONE) * &two * t.number(n)));
        }
        for (k, hk) in h.iter().enumerate().take(n.saturating_sub(1)) {
            let c = &two * t.factorial(n) * rpow(&one_minus_q2, n - k)
                / (t.factorial(k) * t.number(n - k + 1));
            next = next + hk.shift(n - k + 1).scale_by(&c);
        }
        h.push(next.scale_by(&(t.number(n + 1) / RBig::from(n + 1))));
    }
    Ok(h)
}

/// Iterates the one-step operator
/// `[N+1]/(N+1) · ([2]x - (2/[2] + (q-1)x²) D + Σ_{l≥2} (1-q²)^l x^(l+1) / ([2]^(l-1) [l+1]) D^l)`
/// from `H_0 = 1`.
pub fn hermite_operator_steps(n_max: usize, q: &QBase) -> Result<Vec<P>> {
    let t = QTable::new(q, n_max + 2)?;
    let qv = t.q().clone();
    let two = t.two();
    let one_minus_q2 = RBig::ONE - &qv * &qv;
    let mut h = vec![P::constant(RBig::ONE)];
    for n in 0..n_max {
        let cur = &h[n];
        let d = cur.q_derivative(&t);
        let mut next = cur.shift(1).scale_by(&two)
            - d.scale_by(&(RBig::from(2u8) / &two))
            - d.shift(2).scale_by(&(&qv - RBig::ONE));
        let mut dl = d;
        for l in 2..=n {
            dl = dl.q_derivative(&t);
            let c = rpow(&one_minus_q2, l) / (rpow(&two, l - 1) * t.number(l + 1));
            next = next + dl.shift(l + 1).scale_by(&c);
        }
        h.push(next.scale_by(&(t.number(n + 1) / RBig::from(n + 1))));
    }
    Ok(h)
}

/// `[2]^N e^(-D²/[2]²) x^N`, a finite sum since `D` lowers degree.
pub fn hermite_operator_rep(n: usize, q: &QBase) -> Result<P> {
    let t = QTable::new(q, n)?;
    let two = t.two();
    let c = -(RBig::ONE / (&two * &two));
    Ok(exp_second_derivative(&P::monomial(RBig::ONE, n), &c, &t).scale_by(&rpow(&two, n)))
}

/// `D H_N = [2][N] H_{N-1}`, exactly.
pub fn hermite_rec2_check(n: usize, q: &QBase) -> Result<bool> {
    if n == 0 {
        return Ok(hermite_explicit(0, q)?.q_derivative(&QTable::new(q, 0)?).is_zero());
    }
    let t = QTable::new(q, n)?;
    let lhs = explicit_with(n, &t).q_derivative(&t);
    let rhs = explicit_with(n - 1, &t).scale_by(&(t.two() * t.number(n)));
    Ok(lhs == rhs)
}

/// `(x d/dx - N) H_N = 2 [N][N-1] H_{N-2}` with the classical derivative.
pub fn hermite_rec3_check(n: usize, q: &QBase) -> Result<bool> {
    let t = QTable::new(q, n)?;
    let h = explicit_with(n, &t);
    let lhs = h.derivative().shift(1) - h.scale_by(&RBig::from(n));
    let rhs = if n < 2 {
        P::zero()
    } else {
        explicit_with(n - 2, &t).scale_by(&(RBig::from(2u8) * t.number(n) * t.number(n - 1)))
    };
    Ok(lhs == rhs)
}

/// Residual `2 D²H_N - [2]² x H_N' + [2]² N H_N`; zero when the equation holds.
pub fn qdiff_equation_check(n: usize, q: &QBase) -> Result<P> {
    let t = QTable::new(q, n)?;
    let h = explicit_with(n, &t);
    let two_sq = t.two() * t.two();
    Ok(h.q_derivative_n(&t, 2).scale_by(&RBig::from(2u8)) - h.derivative().shift(1).scale_by(&two_sq)
        + h.scale_by(&(two_sq.clone() * RBig::from(n))))
}

/// Checks that the degree-`M` truncation in `t` of `e^(-t²) e_q([2] t x)` is
/// `Σ_{N≤M} H_N t^N / [N]!`, in exact arithmetic.
pub fn hermite_generating_check(m: usize, q: &QBase) -> Result<bool> {
    let t = QTable::new(q, m)?;
    let two = t.two();
    // outer variable t, coefficients are polynomials in x
    let gauss: BiPoly<RBig> = (0..=m / 2)
        .map(|j| {
            let sign = if j % 2 == 0 { RBig::ONE } else { -RBig::ONE };
            BiPoly::term(sign / factorial(j), 2 * j, 0)
        })
        .fold(BiPoly::zero(), |a, b| a + b);
    let expq: BiPoly<RBig> = (0..=m)
        .map(|n| BiPoly::term(rpow(&two, n) / t.factorial(n), n, n))
        .fold(BiPoly::zero(), |a, b| a + b);
    let lhs = gauss.mul_truncated(&expq, m);
    let rhs: BiPoly<RBig> = (0..=m)
        .map(|n| BiPoly::monomial(explicit_with(n, &t).scale_by(&(RBig::ONE / t.factorial(n))), n))
        .fold(BiPoly::zero(), |a, b| a + b);
    Ok(lhs == rhs)
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
        let (two, n3, n4) = (t.two(), t.number(3).clone(), t.number(4).clone());
        assert_eq!(hermite_explicit(0, &base).unwrap(), P::constant(RBig::ONE));
        assert_eq!(hermite_explicit(1, &base).unwrap(), P::monomial(two.clone(), 1));
        assert_eq!(
            hermite_explicit(2, &base).unwrap(),
            P::from_coeffs(vec![-two.clone(), RBig::ZERO, &two * &two])
        );
        assert_eq!(
            hermite_explicit(3, &base).unwrap(),
            P::from_coeffs(vec![RBig::ZERO, -(&two * &two * &n3), RBig::ZERO, rpow(&two, 3)])
        );
        let h4 = P::from_coeffs(vec![
            t.factorial(4) / RBig::from(2u8),
            RBig::ZERO,
            -(&two * &two * &n3 * &n4),
            RBig::ZERO,
            rpow(&two, 4),
        ]);
        assert_eq!(hermite_explicit(4, &base).unwrap(), h4);
        assert_eq!(nterm_list(4, &base).unwrap()[4], h4);
        assert_eq!(hermite_explicit(3, &q("2")).unwrap().eval(&rat(1, 1)), rat(-36, 1));
    }

    #[test]
    fn classical_three_term() {
        let h = nterm_list(6, &QBase::classical()).unwrap();
        for n in 1..6 {
            let rhs = h[n].shift(1).scale_by(&RBig::from(2u8)) - h[n - 1].scale_by(&RBig::from(2 * n));
            assert_eq!(h[n + 1], rhs);
        }
    }

    #[test]
    fn two_term_relations_and_equation() {
        for base in [q("3/2"), q("2"), q("10"), QBase::classical()] {
            for n in 0..=20 {
                if n >= 1 {
                    assert!(hermite_rec2_check(n, &base).unwrap());
                }
                if n >= 2 {
                    assert!(hermite_rec3_check(n, &base).unwrap());
                }
                assert!(qdiff_equation_check(n, &base).unwrap().is_zero(), "n={n} q={base}");
            }
        }
    }

    #[test]
    fn generating_function_truncation() {
        for base in [q("3/2"), q("2"), q("10")] {
            assert!(hermite_generating_check(12, &base).unwrap());
        }
    }

    #[test]
    fn parity_and_constant_terms() {
        let base = q("10");
        let t = QTable::new(&base, 16).unwrap();
        for n in 0..=16 {
            let h = explicit_with(n, &t);
            let reflected = h.dilate(&-RBig::ONE);
            let sign = if n % 2 == 0 { RBig::ONE } else { -RBig::ONE };
            assert_eq!(reflected, h.scale_by(&sign));
            if n % 2 == 0 {
                let m = n / 2;
                let sign = if m % 2 == 0 { RBig::ONE } else { -RBig::ONE };
                assert_eq!(h.coeff(0), sign * t.factorial(n) / factorial(m));
            }
        }
    }

    #[test]
    fn classical_limit_of_coefficients() {
        use dashu::base::Abs;
        let near = QBase::from_rational(RBig::ONE + rat(1, 100_000_000)).unwrap();
        for n in 0..=10 {
            let a = hermite_explicit(n, &near).unwrap();
            let b = hermite_explicit(n, &QBase::classical()).unwrap();
            for i in 0..=n {
                let (ca, cb) = (a.coeff(i), b.coeff(i));
                if cb == RBig::ZERO {
                    assert_eq!(ca, RBig::ZERO);
                } else {
                    assert!(((ca - &cb) / cb).abs() <= rat(1, 100_000), "n={n} i={i}");
                }
            }
        }
    }
}
