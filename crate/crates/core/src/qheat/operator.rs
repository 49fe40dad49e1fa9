use dashu::rational::RBig;

use crate::error::Result;
use crate::qcore::{BiPoly, Poly, QBase, QTable, Ring};
use crate::qhermite::{exp_second_derivative, hermite_explicit};

fn rpow(r: &RBig, n: usize) -> RBig {
    (0..n).fold(RBig::ONE, |a, _| a * r)
}

fn factorial(k: usize) -> RBig {
    (1..=k).fold(RBig::ONE, |a, i| a * RBig::from(i))
}

/// `e^(s D²) p` at a fixed rational `s = νt`.
///
/// ```
/// use qcalc_core::{Poly, QBase};
/// use qcalc_core::qcore::rat;
/// use qcalc_core::qheat::evolution_apply;
/// let x2 = Poly::monomial(rat(1, 1), 2);
/// let out = evolution_apply(&x2, &QBase::rational(2, 1).unwrap(), &rat(1, 2)).unwrap();
/// assert_eq!(out, Poly::from_coeffs(vec![rat(3, 2), rat(0, 1), rat(1, 1)]));
/// ```
pub fn evolution_apply(p: &Poly<RBig>, q: &QBase, s: &RBig) -> Result<Poly<RBig>> {
    let table = QTable::new(q, p.degree().unwrap_or(0))?;
    Ok(exp_second_derivative(p, s, &table))
}

/// `e^(s D²) p` with `s` kept symbolic: a polynomial in `(x, s)`.
pub fn evolution_symbolic(p: &Poly<RBig>, q: &QBase) -> Result<BiPoly<RBig>> {
    let table = QTable::new(q, p.degree().unwrap_or(0))?;
    Ok(exp_second_derivative(&BiPoly::lift(p), &Poly::x(), &table))
}

/// `∂_s p - D²_x p`, the heat residual of a polynomial in `(x, s = νt)`
/// divided by `ν`.
pub fn polynomial_heat_residual(p: &BiPoly<RBig>, q: &QBase) -> Result<BiPoly<RBig>> {
    let table = QTable::new(q, p.degree().unwrap_or(0))?;
    Ok(p.ds() - p.q_derivative_n(&table, 2))
}

/// `H_0 ..= H_order` read off the expansion of `e^(s k²) e_q(kx)` in powers
/// of `k`.
pub fn kdf_from_generating(order: usize, q: &QBase) -> Result<Vec<BiPoly<RBig>>> {
    let table = QTable::new(q, order)?;
    // outer variable k, coefficients polynomials in (x, s)
    let gauss: Poly<BiPoly<RBig>> = Poly::from_coeffs(
        (0..=order)
            .map(|n| if n % 2 == 0 { BiPoly::term(RBig::ONE / factorial(n / 2), 0, n / 2) } else { BiPoly::zero() })
            .collect(),
    );
    let expq: Poly<BiPoly<RBig>> =
        Poly::from_coeffs((0..=order).map(|n| BiPoly::term(RBig::ONE / table.factorial(n), n, 0)).collect());
    let series = gauss.mul_truncated(&expq, order);
    Ok((0..=order).map(|n| series.coeff(n).scale_by(table.factorial(n))).collect())
}

/// Checks `e^(-D²/[2]²) e_q([2]xt) = e^(-t²) e_q([2]xt)` through order `m` in
/// `t`, in exact arithmetic.
pub fn prop1_check(m: usize, q: &QBase) -> Result<bool> {
    let table = QTable::new(q, 2 * m)?;
    let two = table.two();
    // outer t, coefficients polynomials in x
    let expq: Poly<Poly<RBig>> = Poly::from_coeffs(
        (0..=2 * m).map(|n| Poly::monomial(rpow(&two, n) / table.factorial(n), n)).collect(),
    );
    let c = -(RBig::ONE / (&two * &two));
    let lhs = expq.map(|coef| exp_second_derivative(coef, &c, &table)).truncate(m);
    let gauss: Poly<Poly<RBig>> = Poly::from_coeffs(
        (0..=2 * m)
            .map(|n| {
                if n % 2 == 0 {
                    let sign = if (n / 2) % 2 == 0 { RBig::ONE } else { -RBig::ONE };
                    Poly::constant(sign / factorial(n / 2))
                } else {
                    Poly::zero()
                }
            })
            .collect(),
    );
    let rhs = gauss.mul_truncated(&expq, m);
    Ok(lhs == rhs)
}

/// `Σ_{N≤M} a_N H_N(x;q) / [2]^N`, the image of `Σ a_N x^N` under
/// `e^(-D²/[2]²)`.
pub fn hermite_series_transform(a: &[RBig], q: &QBase) -> Result<Poly<RBig>> {
    let table = QTable::new(q, 2)?;
    let two = table.two();
    a.iter().enumerate().try_fold(Poly::zero(), |acc, (n, c)| {
        Ok(acc + hermite_explicit(n, q)?.scale_by(&(c.clone() / rpow(&two, n))))
    })
}
