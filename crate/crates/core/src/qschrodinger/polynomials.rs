//! Complex Kampe-de Feriet polynomials `H^(s)_N(x, t)`, bivariate in `x` and
//! `t` with Gaussian-rational coefficients.

use std::fmt;

use dashu::rational::RBig;

use super::QuantumParams;
use crate::error::{QError, Result};
use crate::qcore::{BiPoly, GaussRational, Poly, QTable, Ring};
use crate::qhermite::factorial;

type G = BiPoly<GaussRational>;

/// Denominator of the `k`-th term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HsReading {
    /// `[N-2k]_q k!`
    Printed,
    /// `[N-2k]_q! k!`
    Factorial,
}

impl HsReading {
    pub fn all() -> [HsReading; 2] {
        [HsReading::Printed, HsReading::Factorial]
    }
}

impl fmt::Display for HsReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HsReading::Printed => "[N-2k]_q k!",
            HsReading::Factorial => "[N-2k]_q! k!",
        })
    }
}

/// `Σ_k (iħt/2m)^k [N]! x^(N-2k) / den_k` with `den_k` per `reading`.
///
/// The printed reading divides by `[0]_q = 0` whenever `N` is even.
pub fn kdf_complex(n: usize, params: &QuantumParams, reading: HsReading) -> Result<G> {
    let table = QTable::new(&params.q, n)?;
    let nu = params.nu_exact();
    let mut out = G::zero();
    for k in 0..=n / 2 {
        let m = n - 2 * k;
        let den = match reading {
            HsReading::Printed if m == 0 => {
                return Err(QError::Domain(format!("H^(s)_{n}: the term k={k} divides by [0]_q")))
            }
            HsReading::Printed => table.number(m).clone(),
            HsReading::Factorial => table.factorial(m).clone(),
        } * factorial(k);
        out = out + G::term(nu.pow(k).scale(&(table.factorial(n) / den)), m, k);
    }
    Ok(out)
}

/// `∂_t p - (iħ/2m) D²_x p`, exactly.
pub fn schrodinger_poly_residual(p: &G, params: &QuantumParams) -> Result<G> {
    let table = QTable::new(&params.q, p.degree().unwrap_or(0))?;
    let d2 = p.q_derivative_n(&table, 2).mul_coeff(&Poly::constant(params.nu_exact()));
    Ok(p.ds() - d2)
}

/// Outcome of testing both denominator readings against the equation.
#[derive(Clone, Debug)]
pub struct HsSelection {
    pub n_max: usize,
    /// Per reading, the first order that fails and why.
    pub outcomes: Vec<(HsReading, Option<(usize, String)>)>,
}

impl HsSelection {
    /// The readings whose polynomials solve the equation for every order.
    pub fn winners(&self) -> Vec<HsReading> {
        self.outcomes.iter().filter(|(_, f)| f.is_none()).map(|(r, _)| *r).collect()
    }
}

/// Builds `H^(s)_N` for `N ≤ n_max` under each reading and keeps those whose
/// residual is the zero polynomial.
pub fn hs_reading_select(n_max: usize, params: &QuantumParams) -> Result<HsSelection> {
    let outcomes = HsReading::all()
        .into_iter()
        .map(|reading| {
            let failure = (0..=n_max).find_map(|n| match kdf_complex(n, params, reading) {
                Err(e) => Some((n, e.to_string())),
                Ok(p) => match schrodinger_poly_residual(&p, params) {
                    Err(e) => Some((n, e.to_string())),
                    Ok(r) if r.is_zero() => None,
                    Ok(_) => Some((n, "nonzero residual".to_string())),
                },
            });
            (reading, failure)
        })
        .collect();
    Ok(HsSelection { n_max, outcomes })
}

/// Compares the `p^N` coefficient of `e^(-ip²t/2mħ) e_q(ipx/ħ)` with
/// `(i/ħ)^N H^(s)_N / [N]!` for `N ≤ n_max`; returns the first mismatch.
pub fn hs_generating_check(n_max: usize, params: &QuantumParams) -> Result<Option<usize>> {
    let table = QTable::new(&params.q, n_max)?;
    let inv_hbar = RBig::ONE / &params.hbar;
    let i_over_hbar = GaussRational::new(RBig::ZERO, inv_hbar.clone());
    let time_rate = GaussRational::new(RBig::ZERO, -(&inv_hbar / (RBig::from(2u8) * &params.mass)));
    for n in 0..=n_max {
        let mut coeff = G::zero();
        for j in 0..=n / 2 {
            let m = n - 2 * j;
            let c = time_rate.pow(j).scale(&(RBig::ONE / factorial(j))) * i_over_hbar.pow(m).scale(&(RBig::ONE / table.factorial(m)));
            coeff = coeff + G::term(c, m, j);
        }
        let hs = kdf_complex(n, params, HsReading::Factorial)?;
        let target = hs.mul_coeff(&Poly::constant(i_over_hbar.pow(n).scale(&(RBig::ONE / table.factorial(n)))));
        if coeff != target {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{rat, Complex, QBase, Real, Scalar};
    use crate::qhermite::kdf_explicit;

    fn params(q: &str) -> QuantumParams {
        QuantumParams::natural(QBase::parse(q).unwrap()).unwrap()
    }

    #[test]
    fn low_orders() {
        let p = params("2");
        assert_eq!(kdf_complex(0, &p, HsReading::Factorial).unwrap(), G::one());
        // x² + [2]_q·(i/2)·t
        let h2 = kdf_complex(2, &p, HsReading::Factorial).unwrap();
        let expect = G::term(GaussRational::real(RBig::ONE), 2, 0) + G::term(GaussRational::new(RBig::ZERO, rat(3, 2)), 0, 1);
        assert_eq!(h2, expect);
        assert!(kdf_complex(2, &p, HsReading::Printed).is_err());
        assert_eq!(kdf_complex(1, &p, HsReading::Printed).unwrap(), kdf_complex(1, &p, HsReading::Factorial).unwrap());
    }

    #[test]
    fn order_four_value() {
        let p = params("2");
        let h4 = kdf_complex(4, &p, HsReading::Factorial).unwrap();
        // [4]! = 315; terms 1, 315/(3·1)·(i/2), 315/2·(i/2)²
        let v = h4.eval2_hp(&Complex::one(128), &Complex::one(128));
        let (re, im) = v.to_f64_pair();
        assert!((re - (1.0 - 315.0 / 8.0)).abs() < 1e-12);
        assert!((im - 52.5).abs() < 1e-12);
    }

    #[test]
    fn substitution_matches_real_family() {
        let p = QuantumParams::new(rat(3, 1), rat(2, 1), QBase::parse("3/2").unwrap()).unwrap();
        let nu = p.nu_exact();
        for n in 0..=8 {
            let real = kdf_explicit(n, &p.q).unwrap();
            let sub = real.map(|c| c.map(|r| GaussRational::real(r.clone())));
            let sub = Poly::from_coeffs(
                sub.coeffs()
                    .iter()
                    .map(|c| Poly::from_coeffs(c.coeffs().iter().enumerate().map(|(k, a)| a.clone() * nu.pow(k)).collect()))
                    .collect(),
            );
            assert_eq!(sub, kdf_complex(n, &p, HsReading::Factorial).unwrap());
        }
    }

    #[test]
    fn factorial_reading_wins() {
        for q in ["3/2", "2", "10"] {
            let sel = hs_reading_select(15, &params(q)).unwrap();
            assert_eq!(sel.winners(), vec![HsReading::Factorial]);
            let printed = &sel.outcomes[0];
            assert_eq!(printed.1.as_ref().unwrap().0, 0);
        }
    }

    #[test]
    fn printed_odd_orders_fail_from_three() {
        let p = params("2");
        let h3 = kdf_complex(3, &p, HsReading::Printed).unwrap();
        assert!(!schrodinger_poly_residual(&h3, &p).unwrap().is_zero());
    }

    #[test]
    fn generating_function() {
        assert_eq!(hs_generating_check(10, &params("2")).unwrap(), None);
        let p = QuantumParams::new(rat(1, 3), rat(5, 1), QBase::parse("10").unwrap()).unwrap();
        assert_eq!(hs_generating_check(10, &p).unwrap(), None);
    }

    #[test]
    fn evaluation_is_real_at_time_zero() {
        let p = params("10");
        let h = kdf_complex(6, &p, HsReading::Factorial).unwrap();
        let v = h.eval2_hp(&Complex::from_real(Real::from_f64(0.5, 128)), &Complex::zero(128));
        assert!(v.imag_part().is_zero());
    }
}
