//! q-Hermite polynomials `H_N(x;q)` and q-Kampe-de Feriet polynomials
//! `H_N(x, s;q)` with `s = νt`, built along several independent routes so the
//! routes can be checked against one another exactly.

mod hermite;
mod kdf;

pub use hermite::{
    hermite_explicit, hermite_generating_check, hermite_nterm_recurrence, hermite_operator_rep,
    hermite_operator_steps, hermite_rec2_check, hermite_rec3_check, qdiff_equation_check,
};
pub use kdf::{
    kdf_explicit, kdf_nterm_recurrence, kdf_operator_steps, kdf_scaling_check, KdfDenominator,
};

use dashu::integer::UBig;
use dashu::rational::RBig;

use crate::error::Result;
use crate::qcore::{BiPoly, Poly, QBase, QPoly, QTable, Ring};

/// How a family of polynomials was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    ExplicitSum,
    NTermRecurrence,
    /// Iterated one-step operator, starting from `H_0 = 1`.
    OperatorProduct,
    /// Exponential of `D²` applied to `x^N`.
    HeatOperator,
}

/// Which polynomial family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Hermite,
    KampeDeFeriet,
}

/// `H_0 ..= H_{N_max}` for one base and one construction route.
#[derive(Clone, Debug)]
pub struct HermiteFamily {
    pub q: QBase,
    pub family: Family,
    pub route: Route,
    pub polys: Vec<QPoly>,
}

impl HermiteFamily {
    /// Builds every order up to `n_max` along `route`.
    pub fn build(family: Family, route: Route, n_max: usize, q: &QBase) -> Result<Self> {
        let polys = match family {
            Family::Hermite => {
                let list = match route {
                    Route::ExplicitSum => (0..=n_max).map(|n| hermite_explicit(n, q)).collect::<Result<_>>()?,
                    Route::NTermRecurrence => hermite::nterm_list(n_max, q)?,
                    Route::OperatorProduct => hermite_operator_steps(n_max, q)?,
                    Route::HeatOperator => (0..=n_max).map(|n| hermite_operator_rep(n, q)).collect::<Result<_>>()?,
                };
                list.into_iter().map(QPoly::Uni).collect()
            }
            Family::KampeDeFeriet => {
                let list = match route {
                    Route::ExplicitSum => (0..=n_max).map(|n| kdf_explicit(n, q)).collect::<Result<_>>()?,
                    Route::NTermRecurrence => kdf::nterm_list(n_max, q)?,
                    Route::OperatorProduct => kdf_operator_steps(n_max, q, KdfDenominator::Shifted)?,
                    Route::HeatOperator => (0..=n_max).map(|n| kdf::heat_operator(n, q)).collect::<Result<_>>()?,
                };
                list.into_iter().map(QPoly::Bi).collect()
            }
        };
        Ok(HermiteFamily { q: q.clone(), family, route, polys })
    }

    pub fn get(&self, n: usize) -> Option<&QPoly> {
        self.polys.get(n)
    }

    pub fn max_order(&self) -> usize {
        self.polys.len() - 1
    }

    /// First order at which two families differ, if any.
    pub fn first_mismatch(&self, other: &HermiteFamily) -> Option<usize> {
        self.polys.iter().zip(&other.polys).position(|(a, b)| a != b)
    }
}

/// Classical factorial as a rational.
pub(crate) fn factorial(k: usize) -> RBig {
    RBig::from((1..=k).fold(UBig::ONE, |acc, i| acc * UBig::from(i)))
}

/// Nilpotent operator exponential `Σ_j c^j D^(2j) p / j!` on a polynomial.
pub fn exp_second_derivative<C: Ring>(p: &Poly<C>, c: &C, table: &QTable) -> Poly<C> {
    let mut out = Poly::zero();
    let mut term = p.clone();
    let mut coeff = C::one();
    let mut j = 0usize;
    while !term.is_zero() {
        out = out + term.mul_coeff(&coeff).scale_by(&(RBig::ONE / factorial(j)));
        term = term.q_derivative(table).q_derivative(table);
        coeff = coeff * c.clone();
        j += 1;
    }
    out
}

/// `s` as a coefficient of a bivariate polynomial.
pub(crate) fn s_var() -> Poly<RBig> {
    Poly::x()
}

/// Unwraps the univariate variant.
pub fn as_uni(p: &QPoly) -> Option<&Poly<RBig>> {
    match p {
        QPoly::Uni(u) => Some(u),
        QPoly::Bi(_) => None,
    }
}

/// Unwraps the bivariate variant.
pub fn as_bi(p: &QPoly) -> Option<&BiPoly<RBig>> {
    match p {
        QPoly::Bi(b) => Some(b),
        QPoly::Uni(_) => None,
    }
}
