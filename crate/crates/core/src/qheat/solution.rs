use dashu::rational::RBig;

use crate::error::{QError, Result};
use crate::qcore::{BiPoly, Embed, Field, Poly, QBase, QTable, Real, Ring, Scalar};
use crate::qhermite::kdf_explicit;
use crate::qspecial::e_q;

use super::residual::HeatField;

/// Shape of a heat solution.
#[derive(Clone, Debug)]
pub enum SolutionKind<S> {
    /// `e^(νk²t) e_q(kx)`
    PlaneWave { k: S },
    /// A polynomial in `x` and `s = νt`, such as a Kampe-de Feriet polynomial.
    Polynomial { poly: BiPoly<RBig>, order: Option<usize> },
    /// `Σ a_j e^(νk_j²t) e_q(k_j x)`
    Superposition { terms: Vec<(S, S)> },
    /// `Σ_{n≤M} a_n H_n(x, νt)` from initial data `Σ a_n x^n`.
    SeriesIvp { coeffs: Vec<RBig>, poly: BiPoly<RBig> },
}

/// An exact solution of `∂_t φ = ν D² φ`, evaluable at real `(x, t)`.
#[derive(Clone, Debug)]
pub struct HeatSolution<S> {
    pub kind: SolutionKind<S>,
    pub q: QBase,
    pub nu: S,
}

impl<S: Scalar> HeatSolution<S>
where
    RBig: Embed<S>,
{
    pub fn plane_wave(k: S, q: &QBase, nu: S) -> Self {
        HeatSolution { kind: SolutionKind::PlaneWave { k }, q: q.clone(), nu }
    }

    /// `H_N(x, νt;q)`.
    pub fn polynomial(n: usize, q: &QBase, nu: S) -> Result<Self> {
        let poly = kdf_explicit(n, q)?;
        Ok(HeatSolution { kind: SolutionKind::Polynomial { poly, order: Some(n) }, q: q.clone(), nu })
    }

    /// Any polynomial in `(x, s)`; it is a solution only if `∂_s p = D² p`.
    pub fn from_bipoly(poly: BiPoly<RBig>, q: &QBase, nu: S) -> Self {
        HeatSolution { kind: SolutionKind::Polynomial { poly, order: None }, q: q.clone(), nu }
    }

    /// `Σ a_j e^(νk_j²t) e_q(k_j x)` over `(amplitude, wave number)` pairs.
    pub fn superposition(terms: Vec<(S, S)>, q: &QBase, nu: S) -> Result<Self> {
        if terms.is_empty() || terms.iter().any(|(a, _)| a.is_zero()) {
            return Err(QError::Domain("superposition amplitudes must be nonzero".into()));
        }
        Ok(HeatSolution { kind: SolutionKind::Superposition { terms }, q: q.clone(), nu })
    }

    /// The solution with initial data `Σ_{n≤M} a_n x^n`.
    pub fn solve_ivp_series(coeffs: &[RBig], q: &QBase, nu: S) -> Result<Self> {
        let poly = coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| Ok(kdf_explicit(n, q)?.scale_by(a)))
            .try_fold(BiPoly::zero(), |acc: BiPoly<RBig>, p: Result<BiPoly<RBig>>| p.map(|p| acc + p))?;
        Ok(HeatSolution { kind: SolutionKind::SeriesIvp { coeffs: coeffs.to_vec(), poly }, q: q.clone(), nu })
    }

    pub fn precision(&self) -> usize {
        self.nu.precision()
    }

    /// Backing polynomial in `(x, s)`, if any.
    pub fn bipoly(&self) -> Option<&BiPoly<RBig>> {
        match &self.kind {
            SolutionKind::Polynomial { poly, .. } | SolutionKind::SeriesIvp { poly, .. } => Some(poly),
            _ => None,
        }
    }

    /// `(amplitude, k)` pairs of an exponential solution.
    pub fn waves(&self) -> Option<Vec<(S, S)>> {
        let prec = self.precision();
        match &self.kind {
            SolutionKind::PlaneWave { k } => Some(vec![(S::one(prec), k.clone())]),
            SolutionKind::Superposition { terms } => Some(terms.clone()),
            _ => None,
        }
    }

    fn s_at(&self, t: &Real) -> S {
        self.nu.clone() * &S::from_real(t.with_precision(self.precision()))
    }

    /// Sum over waves of `a · k^m · e^(νk²t) e_q(kx)`.
    fn wave_sum(&self, waves: &[(S, S)], x: &Real, t: &Real, m: u32, time_factor: bool) -> Result<S> {
        self.wave_sum_scaled(waves, x, t, m, time_factor).map(|(v, _)| v)
    }

    /// The sum and the log2 of its largest term.
    fn wave_sum_scaled(&self, waves: &[(S, S)], x: &Real, t: &Real, m: u32, time_factor: bool) -> Result<(S, f64)> {
        let prec = self.precision();
        let mut scale = f64::NEG_INFINITY;
        let xs = S::from_real(x.with_precision(prec));
        let ts = S::from_real(t.with_precision(prec));
        let mut acc = S::zero(prec);
        for (a, k) in waves {
            let rate = self.nu.clone() * k * k;
            let (e, meta) = e_q(&(k.clone() * &xs), &self.q)?;
            let coef = a.clone() * &(rate.clone() * &ts).exp();
            let partial_max = e.log2_abs() + meta.cancellation_digits as f64 / std::f64::consts::LOG10_2;
            scale = scale.max(coef.log2_abs() + partial_max);
            let mut term = coef * &e;
            for _ in 0..m {
                term = term * k;
            }
            if time_factor {
                term = term * &rate;
            }
            acc = acc + &term;
        }
        Ok((acc, scale))
    }

    /// `φ(x, t)` with the log2 magnitude of the largest partial sum behind it,
    /// the reference for deciding that `φ` vanishes to working precision.
    pub fn value_and_scale(&self, x: &Real, t: &Real) -> Result<(S, f64)> {
        match self.waves() {
            Some(w) => self.wave_sum_scaled(&w, x, t, 0, false),
            None => {
                let v = self.value(x, t)?;
                let scale = v.log2_abs();
                Ok((v, scale))
            }
        }
    }

    pub fn value(&self, x: &Real, t: &Real) -> Result<S> {
        match self.waves() {
            Some(w) => self.wave_sum(&w, x, t, 0, false),
            None => {
                let prec = self.precision();
                Ok(self.bipoly().unwrap().eval2_hp(&S::from_real(x.with_precision(prec)), &self.s_at(t)))
            }
        }
    }

    /// `∂_t φ`, analytically.
    pub fn dt(&self, x: &Real, t: &Real) -> Result<S> {
        match self.waves() {
            Some(w) => self.wave_sum(&w, x, t, 0, true),
            None => {
                let prec = self.precision();
                let ds = self.bipoly().unwrap().ds();
                Ok(ds.eval2_hp(&S::from_real(x.with_precision(prec)), &self.s_at(t)) * &self.nu)
            }
        }
    }

    /// `D^m_x φ` using `D e_q(kx) = k e_q(kx)` or the exact polynomial
    /// derivative; valid at `x = 0` too.
    pub fn dx_n(&self, x: &Real, t: &Real, m: u32) -> Result<S> {
        match self.waves() {
            Some(w) => self.wave_sum(&w, x, t, m, false),
            None => {
                let prec = self.precision();
                let table = QTable::new(&self.q, self.bipoly().unwrap().degree().unwrap_or(0))?;
                let d = self.bipoly().unwrap().q_derivative_n(&table, m as usize);
                Ok(d.eval2_hp(&S::from_real(x.with_precision(prec)), &self.s_at(t)))
            }
        }
    }

    /// `∂_t D^m_x φ`, analytically.
    pub fn dx_n_dt(&self, x: &Real, t: &Real, m: u32) -> Result<S> {
        match self.waves() {
            Some(w) => self.wave_sum(&w, x, t, m, true),
            None => {
                let prec = self.precision();
                let table = QTable::new(&self.q, self.bipoly().unwrap().degree().unwrap_or(0))?;
                let d = self.bipoly().unwrap().q_derivative_n(&table, m as usize).ds();
                Ok(d.eval2_hp(&S::from_real(x.with_precision(prec)), &self.s_at(t)) * &self.nu)
            }
        }
    }

    /// Initial data `φ(x, 0)` of a polynomial solution.
    pub fn initial_poly(&self) -> Option<Poly<RBig>> {
        self.bipoly().map(|p| p.eval_s(&RBig::ZERO))
    }
}

impl<S: Scalar> Field for HeatSolution<S>
where
    RBig: Embed<S>,
{
    type Value = S;

    fn eval(&self, x: &Real, t: &Real) -> Result<S> {
        self.value(x, t)
    }

    fn time_derivative(&self, x: &Real, t: &Real) -> Result<S> {
        self.dt(x, t)
    }

    fn precision(&self) -> usize {
        HeatSolution::precision(self)
    }
}

impl<S: Scalar> HeatField for HeatSolution<S>
where
    RBig: Embed<S>,
{
    fn exact_dxx(&self, x: &Real, t: &Real) -> Option<Result<S>> {
        self.bipoly().map(|_| self.dx_n(x, t, 2))
    }
}
