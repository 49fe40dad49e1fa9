use dashu::rational::RBig;

use crate::error::{QError, Result};
use crate::qcore::{Embed, Field, QBase, Real, Scalar};
use crate::qheat::HeatSolution;

/// The velocity field `u = -2ν D_xφ / φ` of a heat solution `φ`.
///
/// `D_xφ` is the dilation quotient away from the origin; at `x = 0` (and at
/// the classical sentinel) the exact derivative of the plane waves or
/// polynomial is used instead.
#[derive(Clone, Debug)]
pub struct ColeHopf<S> {
    pub phi: HeatSolution<S>,
}

impl<S: Scalar> ColeHopf<S>
where
    RBig: Embed<S>,
{
    pub fn new(phi: HeatSolution<S>) -> Self {
        ColeHopf { phi }
    }

    pub fn q(&self) -> &QBase {
        &self.phi.q
    }

    pub fn nu(&self) -> &S {
        &self.phi.nu
    }

    fn prec(&self) -> usize {
        self.phi.precision()
    }

    /// `φ(x, t)`, refusing points where it vanishes to working precision.
    fn denominator(&self, x: &Real, t: &Real) -> Result<S> {
        let pole = || QError::Pole { x: x.to_f64(), t: t.to_f64(), bracket: None };
        let (v, scale) = match self.phi.value_and_scale(x, t) {
            Err(QError::PrecisionExhausted { .. }) => return Err(pole()),
            other => other?,
        };
        if v.is_zero() || v.log2_abs() < scale - self.prec() as f64 + 16.0 {
            return Err(pole());
        }
        Ok(v)
    }

    fn dilation_ok(&self, x: &Real) -> bool {
        !x.is_zero() && !self.q().is_classical()
    }

    /// `D_xφ` and `D_xφ_t` at `(x, t)`.
    fn derivatives(&self, x: &Real, t: &Real, phi: &S, phi_t: Option<&S>) -> Result<(S, Option<S>)> {
        if !self.dilation_ok(x) {
            let d = self.phi.dx_n(x, t, 1)?;
            let dt = phi_t.map(|_| self.phi.dx_n_dt(x, t, 1)).transpose()?;
            return Ok((d, dt));
        }
        let prec = self.prec();
        let qr = self.q().to_real(prec);
        let qx = x * &qr;
        let den = S::from_real((&qr - &Real::one(prec)) * x);
        let d = (self.phi.value(&qx, t)? - phi) / &den;
        let dt = match phi_t {
            Some(pt) => Some((self.phi.dt(&qx, t)? - pt) / &den),
            None => None,
        };
        Ok((d, dt))
    }

    pub fn u(&self, x: &Real, t: &Real) -> Result<S> {
        let prec = self.prec();
        let (x, t) = (x.with_precision(prec), t.with_precision(prec));
        let phi = self.denominator(&x, &t)?;
        let (d, _) = self.derivatives(&x, &t, &phi, None)?;
        Ok(self.minus_two_nu() * &d / &phi)
    }

    /// `∂_t u = -2ν (D φ_t · φ - D φ · φ_t) / φ²`.
    pub fn u_t(&self, x: &Real, t: &Real) -> Result<S> {
        let prec = self.prec();
        let (x, t) = (x.with_precision(prec), t.with_precision(prec));
        let phi = self.denominator(&x, &t)?;
        let phi_t = self.phi.dt(&x, &t)?;
        let (d, dt) = self.derivatives(&x, &t, &phi, Some(&phi_t))?;
        let dt = dt.expect("requested");
        Ok(self.minus_two_nu() * &(dt * &phi - &(d * &phi_t)) / &(phi.clone() * &phi))
    }

    fn minus_two_nu(&self) -> S {
        let prec = self.prec();
        self.nu().clone().scale(&Real::from_i64(-2, prec))
    }
}

impl<S: Scalar> Field for ColeHopf<S>
where
    RBig: Embed<S>,
{
    type Value = S;

    fn eval(&self, x: &Real, t: &Real) -> Result<S> {
        self.u(x, t)
    }

    fn time_derivative(&self, x: &Real, t: &Real) -> Result<S> {
        self.u_t(x, t)
    }

    fn precision(&self) -> usize {
        self.prec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::derivative_fd;
    use crate::qspecial::tanh_q;

    #[test]
    fn plane_wave_gives_constant() {
        let prec = 256;
        let q = QBase::parse("2").unwrap();
        let nu = Real::from_f64(0.5, prec);
        let k = Real::from_f64(1.5, prec);
        let u = ColeHopf::new(HeatSolution::plane_wave(k.clone(), &q, nu.clone()));
        for (x, t) in [(0.0, 0.0), (0.7, -1.0), (-2.5, 3.0)] {
            let v = u.u(&Real::from_f64(x, prec), &Real::from_f64(t, prec)).unwrap();
            assert!((v + &(&nu * &k).mul_pow2(1)).log2_abs() < -200.0);
        }
        let flat = ColeHopf::new(HeatSolution::plane_wave(Real::zero(prec), &q, nu));
        assert!(flat.u(&Real::one(prec), &Real::one(prec)).unwrap().is_zero());
    }

    #[test]
    fn paired_waves_give_static_tanh() {
        let prec = 256;
        let q = QBase::parse("10").unwrap();
        let one = Real::one(prec);
        let phi = HeatSolution::superposition(vec![(one.clone(), one.clone()), (one.clone(), -one.clone())], &q, one.clone())
            .unwrap();
        let u = ColeHopf::new(phi);
        for (x, t) in [(0.3, 0.0), (1.7, 2.0), (-4.0, -1.0)] {
            let xr = Real::from_f64(x, prec);
            let v = u.u(&xr, &Real::from_f64(t, prec)).unwrap();
            let expect = -tanh_q(&xr, &q).unwrap().mul_pow2(1);
            assert!((v - &expect).log2_abs() < -200.0);
        }
    }

    #[test]
    fn analytic_time_derivative_matches_fd() {
        let prec = 256;
        let q = QBase::parse("3/2").unwrap();
        let one = Real::one(prec);
        let phi = HeatSolution::superposition(
            vec![(Real::from_i64(10, prec), Real::zero(prec)), (one.clone(), one.clone()), (one.clone(), -one.clone())],
            &q,
            one.clone(),
        )
        .unwrap();
        let u = ColeHopf::new(phi);
        let (x, t) = (Real::from_f64(0.8, prec), Real::from_f64(0.3, prec));
        let fd = derivative_fd(|tt: &Real| u.u(&x, tt), &t).unwrap();
        assert!((u.u_t(&x, &t).unwrap() - &fd).log2_abs() < -100.0);
    }

    #[test]
    fn pole_reported() {
        let prec = 256;
        let q = QBase::parse("2").unwrap();
        let one = Real::one(prec);
        let u = ColeHopf::new(HeatSolution::plane_wave(one.clone(), &q, one.clone()));
        let zero = Real::from_i64(-2, prec);
        assert!(matches!(u.u(&zero, &one), Err(QError::Pole { .. })));
    }
}
