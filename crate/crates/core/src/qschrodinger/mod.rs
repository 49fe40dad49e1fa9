//! The q-Schrödinger equation `ψ_t = (iħ/2m) D²_x ψ`, read as the q-heat
//! equation with the imaginary diffusion constant `ν = iħ/2m`, and the complex
//! velocity field it induces.

mod limit;
mod madelung;
mod polynomials;

use dashu::rational::RBig;

use crate::error::{QError, Result};
use crate::qburgers::ColeHopf;
use crate::qcore::{Complex, Field, GaussRational, QBase, Real, Scalar};
use crate::qheat::HeatSolution;

pub use limit::{classical_madelung_limit, MadelungLimitReport};
pub use madelung::{
    canonical_madelung_variant, madelung_calibrate, madelung_calibration_table, madelung_residual,
    two_fluid_split_check, SplitReport,
};
pub use polynomials::{
    hs_generating_check, hs_reading_select, kdf_complex, schrodinger_poly_residual, HsReading, HsSelection,
};

/// Planck constant, mass and deformation base.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumParams {
    pub hbar: RBig,
    pub mass: RBig,
    pub q: QBase,
}

impl QuantumParams {
    pub fn new(hbar: RBig, mass: RBig, q: QBase) -> Result<Self> {
        if hbar <= RBig::ZERO || mass <= RBig::ZERO {
            return Err(QError::Domain(format!("ħ and m must be positive, got ħ={hbar}, m={mass}")));
        }
        if q.is_classical() {
            return Err(QError::Domain("the q-Schrödinger equation needs q > 1".into()));
        }
        Ok(QuantumParams { hbar, mass, q })
    }

    /// `ħ = m = 1`.
    pub fn natural(q: QBase) -> Result<Self> {
        Self::new(RBig::ONE, RBig::ONE, q)
    }

    /// `ħ / 2m`
    pub fn dispersion(&self) -> RBig {
        &self.hbar / (RBig::from(2u8) * &self.mass)
    }

    /// `iħ/2m` as an exact Gaussian rational.
    pub fn nu_exact(&self) -> GaussRational {
        GaussRational::new(RBig::ZERO, self.dispersion())
    }

    pub fn nu(&self, prec: usize) -> Complex {
        Complex::imag(Real::from_rational(&self.dispersion(), prec))
    }

    pub fn hbar_real(&self, prec: usize) -> Real {
        Real::from_rational(&self.hbar, prec)
    }

    pub fn mass_real(&self, prec: usize) -> Real {
        Real::from_rational(&self.mass, prec)
    }

    /// Wave number `ip/ħ` of momentum `p`.
    fn wave_number(&self, p: &Real) -> Complex {
        let prec = p.precision();
        Complex::imag(p / &self.hbar_real(prec))
    }
}

/// `e^(-ip²t/2mħ) e_q(ipx/ħ)`.
pub fn schrodinger_plane_wave(p: &Real, params: &QuantumParams) -> HeatSolution<Complex> {
    let prec = p.precision();
    HeatSolution::plane_wave(params.wave_number(p), &params.q, params.nu(prec))
}

/// `Σ a_j ψ_{p_j}` over `(amplitude, momentum)` pairs.
pub fn schrodinger_superposition(terms: &[(Complex, Real)], params: &QuantumParams) -> Result<HeatSolution<Complex>> {
    let prec = terms.first().map_or(64, |(a, _)| a.precision());
    let waves = terms.iter().map(|(a, p)| (a.clone(), params.wave_number(p))).collect();
    HeatSolution::superposition(waves, &params.q, params.nu(prec))
}

/// `H^(s)_N(x, t)` as an evaluable solution.
pub fn schrodinger_polynomial(n: usize, params: &QuantumParams, prec: usize) -> Result<HeatSolution<Complex>> {
    HeatSolution::polynomial(n, &params.q, params.nu(prec))
}

/// A complex velocity `u = u₁ + i u₂`.
#[derive(Clone, Debug)]
pub struct ComplexVelocity<F> {
    pub field: F,
}

impl<F: Field<Value = Complex>> ComplexVelocity<F> {
    pub fn new(field: F) -> Self {
        ComplexVelocity { field }
    }

    /// `(u₁, u₂)` at `(x, t)`.
    pub fn parts(&self, x: &Real, t: &Real) -> Result<(Real, Real)> {
        let u = self.field.eval(x, t)?;
        Ok((u.re, u.im))
    }
}

impl<F: Field<Value = Complex>> Field for ComplexVelocity<F> {
    type Value = Complex;

    fn eval(&self, x: &Real, t: &Real) -> Result<Complex> {
        self.field.eval(x, t)
    }

    fn time_derivative(&self, x: &Real, t: &Real) -> Result<Complex> {
        self.field.time_derivative(x, t)
    }

    fn precision(&self) -> usize {
        self.field.precision()
    }
}

/// `u = -(iħ/m) D_xψ / ψ`.
pub fn complex_cole_hopf(psi: &HeatSolution<Complex>, params: &QuantumParams) -> ComplexVelocity<ColeHopf<Complex>> {
    let mut psi = psi.clone();
    psi.nu = params.nu(psi.precision());
    psi.q = params.q.clone();
    ComplexVelocity::new(ColeHopf::new(psi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::rat;
    use crate::qspecial::e_q;

    fn params(q: &str) -> QuantumParams {
        QuantumParams::natural(QBase::parse(q).unwrap()).unwrap()
    }

    #[test]
    fn invalid_params() {
        let q = QBase::parse("2").unwrap();
        assert!(QuantumParams::new(RBig::ZERO, RBig::ONE, q.clone()).is_err());
        assert!(QuantumParams::new(RBig::ONE, rat(-1, 1), q).is_err());
        assert!(QuantumParams::natural(QBase::classical()).is_err());
    }

    #[test]
    fn plane_wave_values() {
        let prec = 256;
        let p2 = params("2");
        let zero = schrodinger_plane_wave(&Real::zero(prec), &p2);
        let v = zero.value(&Real::from_f64(4.2, prec), &Real::from_f64(-1.5, prec)).unwrap();
        assert_eq!(v, Complex::one(prec));

        let psi = schrodinger_plane_wave(&Real::from_i64(3, prec), &p2);
        let at_origin = psi.value(&Real::zero(prec), &Real::from_f64(0.7, prec)).unwrap();
        assert!((at_origin.modulus() - &Real::one(prec)).log2_abs() < -240.0);

        let (x, t) = (Real::from_rational(&rat(1, 2), prec), Real::from_rational(&rat(3, 10), prec));
        let psi = schrodinger_plane_wave(&Real::one(prec), &p2);
        let (eq, _) = e_q(&Complex::imag(x.clone()), &p2.q).unwrap();
        let phase = Complex::imag(Real::from_rational(&rat(-3, 20), prec)).exp();
        let expect = phase * &eq;
        assert!((psi.value(&x, &t).unwrap() - &expect).log2_abs() < -240.0);
    }

    #[test]
    fn plane_wave_velocity_is_momentum_over_mass() {
        let prec = 256;
        let params = QuantumParams::new(rat(1, 2), rat(3, 1), QBase::parse("10").unwrap()).unwrap();
        for p in [rat(1, 1), rat(-5, 2), rat(7, 3)] {
            let psi = schrodinger_plane_wave(&Real::from_rational(&p, prec), &params);
            let u = complex_cole_hopf(&psi, &params);
            let expect = Real::from_rational(&(p / &params.mass), prec);
            for (x, t) in [(0.0, 0.0), (0.37, 1.2), (-2.9, -0.4)] {
                let v = u.eval(&Real::from_f64(x, prec), &Real::from_f64(t, prec)).unwrap();
                assert!((v - &Complex::from_real(expect.clone())).log2_abs() < -200.0);
            }
        }
    }

    #[test]
    fn trivial_velocities() {
        let prec = 256;
        let p2 = params("2");
        let one = schrodinger_polynomial(0, &p2, prec).unwrap();
        let u = complex_cole_hopf(&one, &p2);
        assert!(u.eval(&Real::from_f64(0.8, prec), &Real::one(prec)).unwrap().is_zero());

        // ψ = x gives u = -(iħ/m)/x
        let lin = schrodinger_polynomial(1, &p2, prec).unwrap();
        let u = complex_cole_hopf(&lin, &p2);
        let x = Real::from_rational(&rat(2, 5), prec);
        let (u1, u2) = u.parts(&x, &Real::one(prec)).unwrap();
        assert!(u1.is_zero());
        assert!((u2 + &Real::from_rational(&rat(5, 2), prec)).log2_abs() < -240.0);
    }
}
