//! Classical hydrodynamic residuals of a q-Schrödinger solution near `q = 1`.

use rayon::prelude::*;

use super::{complex_cole_hopf, QuantumParams};
use crate::error::{QError, Result};
use crate::qcore::{derivative_fd, second_derivative_fd, Complex, Field, Real};
use crate::qheat::{HeatSolution, ResidualReport};

/// Continuity `ρ_t + (ρv)_x` and Euler `v_t + v v_x - Q_x` residuals, with
/// `ρ = |ψ|²`, `v = Re u` and `Q = (ħ²/2m²) (√ρ)_xx / √ρ`.
#[derive(Clone, Debug)]
pub struct MadelungLimitReport {
    pub continuity: ResidualReport<Real>,
    pub euler: ResidualReport<Real>,
    /// Largest residual over the size of the terms and fields around it.
    pub continuity_relative: f64,
    pub euler_relative: f64,
}

fn density(psi: &HeatSolution<Complex>, x: &Real, t: &Real) -> Result<Real> {
    let rho = psi.value(x, t)?.norm_sqr();
    if rho.is_zero() || rho.log2_abs() < -(psi.precision() as f64) / 2.0 {
        return Err(QError::Domain(format!("|ψ|² vanishes at x={}, t={}", x.to_f64(), t.to_f64())));
    }
    Ok(rho)
}

/// Residuals of the classical continuity and quantum Euler equations for the
/// q-deformed solution `psi`; `x` derivatives by finite differences.
pub fn classical_madelung_limit(
    psi: &HeatSolution<Complex>,
    params: &QuantumParams,
    grid: &[(Real, Real)],
) -> Result<MadelungLimitReport> {
    let prec = psi.precision();
    let u = complex_cole_hopf(psi, params);
    let hbar = params.hbar_real(prec);
    let mass = params.mass_real(prec);
    let quantum = (&hbar * &hbar / &(&mass * &mass)).mul_pow2(-1);
    let points = grid
        .par_iter()
        .map(|(x, t)| {
            let x = x.with_precision(prec);
            let t = t.with_precision(prec);
            let v = |y: &Real| Ok(u.eval(y, &t)?.re);
            let root = |y: &Real| density(psi, y, &t)?.sqrt();
            let potential = |y: &Real| Ok(&quantum * &second_derivative_fd(root, y)? / &root(y)?);

            let value = psi.value(&x, &t)?;
            let rho_t = (value.conj() * &psi.dt(&x, &t)?).re.mul_pow2(1);
            let flux_x = derivative_fd(|y: &Real| Ok(density(psi, y, &t)? * &v(y)?), &x)?;

            let v0 = v(&x)?;
            let v_t = u.time_derivative(&x, &t)?.re;
            let advect = &v0 * &derivative_fd(v, &x)?;
            let q_x = derivative_fd(potential, &x)?;

            let continuity = &rho_t + &flux_x;
            let c_scale = rho_t.abs() + &flux_x.abs() + &(density(psi, &x, &t)? * &v0).abs();
            let euler = &(&v_t + &advect) - &q_x;
            let e_scale = v_t.abs() + &advect.abs() + &q_x.abs() + &(&v0 * &v0);
            Ok((continuity, c_scale, euler, e_scale))
        })
        .collect::<Result<Vec<_>>>()?;
    let ratio = |r: &Real, s: &Real| if s.is_zero() { r.to_f64().abs() } else { (r.abs() / s).to_f64() };
    let continuity_relative = points.iter().map(|(r, s, _, _)| ratio(r, s)).fold(0.0, f64::max);
    let euler_relative = points.iter().map(|(_, _, r, s)| ratio(r, s)).fold(0.0, f64::max);
    let (c, e): (Vec<_>, Vec<_>) = points.into_iter().map(|(c, _, e, _)| (c, e)).unzip();
    Ok(MadelungLimitReport {
        continuity: ResidualReport::new(grid.to_vec(), c, prec),
        euler: ResidualReport::new(grid.to_vec(), e, prec),
        continuity_relative,
        euler_relative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::Scalar;
    use crate::qcore::{rat, QBase};
    use crate::qschrodinger::{schrodinger_plane_wave, schrodinger_superposition};
    use dashu::rational::RBig;

    fn params(eps: u64) -> QuantumParams {
        QuantumParams::natural(QBase::from_rational(RBig::ONE + rat(1, eps)).unwrap()).unwrap()
    }

    fn grid(prec: usize) -> Vec<(Real, Real)> {
        [(0.3, 0.2), (0.8, 0.5), (-0.6, 0.2), (1.1, -0.3)]
            .iter()
            .map(|&(x, t)| (Real::from_f64(x, prec), Real::from_f64(t, prec)))
            .collect()
    }

    fn two_wave(p: &QuantumParams, prec: usize) -> HeatSolution<Complex> {
        let a = |v: i64| Complex::from_real(Real::from_i64(v, prec));
        schrodinger_superposition(&[(a(2), Real::one(prec)), (a(1), Real::from_f64(-0.5, prec))], p).unwrap()
    }

    #[test]
    fn plane_wave_continuity() {
        let prec = 256;
        let p = params(1_000_000);
        let psi = schrodinger_plane_wave(&Real::from_f64(1.5, prec), &p);
        let r = classical_madelung_limit(&psi, &p, &grid(prec)).unwrap();
        assert!(r.continuity_relative <= 1e-4, "{}", r.continuity_relative);
    }

    #[test]
    fn static_real_state() {
        let prec = 256;
        let p = params(1_000_000);
        let psi = schrodinger_superposition(&[(Complex::one(prec), Real::zero(prec))], &p).unwrap();
        let r = classical_madelung_limit(&psi, &p, &grid(prec)).unwrap();
        assert!(r.continuity.max_abs.is_zero());
    }

    #[test]
    fn residuals_scale_linearly() {
        let prec = 256;
        let eps = [10_000u64, 100_000, 1_000_000];
        let reports: Vec<_> = eps
            .iter()
            .map(|&e| {
                let p = params(e);
                classical_madelung_limit(&two_wave(&p, prec), &p, &grid(prec)).unwrap()
            })
            .collect();
        for pick in [|r: &MadelungLimitReport| r.continuity.max_abs_f64(), |r: &MadelungLimitReport| r.euler.max_abs_f64()] {
            for w in reports.windows(2) {
                let slope = (pick(&w[0]) / pick(&w[1])).log10();
                assert!((slope - 1.0).abs() <= 0.1, "slope {slope}");
            }
        }
    }

    #[test]
    fn vanishing_density_rejected() {
        let prec = 256;
        let p = params(1_000_000);
        let one = Complex::one(prec);
        let psi = schrodinger_superposition(&[(one.clone(), Real::zero(prec)), (-one, Real::zero(prec))], &p).unwrap();
        assert!(matches!(classical_madelung_limit(&psi, &p, &grid(prec)), Err(QError::Domain(_))));
    }
}
