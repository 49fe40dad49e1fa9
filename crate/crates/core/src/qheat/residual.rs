use rayon::prelude::*;

use crate::error::{QError, Result};
use crate::qburgers::BurgersVariant;
use crate::qcore::{q_second_derivative_fn, Field, FnField, QBase, Real, Scalar};

/// A field whose second q-derivative in `x` may be known exactly.
pub trait HeatField: Field {
    /// Exact `D²_x φ`, when the field is polynomial-backed.
    fn exact_dxx(&self, _x: &Real, _t: &Real) -> Option<Result<Self::Value>> {
        None
    }
}

impl<S: Scalar, F> HeatField for FnField<F> where FnField<F>: Field<Value = S> {}

/// Pointwise residuals of an equation over a grid.
#[derive(Clone, Debug)]
pub struct ResidualReport<S> {
    pub grid: Vec<(Real, Real)>,
    pub residuals: Vec<S>,
    pub max_abs: Real,
    pub mean_abs: Real,
    pub variant: Option<BurgersVariant>,
}

impl<S: Scalar> ResidualReport<S> {
    pub fn new(grid: Vec<(Real, Real)>, residuals: Vec<S>, prec: usize) -> Self {
        let mut max_abs = Real::zero(prec);
        let mut sum = Real::zero(prec);
        for r in &residuals {
            let m = r.modulus();
            sum = sum + &m;
            max_abs = max_abs.max(m);
        }
        let mean_abs = if residuals.is_empty() {
            Real::zero(prec)
        } else {
            sum / &Real::from_i64(residuals.len() as i64, prec)
        };
        ResidualReport { grid, residuals, max_abs, mean_abs, variant: None }
    }

    pub fn max_abs_f64(&self) -> f64 {
        self.max_abs.to_f64()
    }
}

/// `(∂_t - ν D²_x) φ` on a grid.
///
/// `D²` is taken by dilation unless the field knows it exactly, in which case
/// `x = 0` is allowed.
pub fn heat_residual<F: HeatField>(
    field: &F,
    grid: &[(Real, Real)],
    q: &QBase,
    nu: &F::Value,
) -> Result<ResidualReport<F::Value>> {
    let prec = field.precision();
    let residuals = grid
        .par_iter()
        .map(|(x, t)| {
            let x = x.with_precision(prec);
            let t = t.with_precision(prec);
            let dxx = match field.exact_dxx(&x, &t) {
                Some(v) => v?,
                None => {
                    if x.is_zero() {
                        return Err(QError::Grid("x = 0 needs a polynomial-backed solution".into()));
                    }
                    q_second_derivative_fn(|y: &Real| field.eval(y, &t), &x, q)?
                }
            };
            Ok(field.time_derivative(&x, &t)? - &(nu.clone() * &dxx))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ResidualReport::new(grid.to_vec(), residuals, prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qheat::HeatSolution;

    fn grid(xs: &[f64], ts: &[f64], prec: usize) -> Vec<(Real, Real)> {
        xs.iter()
            .flat_map(|&x| ts.iter().map(move |&t| (Real::from_f64(x, prec), Real::from_f64(t, prec))))
            .collect()
    }

    #[test]
    fn plane_wave_residual_is_tiny() {
        let prec = 256;
        let q = QBase::parse("2").unwrap();
        let sol = HeatSolution::plane_wave(Real::one(prec), &q, Real::one(prec));
        let g = grid(&[0.1, 0.5, 1.0, 3.0, 10.0], &[0.0, 0.25, 0.5, 0.75, 1.0], prec);
        let r = heat_residual(&sol, &g, &q, &Real::one(prec)).unwrap();
        assert!(r.max_abs.log2_abs() < -100.0, "{}", r.max_abs);
        assert!(r.max_abs >= r.mean_abs);
        assert_eq!(r.residuals.len(), g.len());
    }

    #[test]
    fn polynomial_residual_zero_including_origin() {
        let prec = 128;
        let q = QBase::parse("3/2").unwrap();
        let sol = HeatSolution::polynomial(5, &q, Real::from_f64(0.5, prec)).unwrap();
        let g = grid(&[0.0, -1.5, 2.0], &[-1.0, 0.0, 3.0], prec);
        let r = heat_residual(&sol, &g, &q, &Real::from_f64(0.5, prec)).unwrap();
        assert!(r.max_abs.log2_abs() < -100.0);
    }

    #[test]
    fn origin_rejected_for_waves() {
        let q = QBase::parse("2").unwrap();
        let sol = HeatSolution::plane_wave(Real::one(128), &q, Real::one(128));
        let g = grid(&[0.0], &[1.0], 128);
        assert!(matches!(heat_residual(&sol, &g, &q, &Real::one(128)), Err(QError::Grid(_))));
    }

    #[test]
    fn non_solution_is_reported() {
        let prec = 256;
        let q = QBase::parse("2").unwrap();
        let f = FnField::new(|x: &Real, t: &Real| Ok(x * t), prec);
        let g = grid(&[0.5, 2.0], &[0.3, 1.0], prec);
        let r = heat_residual(&f, &g, &q, &Real::one(prec)).unwrap();
        for ((x, _), res) in r.grid.iter().zip(&r.residuals) {
            assert!((res.clone() - x).log2_abs() < -100.0);
        }
    }
}
