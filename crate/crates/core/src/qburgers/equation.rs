use std::fmt;
use std::sync::OnceLock;

use dashu::rational::RBig;
use rayon::prelude::*;

use super::ColeHopf;
use crate::error::{QError, Result};
use crate::qcore::{derivative_fd, rat, second_derivative_fd, Field, QBase, Real, Scalar};
use crate::qheat::{HeatSolution, ResidualReport};

/// Reading of the first bracket `(1 - M_q) u D_x u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grouping {
    /// `(1 - M_q)(u · D_x u)`
    OpOnProduct,
    /// `u · (1 - M_q) D_x u`
    UTimesOpOnDu,
}

/// Time argument of the subtracted factor in the cubic term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TimeArg {
    /// `u(x, qt)`
    QDilatedTime,
    /// `u(x, t)`
    PlainTime,
}

/// One of the four readings of the q-Burgers equation
/// `u_t - ν D²u = ½[(1-M)uDu] - ½ D(u(qx)u(x)) + (1/4ν)[u(q²x) - u(x, ·)] u(qx) u(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BurgersVariant {
    pub grouping: Grouping,
    pub time_arg: TimeArg,
}

impl BurgersVariant {
    pub const fn new(grouping: Grouping, time_arg: TimeArg) -> Self {
        BurgersVariant { grouping, time_arg }
    }

    pub fn all() -> [BurgersVariant; 4] {
        [
            Self::new(Grouping::OpOnProduct, TimeArg::QDilatedTime),
            Self::new(Grouping::OpOnProduct, TimeArg::PlainTime),
            Self::new(Grouping::UTimesOpOnDu, TimeArg::QDilatedTime),
            Self::new(Grouping::UTimesOpOnDu, TimeArg::PlainTime),
        ]
    }
}

impl fmt::Display for BurgersVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.grouping {
            Grouping::OpOnProduct => "op-on-product",
            Grouping::UTimesOpOnDu => "u-times-op-on-du",
        };
        let t = match self.time_arg {
            TimeArg::QDilatedTime => "dilated-time",
            TimeArg::PlainTime => "plain-time",
        };
        write!(f, "{g}/{t}")
    }
}

/// Values of `u` needed by every reading at one grid point.
pub(crate) struct Stencil<S> {
    pub(crate) x: Real,
    pub(crate) u0: S,
    pub(crate) u1: S,
    pub(crate) u2: S,
    pub(crate) u_qt: S,
    pub(crate) u_t: S,
}

pub(crate) fn stencil<F: Field>(u: &F, x: &Real, t: &Real, q: &QBase) -> Result<Stencil<F::Value>> {
    if x.is_zero() {
        return Err(QError::Grid("the q-Burgers residual needs x ≠ 0".into()));
    }
    if q.is_classical() {
        return Err(QError::Domain("the q-Burgers residual needs q > 1".into()));
    }
    let prec = u.precision();
    let (x, t) = (x.with_precision(prec), t.with_precision(prec));
    let qr = q.to_real(prec);
    let qx = &x * &qr;
    let q2x = &qx * &qr;
    Ok(Stencil {
        u0: u.eval(&x, &t)?,
        u1: u.eval(&qx, &t)?,
        u2: u.eval(&q2x, &t)?,
        u_qt: u.eval(&x, &(&t * &qr))?,
        u_t: u.time_derivative(&x, &t)?,
        x,
    })
}

fn residual_at<S: Scalar>(s: &Stencil<S>, variant: BurgersVariant, q: &QBase, nu: &S) -> S {
    let prec = s.x.precision();
    let qr = q.to_real(prec);
    let h = S::from_real((&qr - &Real::one(prec)) * &s.x);
    let hq = S::from_real(h.real_part() * &qr);
    let half = Real::one(prec).mul_pow2(-1);
    let du0 = (s.u1.clone() - &s.u0) / &h;
    let du1 = (s.u2.clone() - &s.u1) / &hq;
    let d2u = (du1.clone() - &du0) / &h;
    let first = match variant.grouping {
        Grouping::OpOnProduct => s.u0.clone() * &du0 - &(s.u1.clone() * &du1),
        Grouping::UTimesOpOnDu => s.u0.clone() * &(du0 - &du1),
    }
    .scale(&half);
    let second = ((s.u2.clone() - &s.u0) * &s.u1 / &h).scale(&half);
    let lagged = match variant.time_arg {
        TimeArg::QDilatedTime => &s.u_qt,
        TimeArg::PlainTime => &s.u0,
    };
    let cubic = (s.u2.clone() - lagged) * &s.u1 * &s.u0 / &nu.clone().scale(&Real::from_i64(4, prec));
    s.u_t.clone() - &(nu.clone() * &d2u) - &first + &second - &cubic
}

/// Pointwise residual of the q-Burgers equation for the field `u` under
/// `variant` (the calibrated one when `None`).
pub fn burgers_residual<F: Field>(
    u: &F,
    grid: &[(Real, Real)],
    variant: Option<BurgersVariant>,
    q: &QBase,
    nu: &F::Value,
) -> Result<ResidualReport<F::Value>> {
    let variant = match variant {
        Some(v) => v,
        None => canonical_variant()?,
    };
    let residuals = grid
        .par_iter()
        .map(|(x, t)| stencil(u, x, t, q).map(|s| residual_at(&s, variant, q, nu)))
        .collect::<Result<Vec<_>>>()?;
    let mut report = ResidualReport::new(grid.to_vec(), residuals, u.precision());
    report.variant = Some(variant);
    Ok(report)
}

/// Classical Burgers residual `u_t + u u_x - ν u_xx`, with `x` derivatives by
/// finite differences.
pub fn classical_burgers_residual<F: Field<Value = Real>>(
    u: &F,
    grid: &[(Real, Real)],
    nu: &Real,
) -> Result<ResidualReport<Real>> {
    let residuals = grid
        .par_iter()
        .map(|(x, t)| {
            let ux = derivative_fd(|y: &Real| u.eval(y, t), x)?;
            let uxx = second_derivative_fd(|y: &Real| u.eval(y, t), x)?;
            Ok(u.time_derivative(x, t)? + &(u.eval(x, t)? * &ux) - &(nu * &uxx))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ResidualReport::new(grid.to_vec(), residuals, u.precision()))
}

/// Residual of every reading on every reference field.
#[derive(Clone, Debug)]
pub struct CalibrationReport {
    pub fields: Vec<String>,
    /// Per variant, the max residual on each reference field.
    pub table: Vec<(BurgersVariant, Vec<f64>)>,
    pub tolerance: f64,
}

impl CalibrationReport {
    pub fn passing(&self) -> Vec<BurgersVariant> {
        self.table
            .iter()
            .filter(|(_, r)| r.iter().all(|&m| m <= self.tolerance))
            .map(|(v, _)| *v)
            .collect()
    }
}

impl fmt::Display for CalibrationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<28} {}", "variant", self.fields.join(" "))?;
        for (v, row) in &self.table {
            let cells: Vec<String> = row.iter().map(|m| format!("{m:.3e}")).collect();
            writeln!(f, "{:<28} {}", v.to_string(), cells.join(" "))?;
        }
        Ok(())
    }
}

const CALIBRATION_PRECISION: usize = 512;
const CALIBRATION_TOLERANCE: f64 = 1e-15;

/// The reference heat solutions: a plane wave, the static paired shock, the
/// offset shock, the four-wave shock and the `H_2` polynomial.
pub(crate) fn reference_fields(q: &QBase, nu: &Real) -> Result<Vec<(&'static str, HeatSolution<Real>)>> {
    let prec = nu.precision();
    let r = |v: i64| Real::from_i64(v, prec);
    Ok(vec![
        ("constant", HeatSolution::plane_wave(r(1), q, nu.clone())),
        ("static-shock", HeatSolution::superposition(vec![(r(1), r(1)), (r(1), r(-1))], q, nu.clone())?),
        (
            "offset-shock",
            HeatSolution::superposition(vec![(r(10), r(0)), (r(1), r(1)), (r(1), r(-1))], q, nu.clone())?,
        ),
        (
            "multi-shock",
            HeatSolution::superposition(vec![(r(1), r(1)), (r(1), r(-1)), (r(1), r(2)), (r(1), r(-2))], q, nu.clone())?,
        ),
        ("h2-rational", HeatSolution::polynomial(2, q, nu.clone())?),
    ])
}

/// Pole-free calibration grid; `t` stays away from 0 so that the two time
/// arguments differ.
pub(crate) fn calibration_grid(prec: usize) -> Vec<(Real, Real)> {
    let xs = [rat(7, 20), rat(9, 10), rat(17, 10), rat(-3, 5), rat(-13, 10)];
    let ts = [rat(1, 4), rat(3, 5)];
    xs.iter()
        .flat_map(|x| ts.iter().map(move |t| (Real::from_rational(x, prec), Real::from_rational(t, prec))))
        .collect()
}

/// Sweeps the four readings over the reference fields at 512 bits.
pub fn calibration_table(q: &QBase, nu: &RBig) -> Result<CalibrationReport> {
    let prec = CALIBRATION_PRECISION;
    let nu = Real::from_rational(nu, prec);
    let fields = reference_fields(q, &nu)?;
    let grid = calibration_grid(prec);
    let stencils = fields
        .par_iter()
        .map(|(_, phi)| {
            let u = ColeHopf::new(phi.clone());
            grid.par_iter().map(|(x, t)| stencil(&u, x, t, q)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let table = BurgersVariant::all()
        .into_iter()
        .map(|v| {
            let row = stencils
                .iter()
                .map(|points| {
                    points
                        .iter()
                        .map(|s| residual_at(s, v, q, &nu).abs().to_f64())
                        .fold(0.0, f64::max)
                })
                .collect();
            (v, row)
        })
        .collect();
    Ok(CalibrationReport {
        fields: fields.iter().map(|(n, _)| n.to_string()).collect(),
        table,
        tolerance: CALIBRATION_TOLERANCE,
    })
}

/// The unique reading under which every reference Cole-Hopf image solves the
/// equation to `1e-15`.
pub fn variant_calibrate(q: &QBase, nu: &RBig) -> Result<BurgersVariant> {
    let report = calibration_table(q, nu)?;
    match report.passing().as_slice() {
        [v] => Ok(*v),
        other => Err(QError::Calibration { passing: other.len(), table: report.to_string() }),
    }
}

static CANONICAL: OnceLock<Result<BurgersVariant>> = OnceLock::new();

/// The calibrated reading at `q = 2`, `ν = 1`, computed once.
pub fn canonical_variant() -> Result<BurgersVariant> {
    CANONICAL
        .get_or_init(|| variant_calibrate(&QBase::rational(2, 1)?, &RBig::ONE))
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::FnField;

    #[test]
    fn calibration_is_unique_and_stable() {
        let expected = BurgersVariant::new(Grouping::UTimesOpOnDu, TimeArg::PlainTime);
        assert_eq!(canonical_variant().unwrap(), expected);
        for (q, nu) in [("3/2", rat(1, 2)), ("10", RBig::ONE)] {
            assert_eq!(variant_calibrate(&QBase::parse(q).unwrap(), &nu).unwrap(), expected);
        }
    }

    #[test]
    fn constant_field_solves_plain_time_variants() {
        let prec = 256;
        let q = QBase::parse("10").unwrap();
        let c = FnField::new(|_: &Real, _: &Real| Ok(Real::from_i64(-2, prec)), prec);
        let grid = calibration_grid(prec);
        for v in BurgersVariant::all() {
            let r = burgers_residual(&c, &grid, Some(v), &q, &Real::one(prec)).unwrap();
            assert!(r.max_abs.log2_abs() < -100.0, "{v}");
        }
    }

    #[test]
    fn origin_rejected() {
        let prec = 128;
        let q = QBase::parse("2").unwrap();
        let c = FnField::new(|_: &Real, _: &Real| Ok(Real::one(prec)), prec);
        let grid = vec![(Real::zero(prec), Real::one(prec))];
        let v = Some(BurgersVariant::new(Grouping::UTimesOpOnDu, TimeArg::PlainTime));
        assert!(matches!(burgers_residual(&c, &grid, v, &q, &Real::one(prec)), Err(QError::Grid(_))));
    }

    #[test]
    fn classical_limit_two_wave() {
        // at q = 1 + 1e-6 the q-Burgers solution is within O(1e-4) of solving
        // the classical equation
        let prec = 256;
        let q = QBase::from_rational(RBig::ONE + rat(1, 1_000_000)).unwrap();
        let nu = Real::one(prec);
        let phi = HeatSolution::superposition(
            vec![(Real::from_i64(3, prec), Real::from_f64(0.5, prec)), (Real::one(prec), Real::from_f64(-1.0, prec))],
            &q,
            nu.clone(),
        )
        .unwrap();
        let u = ColeHopf::new(phi);
        let grid: Vec<_> = [0.3, 0.8, 1.4]
            .iter()
            .flat_map(|&x| [0.1, 0.5].map(|t| (Real::from_f64(x, prec), Real::from_f64(t, prec))))
            .collect();
        let qr = burgers_residual(&u, &grid, None, &q, &nu).unwrap();
        let cr = classical_burgers_residual(&u, &grid, &nu).unwrap();
        assert!(qr.max_abs_f64() < 1e-30);
        assert!(cr.max_abs_f64() < 1e-4, "{}", cr.max_abs_f64());
    }
}
