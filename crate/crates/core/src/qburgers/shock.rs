use dashu::rational::RBig;
use rayon::prelude::*;

use super::ColeHopf;
use crate::error::{QError, Result};
use crate::qcore::{Field, Poly, QBase, QTable, Real};
use crate::qheat::{HeatSolution, ResidualReport};
use crate::qspecial::e_q;

/// Superposition `c + Σ a_n e^(νk_n²t) e_q(k_n x)` behind a shock solution.
#[derive(Clone, Debug)]
pub struct ShockSpec {
    pub offset: Real,
    /// `(k_n, a_n)` pairs.
    pub terms: Vec<(Real, Real)>,
    pub q: QBase,
    pub nu: Real,
}

impl ShockSpec {
    pub fn new(offset: Real, terms: Vec<(Real, Real)>, q: &QBase, nu: Real) -> Result<Self> {
        if terms.is_empty() {
            return Err(QError::Domain("a shock needs at least one wave".into()));
        }
        if offset.is_negative() {
            return Err(QError::Domain("the offset must be non-negative".into()));
        }
        Ok(ShockSpec { offset, terms, q: q.clone(), nu })
    }

    /// Unit-amplitude waves with wave numbers `ks`.
    pub fn unit(offset: f64, ks: &[f64], q: &QBase, nu: f64, prec: usize) -> Result<Self> {
        let terms = ks.iter().map(|&k| (Real::from_f64(k, prec), Real::one(prec))).collect();
        Self::new(Real::from_f64(offset, prec), terms, q, Real::from_f64(nu, prec))
    }

    /// True when the waves come in `(k, -k)` pairs of equal amplitude, so the
    /// denominator is an offset plus positive multiples of `cosh_q`.
    pub fn paired_regular(&self) -> bool {
        let mut left: Vec<&(Real, Real)> = self.terms.iter().filter(|(k, _)| !k.is_zero()).collect();
        if self.terms.iter().any(|(k, a)| k.is_zero() && a.is_negative()) {
            return false;
        }
        while let Some((k, a)) = left.pop() {
            let Some(pos) = left.iter().position(|(k2, a2)| *k2 == -k.clone() && a2 == a) else {
                return false;
            };
            left.remove(pos);
            if a.signum() <= 0 {
                return false;
            }
        }
        true
    }

    pub fn heat_solution(&self) -> Result<HeatSolution<Real>> {
        let mut waves: Vec<(Real, Real)> = Vec::new();
        if !self.offset.is_zero() {
            waves.push((self.offset.clone(), Real::zero(self.offset.precision())));
        }
        waves.extend(self.terms.iter().map(|(k, a)| (a.clone(), k.clone())));
        HeatSolution::superposition(waves, &self.q, self.nu.clone())
    }

    pub fn velocity(&self) -> Result<ColeHopf<Real>> {
        Ok(ColeHopf::new(self.heat_solution()?))
    }
}

/// Two-wave shock `-2ν (k₁φ₁ + k₂φ₂) / (φ₁ + φ₂)`.
pub fn shock_single(k1: &Real, k2: &Real, q: &QBase, nu: &Real) -> Result<ColeHopf<Real>> {
    if k1.is_zero() && k2.is_zero() {
        return Err(QError::Domain("k₁ and k₂ cannot both vanish".into()));
    }
    let one = Real::one(nu.precision());
    ShockSpec::new(Real::zero(nu.precision()), vec![(k1.clone(), one.clone()), (k2.clone(), one)], q, nu.clone())?
        .velocity()
}

/// Two-wave shock with a constant offset `c` in the denominator.
pub fn shock_offset(c: &Real, k1: &Real, k2: &Real, q: &QBase, nu: &Real) -> Result<ColeHopf<Real>> {
    let one = Real::one(nu.precision());
    ShockSpec::new(c.clone(), vec![(k1.clone(), one.clone()), (k2.clone(), one)], q, nu.clone())?.velocity()
}

/// The general superposition shock.
pub fn shock_multi(spec: &ShockSpec) -> Result<ColeHopf<Real>> {
    spec.velocity()
}

/// A sign change (or vanishing) of `φ` between two neighbouring `x` samples
/// at time `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleBracket {
    pub x: (f64, f64),
    pub t: f64,
}

/// Sampling plan for [`regularity_scan`]: a geometric grid in `|x|` over
/// `[x_min, x_max]` on both sides of the origin (plus `x = 0`), and a
/// uniform grid in `t`.
#[derive(Clone, Debug)]
pub struct ScanGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub per_decade: usize,
    pub negative: bool,
    pub positive: bool,
    pub t_min: f64,
    pub t_max: f64,
    pub t_points: usize,
}

impl ScanGrid {
    pub fn symmetric(x_min: f64, x_max: f64, per_decade: usize, t: (f64, f64), t_points: usize) -> Self {
        ScanGrid {
            x_min,
            x_max,
            per_decade,
            negative: true,
            positive: true,
            t_min: t.0,
            t_max: t.1,
            t_points,
        }
    }

    fn magnitudes(&self) -> Vec<f64> {
        let decades = (self.x_max / self.x_min).log10();
        let n = (decades * self.per_decade as f64).ceil() as usize;
        (0..=n)
            .map(|i| self.x_min * 10f64.powf(decades * i as f64 / n.max(1) as f64))
            .collect()
    }

    /// Sorted `x` samples.
    pub fn xs(&self) -> Vec<f64> {
        let mags = self.magnitudes();
        let mut xs = Vec::new();
        if self.negative {
            xs.extend(mags.iter().rev().map(|m| -m));
        }
        if self.negative && self.positive {
            xs.push(0.0);
        }
        if self.positive {
            xs.extend(mags.iter().copied());
        }
        xs
    }

    pub fn ts(&self) -> Vec<f64> {
        if self.t_points <= 1 {
            return vec![self.t_min];
        }
        (0..self.t_points)
            .map(|i| self.t_min + (self.t_max - self.t_min) * i as f64 / (self.t_points - 1) as f64)
            .collect()
    }
}

/// Scans the Cole-Hopf denominator `φ` for sign changes along `x` at each
/// sampled `t`. Points where `φ` is lost in rounding noise count as brackets
/// of their own.
pub fn regularity_scan(phi: &HeatSolution<Real>, grid: &ScanGrid) -> Result<Vec<PoleBracket>> {
    let prec = phi.precision();
    let xs = grid.xs();
    let ts = grid.ts();
    let xr: Vec<Real> = xs.iter().map(|&x| Real::from_f64(x, prec)).collect();
    let tr: Vec<Real> = ts.iter().map(|&t| Real::from_f64(t, prec)).collect();
    // values[t][x] as (sign, vanishes)
    let signs: Vec<Vec<(i32, bool)>> = match phi.waves() {
        Some(waves) => {
            // e_q(k x) does not depend on t: evaluate once per (x, wave)
            let eq: Vec<Vec<(Real, f64)>> = xr
                .par_iter()
                .map(|x| {
                    waves
                        .iter()
                        .map(|(_, k)| {
                            let (v, meta) = e_q(&(k * x), &phi.q)?;
                            let top = v.log2_abs() + meta.cancellation_digits as f64 / std::f64::consts::LOG10_2;
                            Ok((v, top))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            tr.par_iter()
                .map(|t| {
                    let coefs: Vec<Real> =
                        waves.iter().map(|(a, k)| a * &(&phi.nu * k * k * t).exp()).collect();
                    eq.iter()
                        .map(|row| {
                            let mut sum = Real::zero(prec);
                            let mut top = f64::NEG_INFINITY;
                            for (c, (v, vt)) in coefs.iter().zip(row) {
                                sum = sum + &(c * v);
                                top = top.max(c.log2_abs() + vt);
                            }
                            let lost = sum.is_zero() || sum.log2_abs() < top - prec as f64 + 16.0;
                            (sum.signum(), lost)
                        })
                        .collect()
                })
                .collect()
        }
        None => tr
            .par_iter()
            .map(|t| {
                xr.iter()
                    .map(|x| {
                        let v = phi.value(x, t)?;
                        Ok((v.signum(), v.is_zero()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?,
    };
    let mut brackets = Vec::new();
    for (ti, row) in signs.iter().enumerate() {
        for i in 0..row.len() {
            let (s, lost) = row[i];
            if lost {
                let lo = if i > 0 { xs[i - 1] } else { xs[i] };
                let hi = if i + 1 < xs.len() { xs[i + 1] } else { xs[i] };
                brackets.push(PoleBracket { x: (lo, hi), t: ts[ti] });
            } else if i + 1 < row.len() && !row[i + 1].1 && row[i + 1].0 != s {
                brackets.push(PoleBracket { x: (xs[i], xs[i + 1]), t: ts[ti] });
            }
        }
    }
    Ok(brackets)
}

/// Distinct `x` intervals among `brackets`, in order.
pub fn distinct_x_brackets(brackets: &[PoleBracket]) -> Vec<(f64, f64)> {
    let mut xs: Vec<(f64, f64)> = brackets.iter().map(|b| b.x).collect();
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    xs.dedup();
    xs
}

/// `(x, u)` samples.
pub type Profile = Vec<(f64, f64)>;

/// Normalized cross-correlation of `u` sampled on `m` log-spaced points over
/// `(x_lo, x_hi)` and over the window scaled by `q^m`, clamped to `[0, 1]`.
/// Also returns both profiles.
pub fn self_similarity_metric<F: Field<Value = Real>>(
    u: &F,
    q: &QBase,
    t: &Real,
    window: (f64, f64),
    m: u32,
    samples: usize,
) -> Result<(f64, Profile, Profile)> {
    let (lo, hi) = window;
    if !(lo > 0.0 && hi > lo) || m == 0 || samples < 2 {
        return Err(QError::Domain("need 0 < x_lo < x_hi, m ≥ 1 and at least two samples".into()));
    }
    let prec = u.precision();
    let scale = q.to_real(prec).powi(m as i64);
    let ratio = hi / lo;
    let xs: Vec<Real> = (0..samples)
        .map(|i| Real::from_f64(lo, prec) * &Real::from_f64(ratio.powf(i as f64 / (samples - 1) as f64), prec))
        .collect();
    let sample = |x: &Real| -> Result<(f64, f64)> {
        match u.eval(x, t) {
            Ok(v) => Ok((x.to_f64(), v.to_f64())),
            Err(QError::Pole { x, t, .. }) => Err(QError::Domain(format!("pole in window near x = {x}, t = {t}"))),
            Err(e) => Err(e),
        }
    };
    let a: Vec<(f64, f64)> = xs.par_iter().map(sample).collect::<Result<_>>()?;
    let b: Vec<(f64, f64)> = xs.par_iter().map(|x| sample(&(x * &scale))).collect::<Result<_>>()?;
    Ok((normalized_correlation(&a, &b), a, b))
}

fn normalized_correlation(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().map(|p| p.1).sum::<f64>() / n;
    let mb = b.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (p, r) in a.iter().zip(b) {
        let (da, db) = (p.1 - ma, r.1 - mb);
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    let tiny = 1e-300;
    if saa <= tiny && sbb <= tiny {
        // two flat profiles: identical up to their level
        let spread = a.iter().zip(b).map(|(p, r)| (p.1 - r.1).abs()).fold(0.0, f64::max);
        return if spread <= 1e-12 * (1.0 + ma.abs()) { 1.0 } else { 0.0 };
    }
    if saa <= tiny || sbb <= tiny {
        return 0.0;
    }
    (sab / (saa * sbb).sqrt()).clamp(0.0, 1.0)
}

/// A candidate `f` for the initial problem `(D_x + F/(2ν)) f = 0`.
#[derive(Clone, Debug)]
pub enum InitialCandidate {
    Polynomial(Poly<RBig>),
    /// `e_q(k x)`
    Exponential(Real),
}

/// Outcome of [`ivp_initial_profile`].
#[derive(Clone, Debug)]
pub struct IvpCheck {
    /// `(D_x + F/(2ν)) f` on the grid.
    pub equation: ResidualReport<Real>,
    /// `cole_hopf(e^(νtD²) f)(x, 0) - F(x)` on the grid.
    pub reproduction: ResidualReport<Real>,
}

/// Verifies a candidate `f` for initial velocity `F`: the first-order
/// q-difference equation holds on `grid`, and the Cole-Hopf image of the
/// evolved `f` starts at `F`.
pub fn ivp_initial_profile<G>(initial: G, f: &InitialCandidate, grid: &[Real], q: &QBase, nu: &Real) -> Result<IvpCheck>
where
    G: Fn(&Real) -> Result<Real> + Sync,
{
    let prec = nu.precision();
    let two_nu = nu.mul_pow2(1);
    let phi = match f {
        InitialCandidate::Polynomial(p) => HeatSolution::solve_ivp_series(p.coeffs(), q, nu.clone())?,
        InitialCandidate::Exponential(k) => HeatSolution::plane_wave(k.clone(), q, nu.clone()),
    };
    let table = match f {
        InitialCandidate::Polynomial(p) => Some((p, QTable::new(q, p.degree().unwrap_or(0))?)),
        InitialCandidate::Exponential(_) => None,
    };
    let zero_t = Real::zero(prec);
    let eq = grid
        .par_iter()
        .map(|x| {
            let x = x.with_precision(prec);
            let (fx, dfx) = match &table {
                Some((p, t)) => (p.eval_hp(&x), p.q_derivative(t).eval_hp(&x)),
                None => {
                    if x.is_zero() {
                        return Err(QError::Grid("x = 0 needs a polynomial candidate".into()));
                    }
                    let fx = phi.value(&x, &zero_t)?;
                    let d = crate::qcore::q_derivative_fn(|y: &Real| phi.value(y, &zero_t), &x, q)?;
                    (fx, d.value)
                }
            };
            Ok(dfx + &(initial(&x)? * &fx / &two_nu))
        })
        .collect::<Result<Vec<_>>>()?;
    let u = ColeHopf::new(phi);
    let rep = grid
        .par_iter()
        .map(|x| Ok(u.u(x, &zero_t)? - &initial(&x.with_precision(prec))?))
        .collect::<Result<Vec<_>>>()?;
    Ok(IvpCheck {
        equation: ResidualReport::new(grid.iter().cloned().map(|x| (x, zero_t.clone())).collect(), eq, prec),
        reproduction: ResidualReport::new(grid.iter().map(|x| (x.clone(), zero_t.clone())).collect(), rep, prec),
    })
}
