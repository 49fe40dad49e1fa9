use dashu::rational::RBig;
use qcalc_core::qcore::{rat, QTable, Ring};
use qcalc_core::qheat::{
    evolution_symbolic, hermite_series_transform, heat_residual, polynomial_heat_residual, prop1_check, HeatSolution,
};
use qcalc_core::qhermite::{exp_second_derivative, hermite_operator_rep, kdf_explicit, hermite_explicit};
use qcalc_core::{Poly, Real};
use rand::Rng;
use serde_json::json;

use super::Outcome;
use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::CheckResult;

/// `n × n` grid of nonzero rational `x` in `(-2, 2)` and `t` in `(-1, 1)`.
pub(crate) fn square_grid(n: usize, prec: usize) -> Vec<(Real, Real)> {
    let xs: Vec<RBig> = (0..n)
        .map(|i| {
            let k = i as i64 - (n as i64) / 2;
            rat(if k >= 0 { 4 * k + 3 } else { 4 * k + 1 }, 2 * n as u64 + 1)
        })
        .collect();
    let ts: Vec<RBig> = (0..n).map(|j| rat(2 * j as i64 - n as i64 + 1, n as u64 + 1)).collect();
    xs.iter()
        .flat_map(|x| ts.iter().map(move |t| (Real::from_rational(x, prec), Real::from_rational(t, prec))))
        .collect()
}

pub(super) fn suite(config: &RunConfig, n_max: usize) -> Result<Outcome, CliError> {
    let q = &config.q;
    let prec = config.precision_bits;
    let nu = config.nu_real();
    let mut out = Outcome::default();

    let poly = "(∂_t - ν D²) H_N(x, νt) = 0";
    let params = json!({ "q": config.q_text, "N_max": n_max });
    out.attempt("heat-kdf-polynomial-residual", poly, params.clone(), |p| {
        let mut first_bad = None;
        for n in 0..=n_max {
            if !polynomial_heat_residual(&kdf_explicit(n, q)?, q)?.is_zero() {
                first_bad = Some(n);
                break;
            }
        }
        let c = CheckResult::exact("heat-kdf-polynomial-residual", poly, p, first_bad.is_none());
        Ok(match first_bad {
            Some(n) => c.with_detail(format!("nonzero residual at N = {n}")),
            None => c,
        })
    });

    let evol = "e^(s D²) x^N = H_N(x, s)";
    out.attempt("heat-evolution-operator", evol, params.clone(), |p| {
        let ok = (0..=n_max)
            .map(|n| Ok(evolution_symbolic(&Poly::monomial(RBig::ONE, n), q)? == kdf_explicit(n, q)?))
            .collect::<Result<Vec<bool>, qcalc_core::QError>>()?;
        Ok(CheckResult::exact("heat-evolution-operator", evol, p, ok.iter().all(|&b| b)))
    });

    let grid = square_grid(10, prec);
    let wave = "(∂_t - ν D²) e^(νk²t) e_q(kx) = 0";
    let k = Real::from_rational(&rat(3, 4), prec);
    let tol = config.tol(1e-30);
    out.attempt("heat-plane-wave-residual", wave, json!({ "q": config.q_text, "nu": config.nu.to_string(), "k": "3/4", "grid": "10x10", "precision_bits": prec }), |p| {
        let phi = HeatSolution::plane_wave(k.clone(), q, nu.clone());
        let r = heat_residual(&phi, &grid, q, &nu)?;
        Ok(CheckResult::residual("heat-plane-wave-residual", wave, p, r.max_abs_f64(), tol))
    });
    let sup = "(∂_t - ν D²) Σ a_j e^(νk_j²t) e_q(k_j x) = 0";
    out.attempt("heat-superposition-residual", sup, json!({ "q": config.q_text, "nu": config.nu.to_string(), "waves": "10·e_q(0) + e_q(x) + e_q(-x) + e_q(2x)/2", "grid": "10x10", "precision_bits": prec }), |p| {
        let r = |n: i64, d: u64| Real::from_rational(&rat(n, d), prec);
        let phi = HeatSolution::superposition(vec![(r(10, 1), r(0, 1)), (r(1, 1), r(1, 1)), (r(1, 1), r(-1, 1)), (r(1, 2), r(2, 1))], q, nu.clone())?;
        let res = heat_residual(&phi, &grid, q, &nu)?;
        Ok(CheckResult::residual("heat-superposition-residual", sup, p, res.max_abs_f64(), tol))
    });

    let m = 8;
    let p1 = "e^(-D²/[2]²) e_q([2]xt) = e^(-t²) e_q([2]xt), through order M in t";
    out.attempt("heat-operator-gaussian", p1, json!({ "q": config.q_text, "M": m }), |p| {
        let ok = (0..=m).map(|k| prop1_check(k, q)).collect::<Result<Vec<_>, _>>()?;
        Ok(CheckResult::exact("heat-operator-gaussian", p1, p, ok.iter().all(|&b| b)))
    });
    let p2 = "[2]^N e^(-D²/[2]²) x^N = H_N(x)";
    let n2 = n_max.max(30);
    out.attempt("heat-operator-hermite", p2, json!({ "q": config.q_text, "N_max": n2 }), |p| {
        let ok = (0..=n2)
            .map(|n| Ok(hermite_operator_rep(n, q)? == hermite_explicit(n, q)?))
            .collect::<Result<Vec<bool>, qcalc_core::QError>>()?;
        Ok(CheckResult::exact("heat-operator-hermite", p2, p, ok.iter().all(|&b| b)))
    });

    let mut rng = config.rng(3);
    let coeffs: Vec<RBig> = (0..=m).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=7))).collect();
    let cor = "e^(-D²/[2]²) Σ a_N x^N = Σ a_N H_N(x) / [2]^N";
    out.attempt("heat-hermite-series", cor, json!({ "q": config.q_text, "M": m, "coefficients": "seeded" }), |p| {
        let table = QTable::new(q, m)?;
        let two = table.two();
        let direct = exp_second_derivative(&Poly::from_coeffs(coeffs.clone()), &-(RBig::ONE / (&two * &two)), &table);
        Ok(CheckResult::exact("heat-hermite-series", cor, p, hermite_series_transform(&coeffs, q)? == direct))
    });
    let ivp = "φ(x, 0) = Σ a_n x^n  ⇒  φ = Σ a_n H_n(x, νt) solves the q-heat equation";
    out.attempt("heat-initial-value-series", ivp, json!({ "q": config.q_text, "M": m, "coefficients": "seeded" }), |p| {
        let sol = HeatSolution::solve_ivp_series(&coeffs, q, nu.clone())?;
        let ok = polynomial_heat_residual(sol.bipoly().expect("polynomial"), q)?.is_zero()
            && sol.initial_poly() == Some(Poly::from_coeffs(coeffs.clone()));
        Ok(CheckResult::exact("heat-initial-value-series", ivp, p, ok))
    });
    Ok(out)
}
