use dashu::rational::RBig;
use qcalc_core::qcore::{poly_eval, rat, PolyArg, QPoly, Ring};
use qcalc_core::qhermite::{
    hermite_explicit, hermite_generating_check, hermite_rec2_check, hermite_rec3_check, kdf_scaling_check, qdiff_equation_check, Family, HermiteFamily, KdfDenominator, Route,
};
use qcalc_core::qheat::kdf_from_generating;
use qcalc_core::qhermite::kdf_operator_steps;
use qcalc_core::Real;
use rand::Rng;
use serde_json::json;

use super::Outcome;
use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::CheckResult;

fn route_name(r: Route) -> &'static str {
    match r {
        Route::ExplicitSum => "explicit",
        Route::NTermRecurrence => "n-term-recurrence",
        Route::OperatorProduct => "operator-product",
        Route::HeatOperator => "heat-operator",
    }
}

pub(super) fn hermite_suite(config: &RunConfig, n_max: usize) -> Result<Outcome, CliError> {
    let q = &config.q;
    let mut out = Outcome::default();
    let params = json!({ "q": config.q_text, "N_max": n_max });

    let explicit = HermiteFamily::build(Family::Hermite, Route::ExplicitSum, n_max, q)?;
    for (route, formula) in [
        (Route::NTermRecurrence, "H_{N+1} = [N+1]/(N+1) ([2]x H_N - ... ), N-term recurrence from H_0 = 1"),
        (Route::OperatorProduct, "H_{N+1} = [N+1]/(N+1) ([2]x - (2/[2] + (q-1)x²) D + Σ_l ... D^l) H_N"),
        (Route::HeatOperator, "H_N = [2]^N e^(-D²/[2]²) x^N"),
    ] {
        out.attempt(&format!("hermite-{}-vs-explicit", route_name(route)), formula, params.clone(), |p| {
            let other = HermiteFamily::build(Family::Hermite, route, n_max, q)?;
            let mismatch = explicit.first_mismatch(&other);
            let c = CheckResult::exact(&format!("hermite-{}-vs-explicit", route_name(route)), formula, p, mismatch.is_none());
            Ok(match mismatch {
                Some(n) => c.with_detail(format!("first mismatch at N = {n}")),
                None => c,
            })
        });
    }

    out.attempt("hermite-lowering", "D H_N = [2][N] H_{N-1}", params.clone(), |p| {
        let bad = (0..=n_max).map(|n| hermite_rec2_check(n, q)).collect::<Result<Vec<_>, _>>()?;
        Ok(CheckResult::exact("hermite-lowering", "D H_N = [2][N] H_{N-1}", p, bad.iter().all(|&b| b)))
    });
    let rec3 = "(x d/dx - N) H_N = 2 [N][N-1] H_{N-2}";
    out.attempt("hermite-euler-operator", rec3, params.clone(), |p| {
        let ok = (0..=n_max).map(|n| hermite_rec3_check(n, q)).collect::<Result<Vec<_>, _>>()?;
        Ok(CheckResult::exact("hermite-euler-operator", rec3, p, ok.iter().all(|&b| b)))
    });
    let qde = "2 D² H_N - [2]² x H_N' + [2]² N H_N = 0";
    out.attempt("hermite-q-difference-equation", qde, params.clone(), |p| {
        let ok = (0..=n_max).map(|n| qdiff_equation_check(n, q).map(|r| r.is_zero())).collect::<Result<Vec<_>, _>>()?;
        Ok(CheckResult::exact("hermite-q-difference-equation", qde, p, ok.iter().all(|&b| b)))
    });
    let gen = "e^(-t²) e_q([2]xt) = Σ_N H_N t^N / [N]!";
    let m = n_max.min(8);
    out.attempt("hermite-generating-function", gen, json!({ "q": config.q_text, "M": m }), |p| {
        let ok = (0..=m).map(|k| hermite_generating_check(k, q)).collect::<Result<Vec<_>, _>>()?;
        Ok(CheckResult::exact("hermite-generating-function", gen, p, ok.iter().all(|&b| b)))
    });

    // seeded spot values: exact evaluation against high-precision Horner
    let mut rng = config.rng(1);
    let prec = config.precision_bits;
    let samples: Vec<RBig> = (0..8).map(|_| rat(rng.gen_range(-60..=60), rng.gen_range(1..=20))).collect();
    let eval = "H_N(x) exact vs rounded evaluation";
    out.attempt("hermite-sampled-evaluation", eval, json!({ "q": config.q_text, "N_max": n_max, "samples": samples.len() }), |p| {
        let mut worst = 0.0f64;
        for n in 0..=n_max {
            let h = QPoly::Uni(hermite_explicit(n, q)?);
            for x in &samples {
                let exact = match poly_eval(&h, &PolyArg::Exact(x.clone()), None)? {
                    PolyArg::Exact(v) => Real::from_rational(&v, prec),
                    PolyArg::Float(_) => unreachable!("exact input"),
                };
                let float = match poly_eval(&h, &PolyArg::Float(Real::from_rational(x, prec)), None)? {
                    PolyArg::Float(v) => v,
                    PolyArg::Exact(_) => unreachable!("float input"),
                };
                if !exact.is_zero() {
                    worst = worst.max(((exact.clone() - &float).abs() / &exact.abs()).to_f64());
                }
            }
        }
        let tol = config.tol(2f64.powi(-(prec as i32) + 64));
        Ok(CheckResult::residual("hermite-sampled-evaluation", eval, p, worst, tol))
    });
    Ok(out)
}

pub(super) fn kdf_suite(config: &RunConfig, n_max: usize) -> Result<Outcome, CliError> {
    let q = &config.q;
    let mut out = Outcome::default();
    let params = json!({ "q": config.q_text, "N_max": n_max });
    let explicit = HermiteFamily::build(Family::KampeDeFeriet, Route::ExplicitSum, n_max, q)?;
    for (route, formula) in [
        (Route::NTermRecurrence, "H_{N+1}(x,s) N-term recurrence from H_0 = 1"),
        (Route::OperatorProduct, "H_{N+1}(x,s) = [N+1]/(N+1) (x + 2s D + ... D^l / ([2]^l [l+1])) H_N"),
        (Route::HeatOperator, "H_N(x,s) = e^(s D²) x^N"),
    ] {
        let name = format!("kdf-{}-vs-explicit", route_name(route));
        out.attempt(&name, formula, params.clone(), |p| {
            let other = HermiteFamily::build(Family::KampeDeFeriet, route, n_max, q)?;
            let mismatch = explicit.first_mismatch(&other);
            let c = CheckResult::exact(&name, formula, p, mismatch.is_none());
            Ok(match mismatch {
                Some(n) => c.with_detail(format!("first mismatch at N = {n}")),
                None => c,
            })
        });
    }
    let gen = "e^(s k²) e_q(kx) = Σ_N H_N(x,s) k^N / [N]!";
    out.attempt("kdf-generating-function", gen, params.clone(), |p| {
        let series = kdf_from_generating(n_max, q)?;
        let ok = series.iter().enumerate().all(|(n, g)| explicit.get(n) == Some(&QPoly::Bi(g.clone())));
        Ok(CheckResult::exact("kdf-generating-function", gen, p, ok))
    });

    // the operator as printed, with [l] in place of [l+1]
    if let Ok(printed) = kdf_operator_steps(n_max, q, KdfDenominator::Printed) {
        let first_bad = printed.iter().enumerate().find(|(n, p)| explicit.get(*n) != Some(&QPoly::Bi((*p).clone())));
        match first_bad {
            Some((n, _)) => out.note(format!(
                "kdf one-step operator with denominator [2]^l [l] departs from the explicit sum at N = {n}; [2]^l [l+1] agrees"
            )),
            None => out.note("kdf one-step operator agrees under both denominator readings"),
        }
    }

    let scaling = "H_N(x, s) = (-s)^(N/2) H_N(x / ([2] sqrt(-s)))";
    let mut rng = config.rng(2);
    let prec = config.precision_bits;
    let samples: Vec<(Real, Real, Real)> = (0..6)
        .map(|_| {
            let r = |rng: &mut rand_chacha::ChaCha8Rng, lo: i64, hi: i64| Real::from_rational(&rat(rng.gen_range(lo..=hi), 10), prec);
            (r(&mut rng, -30, 30), r(&mut rng, 1, 20), r(&mut rng, -30, -1))
        })
        .collect();
    out.attempt("kdf-hermite-rescaling", scaling, params.clone(), |p| {
        let ok = (0..=n_max.min(12)).map(|n| kdf_scaling_check(n, q, &samples)).collect::<Result<Vec<_>, _>>()?;
        Ok(CheckResult::exact("kdf-hermite-rescaling", scaling, p, ok.iter().all(|&b| b)))
    });
    Ok(out)
}
