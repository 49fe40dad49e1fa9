use dashu::rational::RBig;
use qcalc_core::qburgers::{burgers_residual, classical_burgers_residual, ColeHopf};
use qcalc_core::qcore::rat;
use qcalc_core::qheat::HeatSolution;
use qcalc_core::qhermite::hermite_explicit;
use qcalc_core::qschrodinger::{classical_madelung_limit, schrodinger_plane_wave, schrodinger_superposition, QuantumParams};
use qcalc_core::{Complex, QBase, Real};
use serde_json::json;

use super::Outcome;
use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::CheckResult;

const LIMIT_EPSILONS: [u64; 3] = [10_000, 100_000, 1_000_000];

fn limit_grid(prec: usize) -> Vec<(Real, Real)> {
    [(0.3, 0.2), (0.8, 0.5), (-0.6, 0.2), (1.1, -0.3)]
        .iter()
        .map(|&(x, t)| (Real::from_f64(x, prec), Real::from_f64(t, prec)))
        .collect()
}

/// Log-log slopes of `values` against `ε = 1/LIMIT_EPSILONS`.
fn slopes(values: &[f64]) -> Vec<f64> {
    values.windows(2).map(|w| (w[0] / w[1]).log10()).collect()
}

pub(super) fn suite(config: &RunConfig) -> Result<Outcome, CliError> {
    let prec = config.precision_bits;
    let mut out = Outcome::default();
    let dq = config.q_minus_one();
    let q = if dq > 0.0 && dq <= 1e-4 {
        config.q.clone()
    } else {
        out.note(format!("classical-limit checks run at q = 1 + 1e-6 (configured q = {})", config.q_text));
        QBase::from_rational(RBig::ONE + rat(1, 1_000_000))?
    };
    let q_text = q.to_string();

    let coeffs = "H_N(x;q) → H_N(x) (physicists' Hermite) as q → 1";
    out.attempt("limit-hermite-coefficients", coeffs, json!({ "q": q_text, "N_max": 10 }), |p| {
        let mut worst = 0.0f64;
        for n in 0..=10 {
            let near = hermite_explicit(n, &q)?;
            let classical = hermite_explicit(n, &QBase::classical())?;
            for (a, b) in near.coeffs().iter().zip(classical.coeffs()) {
                if *b != RBig::ZERO {
                    let rel = (a.clone() - b.clone()) / b.clone();
                    worst = worst.max(rel.to_f64().value().abs());
                }
            }
        }
        Ok(CheckResult::residual("limit-hermite-coefficients", coeffs, p, worst, config.tol(1e-4)))
    });

    let nu = config.nu_real();
    let burgers = "u_t + u u_x - ν u_xx = O(q - 1) for the q-Cole-Hopf image";
    out.attempt("limit-classical-burgers", burgers, json!({ "q": q_text, "nu": config.nu.to_string() }), |p| {
        let waves = vec![(Real::from_i64(3, prec), Real::from_f64(0.5, prec)), (Real::one(prec), Real::from_f64(-1.0, prec))];
        let u = ColeHopf::new(HeatSolution::superposition(waves, &q, nu.clone())?);
        let grid = limit_grid(prec);
        let exact = burgers_residual(&u, &grid, None, &q, &nu)?.max_abs_f64();
        let r = classical_burgers_residual(&u, &grid, &nu)?;
        Ok(CheckResult::residual("limit-classical-burgers", burgers, p, r.max_abs_f64(), config.tol(1e-4))
            .with_detail(format!("q-Burgers residual on the same grid {exact:.3e}")))
    });

    let quantum = |q: QBase| QuantumParams::new(config.hbar.clone(), config.mass.clone(), q);
    let plane = "ρ_t + (ρv)_x = O(q - 1), ρ = |ψ|², v = Re u";
    out.attempt("limit-continuity-plane-wave", plane, json!({ "q": q_text, "p": "3/2" }), |p| {
        let params = quantum(q.clone())?;
        let psi = schrodinger_plane_wave(&Real::from_rational(&rat(3, 2), prec), &params);
        let r = classical_madelung_limit(&psi, &params, &limit_grid(prec))?;
        Ok(CheckResult::residual("limit-continuity-plane-wave", plane, p, r.continuity_relative, config.tol(1e-4)))
    });

    let reports = LIMIT_EPSILONS
        .iter()
        .map(|&e| {
            let params = quantum(QBase::from_rational(RBig::ONE + rat(1, e))?)?;
            let a = |v: i64| Complex::from_real(Real::from_i64(v, prec));
            let psi = schrodinger_superposition(&[(a(2), Real::one(prec)), (a(1), Real::from_f64(-0.5, prec))], &params)?;
            classical_madelung_limit(&psi, &params, &limit_grid(prec))
        })
        .collect::<Result<Vec<_>, _>>();
    let scaling_params = json!({ "epsilon": ["1e-4", "1e-5", "1e-6"], "psi": "2ψ_{p=1} + ψ_{p=-1/2}" });
    let cont = "continuity residual ∝ ε = q - 1";
    let euler = "v_t + v v_x - ((ħ²/2m²)(√ρ)_xx/√ρ)_x ∝ ε = q - 1";
    match reports {
        Err(e) => {
            out.push(CheckResult::errored("limit-continuity-scaling", cont, scaling_params.clone(), &e));
            out.push(CheckResult::errored("limit-euler-scaling", euler, scaling_params, e));
        }
        Ok(reports) => {
            for (name, formula, values) in [
                ("limit-continuity-scaling", cont, reports.iter().map(|r| r.continuity.max_abs_f64()).collect::<Vec<_>>()),
                ("limit-euler-scaling", euler, reports.iter().map(|r| r.euler.max_abs_f64()).collect()),
            ] {
                let s = slopes(&values);
                let worst = s.iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max);
                out.push(
                    CheckResult::residual(name, formula, scaling_params.clone(), worst, 0.1)
                        .with_detail(format!(
                            "residuals [{}], log-log slopes {s:.4?}",
                            values.iter().map(|v| format!("{v:.3e}")).collect::<Vec<_>>().join(", ")
                        )),
                );
            }
        }
    }
    Ok(out)
}
