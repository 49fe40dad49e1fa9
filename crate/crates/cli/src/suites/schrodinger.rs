use qcalc_core::qburgers::canonical_variant;
use qcalc_core::qcore::rat;
use qcalc_core::qheat::heat_residual;
use qcalc_core::qschrodinger::{
    canonical_madelung_variant, complex_cole_hopf, hs_generating_check, hs_reading_select, madelung_calibration_table,
    madelung_residual, schrodinger_plane_wave, schrodinger_superposition, two_fluid_split_check, HsReading,
};
use qcalc_core::{Complex, Real, Scalar};
use qcalc_core::qcore::Field;
use serde_json::json;

use super::heat::square_grid;
use super::Outcome;
use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::CheckResult;

pub(super) fn suite(config: &RunConfig) -> Result<Outcome, CliError> {
    let params = config.quantum()?;
    let prec = config.precision_bits;
    let mut out = Outcome::default();
    let base = json!({ "q": config.q_text, "hbar": config.hbar.to_string(), "mass": config.mass.to_string() });
    let with = |extra: serde_json::Value| {
        let mut v = base.clone();
        if let (Some(m), serde_json::Value::Object(e)) = (v.as_object_mut(), extra) {
            m.extend(e);
        }
        v
    };

    let hs = "(∂_t - (iħ/2m) D²) H^(s)_N(x, t) = 0, H^(s)_N = Σ_k (iħt/2m)^k [N]! x^(N-2k) / (den_k)";
    out.attempt("schrodinger-hs-polynomial-residual", hs, with(json!({ "N_max": 15 })), |p| {
        let sel = hs_reading_select(15, &params)?;
        let winners = sel.winners();
        let detail = sel
            .outcomes
            .iter()
            .map(|(r, f)| match f {
                None => format!("den_k = {r}: zero residual for all N"),
                Some((n, why)) => format!("den_k = {r}: fails at N = {n} ({why})"),
            })
            .collect::<Vec<_>>()
            .join("; ");
        Ok(CheckResult::exact("schrodinger-hs-polynomial-residual", hs, p, winners == [HsReading::Factorial])
            .with_variant(winners.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" | "))
            .with_detail(detail))
    });
    let gen = "e^(-ip²t/2mħ) e_q(ipx/ħ) = Σ_N (i/ħ)^N p^N H^(s)_N / [N]!";
    out.attempt("schrodinger-generating-function", gen, with(json!({ "N_max": 10 })), |p| {
        let mismatch = hs_generating_check(10, &params)?;
        let c = CheckResult::exact("schrodinger-generating-function", gen, p, mismatch.is_none());
        Ok(match mismatch {
            Some(n) => c.with_detail(format!("first mismatch at N = {n}")),
            None => c,
        })
    });

    let grid = square_grid(5, prec);
    let momenta = [rat(1, 1), rat(-1, 1), rat(5, 2)];
    let wave = "(∂_t - (iħ/2m) D²) e^(-ip²t/2mħ) e_q(ipx/ħ) = 0";
    out.attempt("schrodinger-plane-wave-residual", wave, with(json!({ "p": ["1", "-1", "5/2"], "grid": "5x5", "precision_bits": prec })), |p| {
        let mut worst = 0.0f64;
        for m in &momenta {
            let psi = schrodinger_plane_wave(&Real::from_rational(m, prec), &params);
            worst = worst.max(heat_residual(&psi, &grid, &params.q, &params.nu(prec))?.max_abs_f64());
        }
        Ok(CheckResult::residual("schrodinger-plane-wave-residual", wave, p, worst, config.tol(1e-30)))
    });
    let ch = "u = -(iħ/m) Dψ/ψ = p/m for a plane wave";
    out.attempt("schrodinger-plane-wave-velocity", ch, with(json!({ "p": ["1", "-1", "5/2"], "grid": "5x5", "precision_bits": prec })), |p| {
        let mut worst = 0.0f64;
        for m in &momenta {
            let psi = schrodinger_plane_wave(&Real::from_rational(m, prec), &params);
            let u = complex_cole_hopf(&psi, &params);
            let expect = Complex::from_real(Real::from_rational(&(m.clone() / &params.mass), prec));
            for (x, t) in &grid {
                worst = worst.max((u.eval(x, t)? - &expect).modulus().to_f64());
            }
        }
        Ok(CheckResult::residual("schrodinger-plane-wave-velocity", ch, p, worst, config.tol(1e-30)))
    });

    let madelung = "iħ u_t + (ħ²/2m) D²u = (iħ/2) u(1-M)Du - (iħ/2) D(u(qx)u) + (m/2)[u(q²x) - u] u(qx) u";
    let burgers = canonical_variant()?;
    match madelung_calibration_table(&params) {
        Err(e) => out.push(CheckResult::errored("madelung-variant-calibration", madelung, with(json!({ "precision_bits": 512 })), e)),
        Ok(table) => {
            let passing = table.passing();
            let ok = passing.len() == 1;
            let mut c = CheckResult::exact("madelung-variant-calibration", madelung, with(json!({ "precision_bits": 512 })), ok)
                .with_variant(passing.first().map_or("none".to_string(), |v| v.to_string()))
                .with_detail(table.to_string());
            if ok && passing[0] != burgers {
                c = c.with_detail(format!("{}reading differs from the q-Burgers calibration ({burgers})", table));
            }
            out.push(c);
        }
    }
    if let Ok(v) = canonical_madelung_variant() {
        out.note(if v == burgers {
            format!("the Madelung and q-Burgers calibrations select the same reading ({v})")
        } else {
            format!("the Madelung reading {v} differs from the q-Burgers reading {burgers}")
        });
    }

    let hp = 512;
    let pair_grid = square_grid(5, hp);
    let one = Complex::one(hp);
    let pair_params = with(json!({ "psi": "ψ_{p=1} + ψ_{p=-1}", "grid": "5x5", "precision_bits": hp }));
    out.attempt("madelung-pair-residual", madelung, pair_params.clone(), |p| {
        let psi = schrodinger_superposition(&[(one.clone(), Real::one(hp)), (one.clone(), -Real::one(hp))], &params)?;
        let u = complex_cole_hopf(&psi, &params);
        let r = madelung_residual(&u, &pair_grid, &params, None)?;
        Ok(CheckResult::residual("madelung-pair-residual", madelung, p, r.max_abs_f64(), config.tol(1e-15))
            .with_variant(r.variant.map(|v| v.to_string()).unwrap_or_default()))
    });
    let split = "real and imaginary parts of the Madelung equation in u₁ = Re u, u₂ = Im u";
    out.attempt("madelung-two-fluid-split", split, pair_params, |p| {
        let psi = schrodinger_superposition(&[(one.clone(), Real::one(hp)), (one.clone(), -Real::one(hp))], &params)?;
        let u = complex_cole_hopf(&psi, &params);
        let s = two_fluid_split_check(&u, &pair_grid, &params)?;
        Ok(CheckResult::residual("madelung-two-fluid-split", split, p, s.mismatch_f64(), config.tol(1e-18)).with_detail(
            format!(
                "max |real-part residual| {:.3e}, max |imaginary-part residual| {:.3e}",
                s.real_part.max_abs_f64(),
                s.imag_part.max_abs_f64()
            ),
        ))
    });
    Ok(out)
}
