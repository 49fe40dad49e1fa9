//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

use std::process::Command;
use std::time::Instant;

use dashu::rational::RBig;
use qcalc::{run_suite, Report, RunConfig, Suite};
use qcalc_core::qburgers::{calibration_table, FigureId};
use qcalc_core::qcore::{parse_rational, rat};
use qcalc_core::qspecial::{tanh_q, zero_closed_form, zeros_of_eq};
use qcalc_core::{QBase, Real};

type Verdict = Result<(bool, String), String>;
type Criterion = (&'static str, fn() -> Verdict);

const BASES: [&str; 3] = ["3/2", "2", "10"];

fn config(q: &str, nu: &str) -> RunConfig {
    RunConfig::new(q, nu, "1", "1", 256, None, None, 0).expect("valid config")
}

fn suite(s: Suite, q: &str, nu: &str, n_max: Option<usize>) -> Result<Report, String> {
    run_suite(s, &config(q, nu), n_max).map_err(|e| e.to_string())
}

/// Every named check must be present and passing.
fn require(report: &Report, names: &[&str]) -> (bool, Vec<String>) {
    let mut bad = Vec::new();
    for name in names {
        match report.checks.iter().find(|c| c.check == *name) {
            Some(c) if c.pass => {}
            Some(c) => bad.push(format!("{name} [{}]", c.detail.clone().unwrap_or_default())),
            None => bad.push(format!("{name} missing")),
        }
    }
    (bad.is_empty(), bad)
}

fn residual(report: &Report, name: &str) -> f64 {
    report.checks.iter().find(|c| c.check == name).and_then(|c| c.residual_max).unwrap_or(f64::NAN)
}

fn per_base(s: Suite, n_max: usize, names: &[&str]) -> Verdict {
    let mut bad = Vec::new();
    for q in BASES {
        let (ok, why) = require(&suite(s, q, "1", Some(n_max))?, names);
        if !ok {
            bad.push(format!("q={q}: {}", why.join(", ")));
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { format!("q in {BASES:?}") } else { bad.join("; ") }))
}

fn route_equivalence() -> Verdict {
    let (h, hd) = per_base(
        Suite::HermiteIdentities,
        30,
        &[
            "hermite-n-term-recurrence-vs-explicit",
            "hermite-operator-product-vs-explicit",
            "hermite-heat-operator-vs-explicit",
        ],
    )?;
    let (k, kd) = per_base(
        Suite::KdfIdentities,
        20,
        &["kdf-n-term-recurrence-vs-explicit", "kdf-heat-operator-vs-explicit", "kdf-generating-function"],
    )?;
    Ok((h && k, format!("hermite N<=30 {hd}; kdf N<=20 {kd}")))
}

fn qdiff_equation() -> Verdict {
    per_base(Suite::HermiteIdentities, 20, &["hermite-q-difference-equation"])
}

fn heat_solutions() -> Verdict {
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for q in BASES {
        let r = suite(Suite::Heat, q, "1", Some(20))?;
        let (ok, why) = require(&r, &["heat-kdf-polynomial-residual", "heat-plane-wave-residual"]);
        let wave = residual(&r, "heat-plane-wave-residual");
        worst = worst.max(wave);
        let small = wave <= 1e-30;
        if !ok || !small {
            bad.push(format!("q={q}: {} plane wave {wave:e}", why.join(", ")));
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { format!("plane-wave max {worst:e} <= 1e-30") } else { bad.join("; ") }))
}

fn propositions() -> Verdict {
    per_base(Suite::Heat, 30, &["heat-operator-gaussian", "heat-operator-hermite", "heat-hermite-series"])
}

fn calibration() -> Verdict {
    let mut winners = Vec::new();
    for q in BASES {
        for nu in ["1/2", "1"] {
            let table = calibration_table(&QBase::parse(q).unwrap(), &parse_rational(nu).unwrap())
                .map_err(|e| e.to_string())?;
            winners.push((q, nu, table.passing()));
        }
    }
    let first = winners[0].2.clone();
    let ok = first.len() == 1 && winners.iter().all(|(_, _, w)| *w == first);
    let detail = winners
        .iter()
        .map(|(q, nu, w)| format!("q={q} nu={nu}: {}", w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("|")))
        .collect::<Vec<_>>()
        .join("; ");
    Ok((ok, detail))
}

fn zero_lattice() -> Verdict {
    let mut worst = 0.0f64;
    for q in ["2", "10"] {
        let base = QBase::parse(q).unwrap();
        let found = zeros_of_eq(&base, 10, 256).map_err(|e| e.to_string())?;
        for (n, z) in found.iter().enumerate() {
            let exact = zero_closed_form(&base, n, 256).map_err(|e| e.to_string())?;
            worst = worst.max(((z.clone() - &exact).abs() / &exact.abs()).to_f64());
        }
    }
    Ok((worst <= 1e-20, format!("max relative error {worst:e}, n <= 10, q in [2, 10]")))
}

fn regularity() -> Verdict {
    let r = suite(Suite::Burgers, "10", "1", None)?;
    let (ok, why) = require(&r, &["regularity-offset-shock", "regularity-multi-shock", "regularity-single-wave"]);
    let single = r.checks.iter().find(|c| c.check == "regularity-single-wave").and_then(|c| c.detail.clone());
    Ok((ok, if ok { single.unwrap_or_default() } else { why.join(", ") }))
}

fn asymptotics() -> Verdict {
    let r = suite(Suite::Burgers, "10", "1", None)?;
    let (ok, why) = require(&r, &["shock-decay-ratio", "shock-late-time-limit"]);
    Ok((
        ok,
        format!(
            "ratio rel. error {:e} (<= 1e-2), late-time gap {:e} (<= 1e-3) {}",
            residual(&r, "shock-decay-ratio"),
            residual(&r, "shock-late-time-limit"),
            why.join(", ")
        ),
    ))
}

fn figure_bytes(id: FigureId) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_qcalc"))
        .args(["figure", &id.to_string()])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{id}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn parse_figure(bytes: &[u8]) -> Result<Vec<(f64, f64)>, String> {
    let text = std::str::from_utf8(bytes).map_err(|e| e.to_string())?;
    let mut lines = text.lines();
    if lines.next() != Some("x,u") {
        return Err("missing x,u header".into());
    }
    lines
        .map(|l| {
            let (x, u) = l.split_once(',').ok_or("bad row")?;
            Ok((x.parse().map_err(|_| "bad x")?, u.parse().map_err(|_| "bad u")?))
        })
        .collect::<Result<_, &str>>()
        .map_err(str::to_string)
}

fn figures() -> Verdict {
    let q = QBase::rational(10, 1).unwrap();
    let tanh = |x: f64, k: i64| -> f64 {
        let arg = Real::from_rational(&(RBig::try_from(x).expect("finite") * rat(k, 1)), 128);
        tanh_q(&arg, &q).expect("cosh_q has no real zeros").to_f64()
    };
    let mut data = Vec::new();
    let mut bad = Vec::new();
    for id in FigureId::all() {
        let a = figure_bytes(id)?;
        if figure_bytes(id)? != a {
            bad.push(format!("{id} not byte-identical"));
        }
        let rows = parse_figure(&a)?;
        if rows.len() != id.params().points {
            bad.push(format!("{id}: {} rows", rows.len()));
        }
        data.push(rows);
    }
    let (f1, f2, f3, f6) = (&data[0], &data[1], &data[2], &data[5]);
    if !f2.iter().any(|&(x, u)| x == 0.0 && u == 0.0) {
        bad.push("fig2 has no u(0) = 0 row".into());
    }
    let slack = 1e-12;
    let ordered = f1.iter().zip(f2).zip(f3).all(|((a, b), c)| {
        a.1.abs() <= b.1.abs() * (1.0 + slack) + 1e-300 && b.1.abs() <= c.1.abs() * (1.0 + slack) + 1e-300
    });
    if !ordered {
        bad.push("|u| not increasing from fig1 to fig3".into());
    }
    let max = |d: &[(f64, f64)]| d.iter().map(|p| p.1.abs()).fold(0.0, f64::max);
    let grows = max(f1) < max(f3);
    if !grows {
        bad.push("max|u| fig1 not below fig3".into());
    }
    let envelope = f3.iter().all(|&(x, u)| u.abs() <= 2.0 * tanh(x, 1).abs() * (1.0 + slack) + 1e-300);
    if !envelope {
        bad.push("fig3 exceeds 2 nu |tanh_q(x)|".into());
    }
    let late = f6.iter().map(|&(x, u)| (u + 4.0 * tanh(x, 2)).abs()).fold(0.0, f64::max);
    let close = late <= 1e-6;
    if !close {
        bad.push(format!("fig6 vs -4 nu tanh_q(2x): {late:e}"));
    }
    Ok((
        bad.is_empty(),
        if bad.is_empty() {
            format!("6 figures, byte-identical reruns, max|u| fig1 {:.4} < fig3 {:.4}, fig6 gap {late:e}", max(f1), max(f3))
        } else {
            bad.join("; ")
        },
    ))
}

fn schrodinger() -> Verdict {
    let names = [
        "schrodinger-hs-polynomial-residual",
        "schrodinger-plane-wave-velocity",
        "madelung-variant-calibration",
        "madelung-pair-residual",
        "madelung-two-fluid-split",
    ];
    let r = suite(Suite::Schrodinger, "10", "1", None)?;
    let (ok, why) = require(&r, &names);
    let velocity = residual(&r, "schrodinger-plane-wave-velocity");
    let reading = r.checks.iter().find(|c| c.check == names[0]).and_then(|c| c.variant.clone()).unwrap_or_default();
    let ok = ok && velocity <= 1e-30;
    Ok((
        ok,
        format!(
            "H^(s) reading {reading}; velocity {velocity:e}; Madelung pair {:e}; split {:e} {}",
            residual(&r, "madelung-pair-residual"),
            residual(&r, "madelung-two-fluid-split"),
            why.join(", ")
        ),
    ))
}

fn classical_limit() -> Verdict {
    let r = suite(Suite::ClassicalLimit, "1.000001", "1", None)?;
    let (ok, why) = require(&r, &["limit-hermite-coefficients", "limit-continuity-scaling", "limit-euler-scaling"]);
    Ok((
        ok,
        format!(
            "hermite rel. {:e}; |slope-1| continuity {:e}, euler {:e} {}",
            residual(&r, "limit-hermite-coefficients"),
            residual(&r, "limit-continuity-scaling"),
            residual(&r, "limit-euler-scaling"),
            why.join(", ")
        ),
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("exact route equivalence", route_equivalence),
        ("q-difference equation", qdiff_equation),
        ("q-heat polynomial and plane-wave solutions", heat_solutions),
        ("evolution-operator identities", propositions),
        ("Cole-Hopf variant calibration", calibration),
        ("zeros of e_q", zero_lattice),
        ("shock regularity", regularity),
        ("shock asymptotics", asymptotics),
        ("figure reproduction", figures),
        ("q-Schrodinger", schrodinger),
        ("classical limits", classical_limit),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {name} ({:.1}s) {detail}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
