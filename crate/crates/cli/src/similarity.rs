use dashu::rational::RBig;
use qcalc_core::qburgers::{regularity_scan, self_similarity_metric, ScanGrid, ShockSpec};
use qcalc_core::qcore::parse_rational;
use qcalc_core::{QError, Real};
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::output::{csv_table, write_atomic};

/// Arguments of `qcalc similarity`.
#[derive(Clone, Debug)]
pub struct SimilarityArgs {
    pub k: Vec<String>,
    pub offset: String,
    pub t: String,
    pub window: (f64, f64),
    pub m: u32,
    pub samples: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimilarityOutput {
    pub metric: f64,
    pub k: Vec<String>,
    pub offset: String,
    pub t: String,
    pub window: (f64, f64),
    pub m: u32,
    pub samples: usize,
    /// `(x, u, x q^m, u(x q^m))` per sample.
    #[serde(skip)]
    pub profile: Vec<(f64, f64, f64, f64)>,
}

fn number(name: &str, s: &str) -> Result<RBig, CliError> {
    parse_rational(s).map_err(|_| CliError::Usage(format!("--{name}: cannot parse '{s}' as a number")))
}

/// Parses `lo,hi`.
pub fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(',').ok_or("expected lo,hi")?;
    let lo: f64 = lo.trim().parse().map_err(|_| format!("bad lower bound '{lo}'"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| format!("bad upper bound '{hi}'"))?;
    Ok((lo, hi))
}

pub fn cmd_similarity(args: &SimilarityArgs, config: &RunConfig) -> Result<SimilarityOutput, CliError> {
    let prec = config.precision_bits;
    let real = |r: &RBig| Real::from_rational(r, prec);
    let ks = args.k.iter().map(|k| number("k", k).map(|k| (real(&k), Real::one(prec)))).collect::<Result<Vec<_>, _>>()?;
    let offset = real(&number("offset", &args.offset)?);
    let t = real(&number("t", &args.t)?);
    let spec = ShockSpec::new(offset, ks, &config.q, config.nu_real())?;
    let (lo, hi) = args.window;
    if lo > 0.0 && hi > lo {
        let tf = t.to_f64();
        let reach = hi * config.q.to_f64().powi(args.m as i32);
        let grid = ScanGrid {
            negative: false,
            ..ScanGrid::symmetric(lo, reach, 100.max(args.samples), (tf, tf), 1)
        };
        if let Some(b) = regularity_scan(&spec.heat_solution()?, &grid)?.first() {
            return Err(QError::Domain(format!("pole in window: φ changes sign in x ∈ [{:e}, {:e}]", b.x.0, b.x.1)).into());
        }
    }
    let u = spec.velocity()?;
    let (metric, a, b) = self_similarity_metric(&u, &config.q, &t, args.window, args.m, args.samples)?;
    Ok(SimilarityOutput {
        metric,
        k: args.k.clone(),
        offset: args.offset.clone(),
        t: args.t.clone(),
        window: args.window,
        m: args.m,
        samples: args.samples,
        profile: a.iter().zip(&b).map(|(p, r)| (p.0, p.1, r.0, r.1)).collect(),
    })
}

impl SimilarityOutput {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
            Format::Csv => csv_table(&["metric", "m", "samples"], &[vec![
                format!("{:e}", self.metric),
                self.m.to_string(),
                self.samples.to_string(),
            ]]),
        }
    }

    pub fn dump(&self, path: &std::path::Path) -> Result<(), CliError> {
        let rows: Vec<Vec<String>> = self
            .profile
            .iter()
            .map(|(x, u, xs, us)| vec![format!("{x:e}"), format!("{u:e}"), format!("{xs:e}"), format!("{us:e}")])
            .collect();
        write_atomic(path, csv_table(&["x", "u", "x_scaled", "u_scaled"], &rows)?.as_bytes())
    }
}
