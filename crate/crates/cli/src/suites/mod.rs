//! Verification suites run by `qcalc verify`.

mod burgers;
mod heat;
mod hermite;
mod limit;
mod schrodinger;

use clap::ValueEnum;
use qcalc_core::QError;
use serde_json::Value;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::{CheckResult, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    HermiteIdentities,
    KdfIdentities,
    Heat,
    Burgers,
    Schrodinger,
    ClassicalLimit,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::HermiteIdentities => "hermite-identities",
            Suite::KdfIdentities => "kdf-identities",
            Suite::Heat => "heat",
            Suite::Burgers => "burgers",
            Suite::Schrodinger => "schrodinger",
            Suite::ClassicalLimit => "classical-limit",
            Suite::All => "all",
        }
    }

    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::HermiteIdentities,
                Suite::KdfIdentities,
                Suite::Heat,
                Suite::Burgers,
                Suite::Schrodinger,
                Suite::ClassicalLimit,
            ],
            s => vec![s],
        }
    }
}

/// Checks and free-form notes from one suite.
#[derive(Default)]
pub(crate) struct Outcome {
    pub checks: Vec<CheckResult>,
    pub notes: Vec<String>,
}

impl Outcome {
    pub fn push(&mut self, c: CheckResult) {
        self.checks.push(c);
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    /// Runs `f`, recording a failed check instead of propagating its error.
    pub fn attempt(&mut self, check: &str, formula: &str, params: Value, f: impl FnOnce(Value) -> Result<CheckResult, QError>) {
        let c = f(params.clone()).unwrap_or_else(|e| CheckResult::errored(check, formula, params, e));
        self.checks.push(c);
    }
}

/// Default order bound for the polynomial suites.
pub const DEFAULT_N_MAX: usize = 20;

pub fn run_suite(suite: Suite, config: &RunConfig, n_max: Option<usize>) -> Result<Report, CliError> {
    let n_max = n_max.unwrap_or(DEFAULT_N_MAX);
    let mut all = Outcome::default();
    for part in suite.parts() {
        let out = match part {
            Suite::HermiteIdentities => hermite::hermite_suite(config, n_max)?,
            Suite::KdfIdentities => hermite::kdf_suite(config, n_max)?,
            Suite::Heat => heat::suite(config, n_max)?,
            Suite::Burgers => burgers::suite(config)?,
            Suite::Schrodinger => schrodinger::suite(config)?,
            Suite::ClassicalLimit => limit::suite(config)?,
            Suite::All => unreachable!("expanded above"),
        };
        all.checks.extend(out.checks);
        all.notes.extend(out.notes);
    }
    Ok(Report::new(suite.name(), config.summary(), config.seed, all.checks, all.notes))
}
