use serde::Serialize;
use serde_json::Value;

/// One verification check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check: String,
    /// The identity or equation being checked.
    pub paper_ref: String,
    pub params: Value,
    pub residual_max: Option<f64>,
    pub exact: Option<bool>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    /// An exact-arithmetic check.
    pub fn exact(check: &str, formula: &str, params: Value, ok: bool) -> Self {
        CheckResult {
            check: check.into(),
            paper_ref: formula.into(),
            params,
            residual_max: None,
            exact: Some(ok),
            pass: ok,
            variant: None,
            detail: None,
        }
    }

    /// A numerical check passing when `max <= tolerance`.
    pub fn residual(check: &str, formula: &str, mut params: Value, max: f64, tolerance: f64) -> Self {
        if let Value::Object(m) = &mut params {
            m.insert("tolerance".into(), tolerance.into());
        }
        CheckResult {
            check: check.into(),
            paper_ref: formula.into(),
            params,
            residual_max: Some(max),
            exact: None,
            pass: max.is_finite() && max <= tolerance,
            variant: None,
            detail: None,
        }
    }

    /// A check that could not run; it fails with the error text.
    pub fn errored(check: &str, formula: &str, params: Value, err: impl std::fmt::Display) -> Self {
        CheckResult {
            check: check.into(),
            paper_ref: formula.into(),
            params,
            residual_max: None,
            exact: None,
            pass: false,
            variant: None,
            detail: Some(format!("error: {err}")),
        }
    }

    pub fn with_variant(mut self, v: impl ToString) -> Self {
        self.variant = Some(v.to_string());
        self
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

/// Outcome of one `verify` run.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub config: Value,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(suite: &str, config: Value, seed: u64, checks: Vec<CheckResult>, notes: Vec<String>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Report { suite: suite.into(), config, seed, checks, pass, notes }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_csv_rows(&self) -> Vec<Vec<String>> {
        self.checks
            .iter()
            .map(|c| {
                vec![
                    c.check.clone(),
                    c.paper_ref.clone(),
                    c.residual_max.map(|r| format!("{r:e}")).unwrap_or_default(),
                    c.exact.map(|e| e.to_string()).unwrap_or_default(),
                    c.pass.to_string(),
                    c.variant.clone().unwrap_or_default(),
                ]
            })
            .collect()
    }
}

pub const CSV_HEADER: [&str; 6] = ["check", "paper_ref", "residual_max", "exact", "pass", "variant"];
