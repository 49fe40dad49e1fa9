use clap::ValueEnum;
use dashu::rational::RBig;
use qcalc_core::qcore::parse_rational;
use qcalc_core::qschrodinger::QuantumParams;
use qcalc_core::{QBase, Real};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Validated settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub q: QBase,
    pub q_text: String,
    pub nu: RBig,
    pub hbar: RBig,
    pub mass: RBig,
    pub precision_bits: usize,
    pub tolerance: Option<f64>,
    pub format: Option<Format>,
    pub seed: u64,
}

pub const MIN_PRECISION_BITS: usize = 64;

fn positive(name: &str, text: &str) -> Result<RBig, CliError> {
    let v = parse_rational(text).map_err(|_| CliError::Usage(format!("--{name}: cannot parse '{text}' as a number")))?;
    if v <= RBig::ZERO {
        return Err(CliError::Usage(format!("--{name} must be positive, got {text}")));
    }
    Ok(v)
}

impl RunConfig {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        q: &str,
        nu: &str,
        hbar: &str,
        mass: &str,
        precision_bits: usize,
        tolerance: Option<&str>,
        format: Option<Format>,
        seed: u64,
    ) -> Result<Self, CliError> {
        let q_value = QBase::parse(q).map_err(|e| CliError::Usage(format!("--q: {e}")))?;
        if precision_bits < MIN_PRECISION_BITS {
            return Err(CliError::Usage(format!(
                "--precision-bits must be at least {MIN_PRECISION_BITS}, got {precision_bits}"
            )));
        }
        let tolerance = match tolerance {
            None => None,
            Some(t) => {
                let v: f64 = t.trim().parse().map_err(|_| CliError::Usage(format!("--tolerance: cannot parse '{t}'")))?;
                if !(v > 0.0 && v.is_finite()) {
                    return Err(CliError::Usage(format!("--tolerance must be positive, got {t}")));
                }
                Some(v)
            }
        };
        Ok(RunConfig {
            q: q_value,
            q_text: q.trim().to_string(),
            nu: positive("nu", nu)?,
            hbar: positive("hbar", hbar)?,
            mass: positive("mass", mass)?,
            precision_bits,
            tolerance,
            format,
            seed,
        })
    }

    /// Defaults: `q = 2`, `ν = ħ = m = 1`, 256 bits, seed 0.
    pub fn with_q(q: &str) -> Result<Self, CliError> {
        Self::new(q, "1", "1", "1", 256, None, None, 0)
    }

    pub fn nu_real(&self) -> Real {
        Real::from_rational(&self.nu, self.precision_bits)
    }

    pub fn quantum(&self) -> Result<QuantumParams, CliError> {
        Ok(QuantumParams::new(self.hbar.clone(), self.mass.clone(), self.q.clone())?)
    }

    /// The user's tolerance if given, else `default`.
    pub fn tol(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }

    /// `q - 1` as a float; zero for the classical sentinel.
    pub fn q_minus_one(&self) -> f64 {
        if self.q.is_classical() {
            0.0
        } else {
            self.q.to_f64() - 1.0
        }
    }

    /// Deterministic generator for one consumer, derived from the seed.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    pub fn summary(&self) -> Value {
        json!({
            "q": self.q_text,
            "nu": self.nu.to_string(),
            "hbar": self.hbar.to_string(),
            "mass": self.mass.to_string(),
            "precision_bits": self.precision_bits,
            "tolerance": self.tolerance,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_values() {
        assert!(RunConfig::new("2", "1", "1", "1", 32, None, None, 0).is_err());
        assert!(RunConfig::new("0.5", "1", "1", "1", 128, None, None, 0).is_err());
        assert!(RunConfig::new("2", "-1", "1", "1", 128, None, None, 0).is_err());
        assert!(RunConfig::new("2", "1", "1", "1", 128, Some("0"), None, 0).is_err());
        assert!(RunConfig::new("2", "1", "1", "x", 128, None, None, 0).is_err());
        let c = RunConfig::new("1.000001", "1/2", "1", "1", 128, Some("1e-9"), None, 7).unwrap();
        assert!((c.q_minus_one() - 1e-6).abs() < 1e-15);
        assert_eq!(c.tol(1.0), 1e-9);
    }

    #[test]
    fn streams_are_reproducible() {
        use rand::Rng;
        let c = RunConfig::with_q("2").unwrap();
        let a: u64 = c.rng(3).gen();
        let b: u64 = c.rng(3).gen();
        let d: u64 = c.rng(4).gen();
        assert_eq!(a, b);
        assert_ne!(a, d);
    }
}
