use thiserror::Error;

/// Errors raised by the q-calculus routines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum QError {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An exact operation was handed a base that is not a rational number.
    #[error("exact arithmetic needs a rational q, got a floating-point base")]
    NonRational,

    /// A bivariate polynomial was evaluated without its second variable.
    #[error("arity error: {0}")]
    Arity(String),

    /// Cancellation ate more than the allowed share of the working precision,
    /// even after raising it.
    #[error(
        "precision exhausted: {cancellation_digits} digits cancelled at {precision_bits} working bits"
    )]
    PrecisionExhausted {
        precision_bits: usize,
        cancellation_digits: u32,
    },

    /// The denominator of a ratio vanished (to working precision) near `x`.
    #[error("pole near x = {x} (t = {t}){}", bracket_note(.bracket))]
    Pole {
        x: f64,
        t: f64,
        bracket: Option<(f64, f64)>,
    },

    /// A grid point is not admissible for the requested operation.
    #[error("grid error: {0}")]
    Grid(String),

    /// Variant calibration did not single out exactly one equation form.
    #[error("calibration failed: {passing} variants passed\n{table}")]
    Calibration { passing: usize, table: String },

    /// A series did not reach its stopping criterion within the term budget.
    #[error("series did not converge within {0} terms")]
    NoConvergence(usize),
}

fn bracket_note(bracket: &Option<(f64, f64)>) -> String {
    match bracket {
        Some((lo, hi)) => format!(", bracketed by [{lo}, {hi}]"),
        None => String::new(),
    }
}

pub type Result<T, E = QError> = std::result::Result<T, E>;
