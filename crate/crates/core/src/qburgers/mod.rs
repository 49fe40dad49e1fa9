//! The q-Cole-Hopf transformation `u = -2ν D_xφ / φ`, the cubic q-Burgers
//! equation it linearizes, and the shock solutions built from superposed
//! plane waves.

mod cole_hopf;
mod equation;
mod figures;
mod shock;

pub use cole_hopf::ColeHopf;
pub use equation::{
    burgers_residual, calibration_table, canonical_variant, classical_burgers_residual, variant_calibrate, BurgersVariant,
    CalibrationReport, Grouping, TimeArg,
};
pub(crate) use equation::{calibration_grid, stencil, Stencil};
pub use figures::{figure_samples, FigureId, FigureParams};
pub use shock::{
    distinct_x_brackets, ivp_initial_profile, regularity_scan, self_similarity_metric, shock_multi, shock_offset,
    shock_single, InitialCandidate, IvpCheck, PoleBracket, Profile, ScanGrid, ShockSpec,
};
