//! The q-heat equation `∂_t φ = ν D_x² φ`: plane waves and their
//! superpositions, Kampe-de Feriet polynomial solutions, the evolution
//! operator `e^(νt D²)` on polynomials and residual checks.

mod operator;
mod residual;
mod solution;

pub use operator::{
    evolution_apply, evolution_symbolic, hermite_series_transform, kdf_from_generating,
    polynomial_heat_residual, prop1_check,
};
pub use residual::{heat_residual, HeatField, ResidualReport};
pub use solution::{HeatSolution, SolutionKind};
