//! q-deformed calculus: the Jackson exponential, q-Hermite polynomials, and
//! exact solutions of the q-heat, q-Burgers and q-Schrödinger equations.

pub mod error;
pub mod qburgers;
pub mod qcore;
pub mod qheat;
pub mod qhermite;
pub mod qschrodinger;
pub mod qspecial;

pub use error::{QError, Result};
pub use qcore::{q_factorial, q_number, Complex, Poly, QBase, Real, Scalar};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/q-calculus.md")]
    mod q_calculus {}
    #[doc = include_str!("../../../book/src/hermite.md")]
    mod hermite {}
    #[doc = include_str!("../../../book/src/heat.md")]
    mod heat {}
    #[doc = include_str!("../../../book/src/burgers.md")]
    mod burgers {}
    #[doc = include_str!("../../../book/src/schrodinger.md")]
    mod schrodinger {}
}
