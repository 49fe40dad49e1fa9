//! Exact and high-precision foundations: the base q, q-numbers, polynomials
//! and the Jackson derivative.

mod base;
mod calculus;
mod poly;
mod ratio;
mod real;

pub use base::{q_factorial, q_number, q_number_real, QBase, QTable};
pub use calculus::{
    cancellation_digits, derivative_fd, dilate, fd_step, poly_eval, q_derivative_fn, q_derivative_poly,
    q_leibniz_holds, q_second_derivative_fn, second_derivative_fd, Field, FnField, PolyArg, QDerivative, QPoly,
};
pub use poly::{BiPoly, Poly};
pub use ratio::{parse_rational, rat, Embed, GaussRational, Ring};
pub use real::{bits_to_digits, Complex, Real, Scalar, DEFAULT_PRECISION, MIN_PRECISION};
