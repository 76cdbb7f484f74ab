//! Exact scalar arithmetic: Gaussian rationals, polynomials over them, and
//! reduced rational functions together with the textual literal grammar.

pub mod gauss;
pub mod parse;
pub mod poly;
pub mod ratfunc;

pub use gauss::{rational_sqrt, GaussianRational};
pub use parse::{parse_gauss, parse_gauss_vector, parse_ratfunc};
pub use poly::Poly;
pub use ratfunc::{RatFunc, DEFAULT_POLE_TOLERANCE};
