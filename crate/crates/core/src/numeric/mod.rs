//! Exact arithmetic: big rationals, quadratic numbers, and integer helpers.

pub mod arith;
mod quad;
mod rational;

pub use arith::{is_prime, isqrt, isqrt_u64, squarefree_decompose};
pub use quad::QuadNumber;
pub use rational::Rational;
