//! Exact arithmetic in F = ℚ(t₁,…,t_k).

pub mod base;
pub mod gcd;
pub mod parse;
pub mod poly;
pub mod rational;

pub use base::{coprime_base, AtomId, AtomValue, CoprimeBase, LegFactors, Powers};
pub use parse::{parse_polynomial, parse_rational_function};
pub use poly::{default_names, IntPoly, Monomial, Polynomial};
pub use rational::{normalize, RationalFunction};
