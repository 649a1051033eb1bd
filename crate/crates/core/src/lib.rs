//! Exact engine for Grassmannian configuration complexes, the infinitesimal
//! polylogarithm groups β₂ᴰ and β₃ᴰ, and the maps between them.

pub mod coeff;
pub mod configuration;
pub mod context;
pub mod derivation;
pub mod error;
pub mod factored;
pub mod field;
pub mod groups;
pub mod morphisms;
pub mod permutation;
pub mod realization;
pub mod tensor;

pub use coeff::{Coeff, Sym};
pub use context::Context;
pub use derivation::Derivation;
pub use error::{Error, Result};
pub use factored::Factored;
pub use tensor::{Shape, Tensor};
pub use configuration::{ConfigSum, Configuration, MinorTable, Sampler};
pub use permutation::Perm;
pub use groups::{B2Element, BetaD, CathelineauElement, MidElement, Relator, RelatorKind, Weight};
