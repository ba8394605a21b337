//! Fourier-Walsh analysis of generalized social welfare functions (GSWFs) on
//! three alternatives.
//!
//! A GSWF satisfying independence of irrelevant alternatives is a triple of
//! Boolean choice functions `(f, g, h)` deciding the pairs `(A,B)`, `(B,C)`
//! and `(C,A)`. The society's outcome is irrational exactly when
//! `f(x) = g(y) = h(z)` on the induced pairwise preference vectors. Under an
//! even product distribution `D(α, β, γ)` the probability of that event has a
//! closed spectral form:
//!
//! ```text
//! W = p1 p2 p3 + (1-p1)(1-p2)(1-p3)
//!     + <<f,g>>_{4α-1} + <<g,h>>_{4β-1} + <<h,f>>_{4γ-1}
//! ```
//!
//! where `<<u,v>>_δ = Σ_{S≠∅} û(S) v̂(S) δ^{|S|}`. This crate computes it
//! ([`rationality::w_formula`]), checks it against an exhaustive enumeration
//! of profiles ([`rationality::w_oracle`]) and a seeded Monte Carlo estimator,
//! and evaluates the surrounding bounds ([`theorems`]) and extremal searches
//! ([`search`]).
//!
//! Conventions: bit `i` of an input mask is voter `i+1`'s preference, and bit
//! `i` of a subset mask means voter `i+1 ∈ S`. Characters are the signed
//! Rademacher products `r_S(x) = Π_{i∈S} (2x_i − 1)`.

#![forbid(unsafe_code)]

pub mod bfn;
pub mod catalog;
pub mod curves;
pub mod dist;
mod error;
pub mod rationality;
pub mod search;
pub mod theorems;

pub use bfn::{BooleanFunction, PseudoSpectrum, WalshSpectrum};
pub use catalog::{Family, FamilySpec, Preset};
pub use dist::{EvenProductDistribution, Triple, TripleDistribution};
pub use error::{Error, Result};
pub use rationality::{Gswf, Method, WResult};
pub use search::{ClassFilter, ExtremalResult, Objective, Predicate};
pub use theorems::{BoundReport, Relation};

/// Largest supported voter count for truth tables and spectra.
pub const N_MAX: usize = 24;

/// Largest voter count accepted by the exhaustive profile oracle (6^n profiles).
pub const ORACLE_MAX: usize = 9;
