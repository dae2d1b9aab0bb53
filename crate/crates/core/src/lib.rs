//! Exact computations of multigraded Ext and local cohomology for monomial ideals.
//!
//! The crate is organised bottom-up:
//!
//! - [`monomial`] and [`simplicial`]: exponent vectors, monomial ideals, bracket
//!   powers and the Stanley–Reisner dictionary;
//! - [`linalg`]: exact matrices, finite complexes and induced maps on cohomology;
//! - [`complexes`]: Taylor resolutions, their duals, Čech complexes, comparison
//!   maps, the base-change functor along `x_i ↦ x_i^{k_i}`, chambers and strands;
//! - [`engine`]: dimension tables for Ext, Tor and local cohomology, with
//!   Hochster's formula and local duality as independent oracles;
//! - [`lab`]: verdicts for the injectivity, purity and vanishing statements;
//! - [`corpus`]: exhaustive and seeded-random ideal corpora.

pub mod complexes;
pub mod corpus;
pub mod engine;
pub mod error;
pub mod lab;
pub mod linalg;
pub mod monomial;
pub mod simplicial;

pub use error::{Error, Result};
pub use linalg::{ExactMatrix, FieldSpec, FiniteChainMap, FiniteComplex};
pub use monomial::{Degree, Monomial, MonomialIdeal, PolynomialRingSpec};
pub use simplicial::SimplicialComplex;
