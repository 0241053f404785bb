//! Finite abelian p-groups and their extensions.
//!
//! An extension `0 -> G_lambda -> E -> G_mu -> 0` of abelian p-groups is
//! described by a coefficient matrix `A` recording how `p^{mu_j}` times a
//! lift of the j-th quotient generator lands in the subgroup. This crate
//! builds the presentation matrix of the middle group `E`, reads off its
//! type with a Smith normal form, and decides when two coefficient
//! matrices describe equivalent extensions: `A1 ~ A2` iff there are
//! automorphism matrices `F`, `G` with `F A1^T = A2^T G^` where `G^` is `G`
//! conjugated by `diag(p^mu)` and entry `(i, j)` is read modulo
//! `p^{min(lambda_i, mu_j)}`.
//!
//! The [`oracle`] module decides the same question by brute force on
//! explicit groups and is used to cross-check the matrix criterion.

pub mod abelian;
pub mod autgroup;
pub mod cli;
pub mod equivalence;
pub mod error;
pub mod exactmat;
pub mod extension;
pub mod json;
pub mod limits;
pub mod oracle;
pub mod parallel;
pub mod sweep;

pub use abelian::{ExplicitGroup, PGroupType};
pub use autgroup::AutMatrix;
pub use equivalence::{OrbitClassification, Witness};
pub use error::{Error, Result};
pub use exactmat::{IntMatrix, SnfResult};
pub use extension::ExtensionData;
pub use limits::Limits;
pub use oracle::ExplicitExtension;
pub use parallel::Execution;
