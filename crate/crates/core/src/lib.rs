//! Positive-map families on matrix algebras, the entanglement witnesses they induce,
//! and certificate-based detection experiments built on top of them.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`] — dense complex matrices, Hermitian eigendecomposition, singular
//!   values, Kronecker/partial operations, bipartite index conventions.
//! - [`maps`] — the map families themselves (reduction, trace, antisymmetric-conjugation
//!   families, the two-parameter interpolation, the quadratic-form presentation).
//! - [`choi`] — the map ↔ block-matrix correspondence, witness materialization, and
//!   trace pairings between states and maps.
//! - [`states`] — reference bipartite states, their symmetry conjugations, embeddings,
//!   positivity/partial-transposition checks, and Schmidt-rank certificates.
//! - [`detect`] — detection verdicts assembled from witness pairings plus state
//!   certificates, parameter-region scans, positivity falsifiers, and a projected
//!   search over states with positive partial transpose.
//! - [`selftest`] — the end-to-end checks the command-line `selftest` subcommand runs.

pub mod error;
pub mod linalg;
pub(crate) mod rng;
pub mod maps;
pub mod choi;
pub mod states;
pub mod detect;
pub mod selftest;

pub use error::{Error, Result};
pub use linalg::{
    c, cr, hermitian_eig, hs_inner, kron, partial_trace, partial_transpose, psd_inv_sqrt,
    singular_values, BipOp, CMat, Eig, Side, IM, ONE, ZERO,
};
