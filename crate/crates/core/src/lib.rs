//! Exact-arithmetic toolkit for nonlocal Hamiltonian operators of
//! hydrodynamic type with flat metrics.
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: rational polynomials, matrices, jets, exact integration;
//! - [`wdvv`]: associativity equations and Frobenius structure constants;
//! - [`operators`]: Hamiltonian-property checks for constant and general forms;
//! - [`hierarchy`]: structural flows and the bi-Hamiltonian density tower;
//! - [`locality`]: locality of Hamiltonian systems and involution of integrals;
//! - [`frontend`]: expression parser, canonical printer, problem files, reports.
//!
//! Indices in the Rust API are zero-based. Anything rendered for people
//! (printed polynomials, report entries) uses one-based names `u1..uN`.

// Tensor code indexes several arrays with the same loop variable.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod frontend;
pub mod hierarchy;
pub mod locality;
pub mod operators;
pub mod report;
pub mod wdvv;
