//! Generalized hyperderivative Reed-Solomon (GHRS) codes over finite fields,
//! measured in the Niederreiter-Rosenbloom-Tsfasman (NRT) poset metric.
//!
//! The crate is organised bottom-up:
//!
//! - [`field`]: GF(p^e) arithmetic and binomials modulo p.
//! - [`poly`]: polynomials, hyperderivatives, Taylor expansion, vanishing order.
//! - [`matspace`]: dense matrices, elimination, null spaces, NRT weights.
//! - [`ghrs`]: the evaluation map, generator and parity-check matrices, MDS checks.
//! - [`interp`]: the hyperderivative Hermite interpolation basis and the dual multiplier.
//! - [`ldpc`]: sparsity bounds, LDPC predicates, Tanner graphs and alist export.
//! - [`qc`]: quasi-cyclic GHRS construction and verification.
//! - [`cli`]: the command-line front end used by the `ghrs` binary.

pub mod cli;
pub mod error;
pub mod field;
pub mod ghrs;
pub mod interp;
pub mod ldpc;
pub mod matspace;
pub mod poly;
pub mod qc;

pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use ghrs::GhrsCode;
pub use matspace::{Matrix, NrtWeight, VecOrder};
pub use poly::Polynomial;
