//! Exact symbolic computation with connections `A(z) dlog z` on the formal
//! punctured disc, for the matrix groups GL_n and SL_n.
//!
//! Everything is computed over cyclotomic fields `Q(zeta_N)` with
//! arbitrary-precision rational coordinates; there is no floating point
//! anywhere. The crate provides:
//!
//! - [`scalar`]: arithmetic in `Q(zeta_N)` with canonical (minimal-conductor)
//!   representations,
//! - [`series`]: Laurent polynomials and truncated Laurent series in a
//!   ramified variable `z^(1/m)`, with the derivation `z d/dz`, the
//!   substitution `z -> z^m`, and the Galois action of the cyclic covering
//!   group,
//! - [`linalg`]: exact dense matrices, Jordan normal forms, Jordan
//!   decompositions and ad-eigenvalue analysis,
//! - [`connection`]: connections `A dlog z`, the gauge action
//!   `g[A] = (g A g^-1 + z d/dz(g) g^-1) dlog z`, pull-backs along coverings
//!   and descent,
//! - [`align`]: reduction of first-kind connections to aligned form,
//! - [`reduce`]: reduction to standard form `X dlog z` and zero standard form
//!   via explicit cocharacters of the diagonal torus,
//! - [`centralizer`]: the filtration `E_lambda^i`, the torus and Weyl group of
//!   a centralizer `Z(X)`, and semisimple-class canonicalization,
//! - [`relatives`]: Galois cocycles and the explicit construction of the
//!   relatives of `X dlog z` over SL_n,
//! - [`classify`]: decision procedures for gauge equivalence, relatedness,
//!   and the decomposition into indecomposable Fuchsian D-module classes.
//!
//! The crate is `no_std`-compatible (with `alloc`); disable the default
//! `std` feature for embedded or kernel use.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod align;
pub mod centralizer;
pub mod classify;
pub mod connection;
pub mod error;
pub mod linalg;
pub mod reduce;
pub mod relatives;
pub mod scalar;
pub mod series;

pub use connection::{Connection, GaugeMap, Shape};
pub use error::{Error, Result};
pub use linalg::{JordanForm, Matrix};
pub use scalar::{Cyclotomic, Rational};
pub use series::{Exponent, Series};

/// Which matrix group a connection, gauge map, or Jordan datum belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GroupTag {
    Gl,
    Sl,
}
