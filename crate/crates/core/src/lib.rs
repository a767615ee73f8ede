//! Exact algebraic models for the mapping class groups of `#_r S^p x S^p`,
//! `p = 3, 7`.
//!
//! The crate is layered bottom-up:
//!
//! - [`symplectic`]: the hyperbolic form on `Z^{2r}`, `Sp(2r, Z)` and the
//!   right action on covectors `H*_m`.
//! - [`bits`]: mod-2 reductions packed into machine words.
//! - [`quadratic`]: quadratic refinements, Arf invariant, orbit enumeration.
//! - [`cocycle`]: coboundaries, principal cocycles `s(psi)`, coboundary search.
//! - [`jacobi`]: the Jacobi groups `Gamma(phi, C)`, `Gamma(psi, C)` and the
//!   splitting verdict.
//! - [`mcg`]: smooth and homotopy models, Dehn twists, Pontrjagin coefficients.
//! - [`verify`] and [`cli`]: the property-suite runner and the document
//!   formats behind the `mcg` command-line tool.

pub mod bits;
pub mod cli;
pub mod cocycle;
pub mod error;
pub mod jacobi;
pub mod mcg;
pub mod quadratic;
pub mod sample;
pub mod symplectic;
pub mod verify;

pub use error::{Error, Result};
