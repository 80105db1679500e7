//! Prime-field algebra for Rédei-polynomial arguments.
//!
//! The crate is `no_std` and only needs `alloc`. It contains:
//!
//! * [`field`]: canonical residues modulo a prime, k-th power residues and
//!   roots, multiplicative subgroups;
//! * [`poly`]: dense univariate polynomials over F_p and bivariate
//!   polynomials stored as polynomials in `x` with coefficients in F_p\[y\];
//! * [`redei`]: Rédei polynomial constructions, the auxiliary quotient of
//!   `x^p - x`, the lacunary coefficient profile and the derivative
//!   multiplicity check;
//! * [`congruence`]: exhaustive oracles for `a x ≡ ±y (mod p)`;
//! * [`pairs`]: congruent k-th power pairs and sums of two squares;
//! * [`directions`]: point sets in the affine plane, ratio sets, weighted
//!   sumsets and difference sets inside multiplicative subgroups.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod congruence;
pub mod directions;
mod error;
pub mod field;
pub mod pairs;
pub mod poly;
pub mod redei;

pub use error::{Error, Result};
pub use field::{FieldElement, PrimeModulus, Subgroup};
pub use poly::{BiPoly, UniPoly};
