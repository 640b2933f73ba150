//! Derivations of the rational group algebra `Q[G]` of a finitely presented
//! group, computed through additive characters on the groupoid of the
//! adjoint action.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, JSON and the
//! command-line tool live in the `gderiv` companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod character;
pub mod constraints;
pub mod derivation;
mod error;
pub mod group;
pub mod groupoid;
pub mod linalg;
pub mod text;
pub mod word;

pub use algebra::AlgebraElement;
pub use error::{Error, Result};
pub use group::{Ball, GroupCtx, Radius};
pub use word::{Gen, Letter, Word};

/// Exact coefficients and character values.
pub type Rational = num_rational::Ratio<i128>;
