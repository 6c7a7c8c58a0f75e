//! Sharp Korneichuk–Stechkin, Ostrowski and Landau type bounds, optimal
//! recovery on Hölder-type classes of L-space valued functions, and the
//! brute-force oracles that check all of them numerically.
//!
//! Every closed-form quantity is computed exactly from the primitive of the
//! modulus of continuity; the only discretization error in the crate comes
//! from representing class members on a uniform grid, and it is controlled by
//! [`gridfn::grid_tolerance`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod gridfn;
pub mod kscore;
pub mod landau;
pub mod lspace;
pub mod modulus;
pub mod oracle;
pub mod ostrowski;
pub mod pl;
pub mod recovery;

pub use error::{Error, Result};
pub use gridfn::GridFunction;
pub use lspace::{Element, Model, SpaceDescriptor};
pub use modulus::Modulus;
