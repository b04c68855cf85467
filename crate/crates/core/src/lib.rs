//! Combinatorial expansion formulas for cluster monomials of type-A cluster
//! algebras.
//!
//! Every model computes the same Laurent polynomial `x[a]` for a vector `a`
//! in the set of realizable d-vectors, and each is checked against the
//! others and against brute-force seed mutation:
//!
//! * [`formulas`]: compatible sequences and compatible collections on
//!   maximal Dyck paths, plus the compact linear variant,
//! * [`snake`]: perfect matchings of snake diagrams,
//! * [`tpath`]: T-paths in a triangulated polygon,
//! * [`scattering`]: broken lines in the cluster scattering diagram,
//! * [`engine`]: seed mutation, the reference oracle.
//!
//! The crate is `no_std` with `alloc`; the `std` feature only adds
//! `std::error::Error` for [`Error`].
#![cfg_attr(not(feature = "std"), no_std)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod engine;
pub mod error;
pub mod formulas;
pub mod geometry;
pub mod laurent;
pub mod quiver;
pub mod scattering;
pub mod snake;
pub mod tpath;
mod twosat;

pub use error::{Error, Result};
pub use laurent::{Coeff, LaurentPoly, Monomial, Var};
pub use quiver::{LinearExtension, LinearSubquiver, Quiver, Site, Vertex};
