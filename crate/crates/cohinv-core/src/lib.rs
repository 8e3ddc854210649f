//! Symbolic mod-2 Galois cohomology of rational function fields, with the
//! invariant calculus for exceptional-group torsors built on top of it.
//!
//! The layers, bottom up:
//!
//! - [`field`]: field descriptors `Q|R|C (sqrt ...)(x_1, ..., x_m)` and
//!   canonical square classes.
//! - [`milnor`]: cohomology classes as F2-sums of symbols — normal forms,
//!   cup products, residue decompositions, and an exact zero decision; plus
//!   local Hilbert symbols and a formal mod-3 companion.
//! - [`pfister`]: Pfister forms, their symbols, hyperbolicity, verified
//!   divisibility, and the Witt-class scaling behind the Killing-form
//!   comparison.
//! - [`groups`]: invariant-level octonion / Albert / E8 / Spin16 torsor
//!   models, the two-algebra construction, the degree-5 invariant, the
//!   Spin16 invariant basis, and the scripted proof replays.
//! - [`rootsys`]: integer verification of the D8 root-system data.
//! - [`embed`]: level-of-field tests and finite-subgroup embedding criteria.
//!
//! All values are immutable and all operations are pure functions, so
//! everything is safe to share across threads.  The crate is `no_std`
//! compatible (with `alloc`); the companion CLI crate carries IO, parsing,
//! and JSON rendering.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod embed;
mod error;
pub mod field;
pub mod groups;
pub mod milnor;
pub mod pfister;
pub mod rootsys;

pub use error::{Error, Result};
