//! Finite Coxeter groups, the weak order, Coxeter-sortable elements, and
//! Cambrian lattices, built for exhaustive verification at desk scale.
//!
//! The main entry points:
//!
//! - [`CoxeterMatrix`] and [`CoxeterSystem`]: build a finite group from its
//!   matrix and do exact element arithmetic.
//! - [`WeakOrderLattice`]: order tests, joins, meets, parabolic
//!   factorization, cover reflections, join-irreducibles.
//! - [`CoxeterElementContext`]: a Coxeter element as a word, with rotations
//!   and parabolic restrictions; sorting words and sortable elements.
//! - [`projections`]: the downward and upward projections onto sortable and
//!   antisortable elements, and the congruence they induce.
//! - [`congruence`]: a congruence engine for finite lattices (closure from
//!   generating pairs, join-irreducible congruences, the forcing order,
//!   Cambrian congruences, quotients).
//! - [`verify`]: the exhaustive property suite behind `cambrian verify`.

pub mod bits;
pub mod congruence;
mod error;
pub mod lattice;
pub mod matrix;
mod par;
pub mod projections;
pub mod sortable;
mod system;
pub mod verify;
pub mod weak_order;

pub use bits::{Bitset, GenSet};
pub use error::{Error, Result};
pub use matrix::CoxeterMatrix;
pub use sortable::{CoxeterElementContext, SortingWord};
pub use system::{CoxeterSystem, Element, Side, Word};
pub use weak_order::WeakOrderLattice;
