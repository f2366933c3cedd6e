//! Relational lattices `R(D, A)` (natural join and inner union), the lattices
//! `L(X, δ)` of generalized ultrametric spaces, and the construction that
//! shrinks any failure of an inclusion `t <= s` in some `R(D, A)` into a
//! finite, independently checkable countermodel `R(E, B)`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod boolean;
pub mod counterexample;
pub mod lattice;
pub mod points;
pub mod rel_lattice;
pub mod space;
pub mod space_lattice;
pub mod terms;
pub mod verify;

use alloc::string::String;

pub use boolean::{AttrSet, BooleanSubalgebra, Universe};
pub use counterexample::{Certificate, Valuation, Witness};
pub use lattice::Lattice;
pub use points::PointSet;
pub use rel_lattice::{RelLattice, Relation, ValueSet};
pub use space::{FunctionSpace, Space};
pub use space_lattice::{ClosedPair, SpaceLattice};
pub use terms::{Inclusion, Term};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("at most {max} attributes are supported, got {0}", max = boolean::MAX_ATTRS)]
    TooManyAttributes(usize),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("blocks do not partition the universe")]
    NotAPartition,
    #[error("{0:?} is not a member of the subalgebra")]
    NotInAlgebra(AttrSet),
    #[error("invalid space: {0}")]
    Space(&'static str),
    #[error("{points} points exceed the limit of {limit}")]
    SizeLimit { points: u128, limit: usize },
    #[error("variable `{0}` has no value")]
    UnboundVariable(String),
    #[error("not a space morphism: distance grows between points {f} and {g}")]
    NotAMorphism { f: usize, g: usize },
    #[error("row has {found} values, header has {expected} attributes")]
    RowWidth { expected: usize, found: usize },
    #[error("duplicate row")]
    DuplicateRow,
    #[error("dist({f},{g}) is not a member of the subalgebra")]
    DistanceOutsideAlgebra { f: usize, g: usize },
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    /// A re-verification inside the shrink pipeline failed; this is a bug.
    #[error("internal consistency check failed: {0}")]
    Consistency(&'static str),
}
