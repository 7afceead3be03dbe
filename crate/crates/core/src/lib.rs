//! Castling transforms on integer tuples and an exact tensor lab for
//! left-invariant connections on matrix Lie algebras.
//!
//! * [`castling`]: the equation, castling moves and the descent to the root.
//! * [`tree`]: breadth-first enumeration of the solution tree with quotient
//!   annotations, exported as DOT, JSON or CSV.
//! * [`search`]: bounded exhaustive searches, including the cube check.
//! * [`connection`]: torsion, curvature, Ricci and projective Weyl tensors of
//!   invariant connections in exact rational arithmetic.

pub mod castling;
pub mod connection;
pub mod json;
pub mod search;
pub mod tree;

pub use castling::{
    castle, neighbors, reduce_to_root, residual, CastlingError, CastlingMove, CastlingParams,
    CastlingTuple, MoveKind, ReductionOutcome, ReductionTrace,
};
