//! Braid words, grid diagrams and PD codes, the Alexander braiding of a
//! grid, Markov and L-moves on braids, and a Kauffman bracket oracle that
//! checks all of it.
//!
//! The oracle is generic over the coefficient ring; the aliases below fix
//! it to `i64`, which is exact for every diagram under the state-sum caps.

pub mod braid;
pub mod braiding;
pub mod diagram;
mod error;
pub mod fuzz;
pub mod invariants;
pub mod markov;
pub mod permutation;

pub use braid::{BraidWord, Direction, RelationKind};
pub use braiding::{braid_from_grid, BraidingTrace};
pub use diagram::{braid_closure_to_pd, grid_to_pd, parse_object, GridDiagram, Object, PdCode};
pub use error::{Error, Result};
pub use invariants::{
    invariant_record, BracketMethod, Coefficient, InvariantRecord, LaurentPoly, OracleConfig,
};
pub use markov::{LMoveKind, LMoveSignTable, MarkovMove};
pub use permutation::Permutation;

/// Laurent polynomials in `A` with machine-integer coefficients.
pub type Poly = LaurentPoly<i64>;
/// Invariant bundle over [`Poly`].
pub type Invariants = InvariantRecord<i64>;
