//! Finite simplicial sets with exact limits and colimits, integral homology,
//! homotopy colimits, sheaves on finite boolean algebras, and checkers for
//! sharp maps and homotopy cartesian squares.

pub mod boolean;
pub mod category;
pub mod certificate;
pub mod diagram;
pub mod error;
pub mod fixtures;
pub mod ex;
pub mod fundamental;
pub mod hocolim;
pub mod homology;
pub mod kan;
pub mod limits;
pub mod map;
pub mod normalize;
pub mod operator;
pub mod peculiar;
pub mod poset;
pub mod product;
pub mod random;
pub mod sharp;
pub mod sset;
pub mod standard;
pub mod union_find;

pub use error::{Error, Result};
pub use map::{SSet, SimplicialMap};
pub use operator::Operator;
pub use sset::{CellId, FiniteSimplicialSet, SimplexRef};

/// Native scalar for elimination; overflow falls back to [`BigScalar`].
pub type SmallScalar = i64;
pub type BigScalar = num_bigint::BigInt;
pub use homology::{HomologyGroup, Scalar};
