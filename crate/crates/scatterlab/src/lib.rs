//! A workbench for computing with (𝒜,h)-scattered subspaces over finite
//! fields: spreads, scattered-subspace constructions and verification,
//! exact counting, geometric lattices and critical exponents, and the
//! associated rank-metric and minimal codes.

pub mod counting;
pub mod duality;
pub mod error;
pub mod field;
pub mod guard;
pub mod lattice;
pub mod minimal;
pub mod rankmetric;
pub mod scattered;
pub mod spread;
pub mod subspace;

pub use error::{Error, Result};
pub use field::{make_tower, FieldSpec, FieldTower};
pub use spread::{desarguesian_spread, PartialSpread, SpreadKind};
pub use subspace::SubspaceBasis;
