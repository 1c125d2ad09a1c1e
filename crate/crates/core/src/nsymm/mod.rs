//! A weight-truncated model of the Hopf algebra of noncommutative symmetric
//! functions, free on `Z_1, Z_2, ...`.

pub mod composition;
pub mod element;
pub mod families;
pub mod lie;

pub use composition::{compositions_of, Composition, CompositionStats, Refinement};
pub use element::{NSymmElement, NSymmTensor, Word};
pub use families::{convert, generator, generators, BasisElement, Family, Mirror};
pub use lie::{lie_express, LieExpression, LieTerm};

/// Default weight bound.
pub const DEFAULT_BOUND: u32 = 8;
