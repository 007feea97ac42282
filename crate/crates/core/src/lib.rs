//! Partition-preserving transformation monoids, wreath products of
//! transformation monoids, closure enumeration, and rank search.
//!
//! Points are 0-based throughout. A uniform partition of `n*m` points into
//! `m` blocks of size `n` uses the canonical layout where point `(y, z)` is
//! index `y + n*z`; the 1-based point `(i, j)` corresponds to `(i-1, j-1)`.

pub mod closure;
pub mod combinations;
pub mod error;
mod indexed;
pub mod io;
mod parallel;
pub mod rank;
mod store;
pub mod structures;
pub mod transform;
pub mod verify;
pub mod wreath;

pub use closure::{closure, is_generating, ClosureOptions, ClosureOutcome, ClosureResult};
pub use error::{Error, Result};
pub use rank::{
    rank_exhaustive, rank_via_lemma1, relative_rank, verify_kernel_obstruction,
    verify_lemma1_consistency, Certificate, Method, Quantity, RankReport, RankValue, SearchOptions,
};
pub use structures::{explicit_generators, membership, order_formula, GeneratorSet, StructureKind};
pub use transform::{Kernel, Transformation, UniformPartition};
pub use wreath::WreathElement;
