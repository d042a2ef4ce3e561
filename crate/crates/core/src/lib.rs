//! Exact-arithmetic kernel for finite-dimensional Leibniz superalgebras given
//! by structure constants.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`]: cyclotomic-rational numbers `Q(ζ_N)` used for every
//!   structure constant.
//! * [`linalg`]: exact row reduction, graded subspaces and Jordan partitions
//!   of nilpotent matrices.
//! * [`algebra`]: the [`SuperAlgebra`] value, its product, the Leibniz
//!   superidentity, the right annihilator and graded basis changes.
//! * [`invariants`]: central series, nilindex, characteristic sequence,
//!   natural gradation and the [`Fingerprint`] summary.
//! * [`families`]: constructors for the classified families and the
//!   parameter-normalisation operators.
//! * [`search`]: pruned exhaustive enumeration of structure-constant tables
//!   and the census/verification harness built on it.
//! * [`format`]: the `.lsa` text format.

pub mod algebra;
pub mod error;
pub mod families;
pub mod format;
pub mod invariants;
pub mod linalg;
pub mod scalar;
pub mod search;

pub use algebra::{Basis, Element, Parity, SuperAlgebra, Violation};
pub use error::Error;
pub use families::{FamilyId, FamilyTag};
pub use invariants::{CharSeq, CharSeqPolicy, Fingerprint};
pub use linalg::{GradedSubspace, Matrix, Partition};
pub use scalar::Scalar;

/// Version tag embedded in every JSON report.
pub const SCHEMA_VERSION: u32 = 1;
