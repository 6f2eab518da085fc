//! Numerical curve-class calculus on the moduli space of stable n-pointed
//! rational curves: canonical boundary indexing, sparse class vectors,
//! F-curves and forgetful-fiber components, divisor pairings, attaching,
//! and relabeling.

mod class;
mod curves;
mod divisor;
mod marking;

pub use class::ClassVector;
pub use curves::{
    attach, fcurve_class, fiber_component_class, fiber_fdecomp, relabel, rigidity_report,
    DecompCertificate, FCurve, FiberComponent, Generator, RigidityReport,
};
pub use divisor::{canonical_divisor, delta_divisor, keel_divisor, psi_divisor, DivisorExpr};
pub use marking::{canonical_side, BoundarySide, MarkingSet};

/// Canonicalize a subset given by marking indices.
pub fn canonical_side_indices_pub(
    ms: &MarkingSet,
    subset: &[u8],
) -> Result<BoundarySide, ClassError> {
    marking::canonical_side_indices(ms, subset)
}

pub use divisor::pair;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassError {
    #[error("marking set needs at least 4 distinct labels, got {0}")]
    TooFewLabels(usize),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("boundary side size {size} out of range 2..={max} for n = {n}")]
    SideSizeOutOfRange { size: usize, max: usize, n: usize },
    #[error("marking sets differ")]
    MarkingMismatch,
    #[error("blocks must partition the marking set")]
    BadPartition,
    #[error("fiber component needs at least 3 blocks, got {0}")]
    TooFewBlocks(usize),
    #[error("labels {0:?} collide when attaching")]
    AttachCollision(Vec<String>),
    #[error("relabeling is not a bijection of the marking set")]
    BadPermutation,
    #[error("psi/keel labels must be distinct")]
    RepeatedLabel,
    #[error("{0}")]
    Other(String),
}
