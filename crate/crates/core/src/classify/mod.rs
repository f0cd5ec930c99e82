//! Generalized near-group profiles, the braided-case filters, and enumeration.

mod conjecture;
mod driver;
mod enumerate;
mod filters;
mod profile;

use thiserror::Error;

use crate::ring::RingError;

pub use conjecture::{conjecture_report, ConjectureEntry, ConjectureReport};
pub use driver::{classify_irrational, classify_ring, ClassificationReport, Outcome, RejectedPair, RingClassification, SurvivorClass};
pub use enumerate::{enumerate_gnq, equivariant_ring, CosetData, DSpec, MAX_ENUM_ORDER, MAX_MULT_BOUND};
pub use filters::{
    categorifiability_filter, supertannakian_branch_filter, tannakian_branch_filter, Branch, BranchVerdict, TraceStep,
    R_C2_2_4_TAG,
};
pub use profile::{adjoint_dichotomy, gnq_profile, nilpotency_class, GnqProfile};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("not a generalized near-group ring: {0}")]
    NotGeneralizedNearGroup(String),
    #[error("d = {0} is rational")]
    RationalDimension(String),
    #[error("global dimension {0} is rational")]
    RationalGlobalDimension(String),
    #[error("adjoint chain stabilizes at rank {stable_rank} after {steps} steps")]
    NotNilpotent { stable_rank: usize, steps: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}
