//! Constructive pipelines: degree-one and quadratic inversion, the
//! symmetrization case table, the parity route, a bounded move search and
//! two-dimensional Druzkowski maps.

mod degree1;
mod druzkowski;
mod parity;
mod search;
mod symmetrize;
mod wang;

pub use degree1::{degree1_reduce, Degree1Reduction};
pub use druzkowski::{druzkowski2, Druzkowski, LinearForm};
pub use parity::{parity_classify, parity_of, ParityFinding, ParityOutcome};
pub use search::{symmetrize_search, SearchLimits, SearchResult};
pub use symmetrize::{
    invert_via_symmetry, symmetrize_deg2, symmetrize_image, InversionRoute, SymmetrizationTranscript,
    SymmetrizeOptions, SymmetryInversion, TranscriptStep,
};
pub use wang::{wang_special, WangBranch, WangReduction};

use crate::cmw::CmwError;
use crate::field::FieldError;
use crate::poly::Poly;
use crate::tame::TameError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("map is not Keller: Jacobian {0}")]
    NotKeller(Poly),
    #[error("neither image has degree one")]
    DegreeMismatch,
    #[error("degree {0} is above what this engine handles")]
    DegreeTooHigh(u32),
    #[error("real mode: {0}")]
    NotReal(String),
    #[error("no parity profile is all-even or all-odd")]
    NotApplicable,
    #[error("no symmetrizing sequence within the search bounds")]
    NotFound,
    #[error("search visited more than {0} nodes")]
    ResourceLimit(u64),
    #[error("rejected: Jacobian {0} is not constant")]
    Rejected(Poly),
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Tame(#[from] TameError),
    #[error(transparent)]
    Cmw(#[from] CmwError),
}

pub(crate) fn require_keller(f: &crate::endo::Endo) -> Result<(), EngineError> {
    let jac = f.jacobian();
    match jac.as_constant() {
        Some(c) if !c.is_zero() => Ok(()),
        _ => Err(EngineError::NotKeller(jac)),
    }
}
