use thiserror::Error;

use crate::embed::Embedding;
use crate::family::SubsetMask;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("relation ({0}, {1}) references an element outside 0..{2}")]
    ElementOutOfRange(usize, usize, usize),

    #[error("relations contain a cycle through elements {0:?}")]
    Cycle(Vec<usize>),

    #[error("poset has {0} elements; at most 64 are supported")]
    PosetTooLarge(usize),

    #[error("operation needs a non-empty input: {0}")]
    Empty(&'static str),

    #[error("ground size {0} exceeds the single-word mask limit of 64")]
    GroundTooLarge(u32),

    #[error("set {0:?} is not a subset of the ground set [{1}]")]
    SetOutOfGround(Vec<u32>, u32),

    #[error("duplicate set {0:?} in family")]
    DuplicateSet(Vec<u32>),

    #[error("layer size {k} out of range for ground size {n}")]
    LayerOutOfRange { n: u32, k: u32 },

    #[error("exhaustive check infeasible: ground size {n} exceeds the cap {cap}")]
    Infeasible { n: u32, cap: u32 },

    #[error("family is not free: found an induced copy {0}")]
    NotFree(Embedding),

    #[error("poset is not special")]
    NotSpecial,

    #[error("scan for the smallest containing cube exceeded dimension {0}")]
    ScanCap(u32),

    #[error("invalid layer sizes: {0}")]
    InvalidLayers(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("construction failed certification: {0}")]
    Certification(String),

    #[error("set {0} is not a member of the family")]
    NotMember(SubsetMask),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
