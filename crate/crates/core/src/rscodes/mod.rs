//! Reed-Solomon codes over an evaluation set `D ⊆ F_q`.

mod code;
mod deephole;
mod poly;

use thiserror::Error;

use crate::counts::CountsError;
use crate::gf::GfError;

pub use code::{CodewordTable, DistanceBounds, RsCode, Word, DEFAULT_DISTANCE_LIMIT};
pub use deephole::{
    classify_m1, deep_hole_scan, subset_count, M1Classification, M1Verdict, ScanEntry, ScanMode,
    ScanReport, FORMULA_MAX_EXCLUDED,
};
pub use poly::{Degree, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RsError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Counts(#[from] CountsError),
    #[error("evaluation points must be distinct")]
    DuplicatePoint,
    #[error("dimension k = {k} out of range for n = {n}")]
    DimensionOutOfRange { k: usize, n: usize },
    #[error("word has {got} values, code length is {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("message polynomial has degree {degree}, needs < {k}")]
    DegreeTooHigh { degree: usize, k: usize },
    #[error("enumeration needs {work} codewords, above the limit {limit}")]
    GuardExceeded { work: String, limit: u64 },
    #[error("word degree {degree} is neither k = {k} nor k + 1")]
    DegreeNotClassifiable { degree: Degree, k: usize },
}
