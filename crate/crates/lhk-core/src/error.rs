use alloc::string::String;
use core::fmt;

/// Machine-readable error classes shared by every module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ErrorKind {
    DuplicateId,
    DanglingFace,
    DimMismatch,
    NotDSquaredZero,
    BoundaryNotSphere,
    NotComparable,
    NotClosed,
    DegreeShiftMismatch,
    NotAPair,
    VarianceMismatch,
    ShapeMismatch,
    TruncationTooSmall,
    NotACycle,
    BaseMismatch,
    NoSolution,
    NotOrientable,
    NotPseudomanifold,
}

impl ErrorKind {
    pub fn code(self) -> &'static str {
        match self {
            ErrorKind::DuplicateId => "DUPLICATE_ID",
            ErrorKind::DanglingFace => "DANGLING_FACE",
            ErrorKind::DimMismatch => "DIM_MISMATCH",
            ErrorKind::NotDSquaredZero => "NOT_D_SQUARED_ZERO",
            ErrorKind::BoundaryNotSphere => "BOUNDARY_NOT_SPHERE",
            ErrorKind::NotComparable => "NOT_COMPARABLE",
            ErrorKind::NotClosed => "NOT_CLOSED",
            ErrorKind::DegreeShiftMismatch => "DEGREE_SHIFT_MISMATCH",
            ErrorKind::NotAPair => "NOT_A_PAIR",
            ErrorKind::VarianceMismatch => "VARIANCE_MISMATCH",
            ErrorKind::ShapeMismatch => "SHAPE_MISMATCH",
            ErrorKind::TruncationTooSmall => "TRUNCATION_TOO_SMALL",
            ErrorKind::NotACycle => "NOT_A_CYCLE",
            ErrorKind::BaseMismatch => "BASE_MISMATCH",
            ErrorKind::NoSolution => "NO_SOLUTION",
            ErrorKind::NotOrientable => "NOT_ORIENTABLE",
            ErrorKind::NotPseudomanifold => "NOT_PSEUDOMANIFOLD",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Error {
    pub kind: ErrorKind,
    pub detail: String,
}

impl Error {
    pub fn new(kind: ErrorKind, detail: impl Into<String>) -> Self {
        Error { kind, detail: detail.into() }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind.code(), self.detail)
    }
}

pub type Result<T> = core::result::Result<T, Error>;
