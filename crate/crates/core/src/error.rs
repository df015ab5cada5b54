use std::fmt;

use thiserror::Error;

use crate::character::Character;

/// One broken invariant of a formal local system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyMonodromy {
        point: String,
    },
    EmptyPartition {
        point: String,
        character: Character,
    },
    DegreeMismatch {
        point: String,
        expected: u32,
        found: u32,
    },
    TrivialAtFinitePoint {
        point: String,
    },
    DuplicateLabel {
        label: String,
    },
    TooFewFinitePoints {
        count: usize,
    },
    Determinant {
        finite_sum: Character,
        infinity: Character,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyMonodromy { point } => write!(f, "{point}: empty local monodromy"),
            Violation::EmptyPartition { point, character } => {
                write!(f, "{point}: empty partition for character {character}")
            }
            Violation::DegreeMismatch {
                point,
                expected,
                found,
            } => write!(f, "{point}: degree {found}, expected {expected}"),
            Violation::TrivialAtFinitePoint { point } => {
                write!(f, "{point}: identity local monodromy at a finite point")
            }
            Violation::DuplicateLabel { label } => write!(f, "duplicate point label {label}"),
            Violation::TooFewFinitePoints { count } => {
                write!(
                    f,
                    "{count} finite singular point(s), at least two are required"
                )
            }
            Violation::Determinant {
                finite_sum,
                infinity,
            } => write!(
                f,
                "determinant mismatch: finite points give {finite_sum}, infinity gives {infinity}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid local data: {}", join(.0))]
    Invalid(Vec<Violation>),

    #[error("unknown point label {0:?}")]
    UnknownPoint(String),

    #[error("the convolution character must be nontrivial")]
    TrivialCharacter,

    #[error("degenerate convolution: output rank would be {0}")]
    DegenerateConvolution(i64),

    #[error("inconsistent Jordan data at {point}, character {character}: {detail}")]
    InconsistentData {
        point: String,
        character: Character,
        detail: String,
    },

    #[error("condition violated: {0} equals the quadratic character -1")]
    ConditionViolated(&'static str),

    #[error("virtual representation where an actual one is required")]
    VirtualRepresentation,

    #[error("exterior power of degree {k} requested for a representation of dimension {dim}")]
    DimensionTooSmall { k: u32, dim: i64 },

    #[error("expected degree {expected}, found {found}")]
    WrongDegree { expected: u32, found: u32 },

    #[error("local monodromy is not conjugate into G2")]
    NotInG2,

    #[error("local monodromy matches several G2 classes: {0}")]
    AmbiguousClass(String),

    #[error("no rigid system exists: {0}")]
    NoRigidSystem(&'static str),

    #[error("pair ({phi}, {eta}) does not match any row of the infinity table")]
    NoTableRow { phi: Character, eta: Character },

    #[error("invalid hypersurface data: {0}")]
    InvalidHyp(String),

    #[error("invalid field size q = {0}: an odd prime is required")]
    InvalidModulus(u64),

    #[error("invalid fiber t = {t} over F_{q}: t must avoid 0 and 1")]
    InvalidFiber { q: u64, t: u64 },

    #[error("{} fiber(s) failed: {}", .0.len(), .0.join("; "))]
    FiberErrors(Vec<String>),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

impl Error {
    /// True for errors that reject malformed or inconsistent input data, as
    /// opposed to a mathematical precondition of an operation.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::Invalid(_)
                | Error::UnknownPoint(_)
                | Error::WrongDegree { .. }
                | Error::InvalidHyp(_)
                | Error::InvalidModulus(_)
                | Error::InvalidFiber { .. }
        )
    }
}

fn join(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
