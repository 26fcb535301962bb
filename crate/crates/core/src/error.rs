use alloc::string::String;

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("relation {relation} is not admissible: {reason}")]
    NonAdmissible { relation: usize, reason: String },
    #[error("paths of length {nil_bound} survive the relations; increase nil_bound")]
    NotNilpotent { nil_bound: usize },
    #[error("unknown vertex {0}")]
    InvalidVertex(usize),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid chain map: {0}")]
    InvalidChainMap(String),
    #[error("endomorphism algebra modulo its radical is not split over the rationals")]
    NonSplitEndomorphismField,
    #[error("projective resolution longer than the global dimension bound {bound}")]
    ResolutionTooLong { bound: usize },
    #[error("global dimension is at least {bound}")]
    GlobalDimensionTooLarge { bound: usize },
    #[error("not a simple-minded collection: {0}")]
    NotSimpleMinded(String),
    #[error("index {index} is out of range for a heart with {len} simples")]
    SimpleOutOfRange { index: usize, len: usize },
    #[error("tilt did not stabilize within {bound} iterations")]
    TiltDivergence { bound: usize },
    #[error("the heart appears to have infinitely many indecomposables")]
    InfiniteTypeSuspected,
    #[error("no simple of the current heart lies in the remaining torsion set")]
    FactorizationStuck,
    #[error("heart does not lie in the tilting interval of the reference heart")]
    NotAnIntervalHeart,
    #[error("object is not spherical: {0}")]
    NotSpherical(String),
    #[error("object is not in the heart")]
    NotInHeart,
    #[error("charge is invalid: {0}")]
    InvalidCharge(String),
    #[error("limit point is forbidden: a limit-semistable object of class {class:?} has zero charge")]
    LimitForbidden { class: alloc::vec::Vec<i64> },
    #[error("rotated point leaves the explored atlas")]
    LeftTileRange,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
