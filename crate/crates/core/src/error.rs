use alloc::string::String;
use core::fmt;

use crate::Label;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// `(A_n)_{-m}` needs `n >= 2`; affine `A_1` has a double bond.
    UnsupportedRank { n: usize },
    /// Malformed diagram: duplicate labels, dangling or self edges.
    InvalidDiagram(String),
    DimensionMismatch { expected: usize, found: usize },
    UnknownLabel(Label),
    /// Lower bound above upper bound.
    InvalidBounds { lo: i64, hi: i64 },
    /// The matrix has no integral inverse.
    NotUnimodular,
    NoRecurrenceFound { terms: usize },
    IllConditioned { residual: f64 },
    /// The two halves of a bicolour factorization must each consist of
    /// pairwise non-adjacent nodes and together cover the diagram.
    InvalidFactorization(String),
    BasisTooLarge { size: u128, limit: u128 },
    DegenerateEigenbasis { condition: f64 },
    /// A potential term, sine or trigamma argument hit a pole.
    PoleEncountered(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnsupportedRank { n } => {
                write!(f, "extended A-series needs n >= 2, got n = {n}")
            }
            Error::InvalidDiagram(msg) => write!(f, "invalid diagram: {msg}"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::UnknownLabel(l) => write!(f, "unknown node label {l}"),
            Error::InvalidBounds { lo, hi } => write!(f, "invalid bounds {lo}:{hi}"),
            Error::NotUnimodular => f.write_str("matrix is not unimodular"),
            Error::NoRecurrenceFound { terms } => {
                write!(f, "no linear recurrence fits {terms} terms")
            }
            Error::IllConditioned { residual } => {
                write!(f, "closed form residual {residual:e} exceeds tolerance")
            }
            Error::InvalidFactorization(msg) => write!(f, "invalid bicolour factorization: {msg}"),
            Error::BasisTooLarge { size, limit } => {
                write!(f, "monomial basis of size {size} exceeds limit {limit}")
            }
            Error::DegenerateEigenbasis { condition } => {
                write!(f, "eigenbasis condition number {condition:e} too large")
            }
            Error::PoleEncountered(term) => write!(f, "pole encountered at {term}"),
        }
    }
}

impl core::error::Error for Error {}
