use thiserror::Error;

use crate::coxeter::Generator;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cartan matrix must be square and non-empty")]
    NotSquare,
    #[error("cartan[{0}][{0}] must be 2")]
    DiagonalNotTwo(usize),
    #[error("cartan[{row}][{col}] must be non-positive")]
    PositiveOffDiagonal { row: usize, col: usize },
    #[error("cartan[{row}][{col}] and cartan[{col}][{row}] must vanish together")]
    AsymmetricZero { row: usize, col: usize },
    #[error("cartan entry at [{row}][{col}] does not fit the element representation")]
    EntryTooLarge { row: usize, col: usize },
    #[error("invalid coxeter matrix: {0}")]
    InvalidCoxeterMatrix(String),
    #[error("m[{row}][{col}] = {claimed} but the action of the product has order {actual}")]
    OrderMismatch {
        row: usize,
        col: usize,
        claimed: String,
        actual: String,
    },
    #[error("generator index {0} out of range")]
    BadGeneratorIndex(Generator),
    #[error("expected a sequence of length {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("polynomials belong to rings with {left} and {right} variables")]
    SystemMismatch { left: usize, right: usize },
    #[error("expected a linear form, got a polynomial of degree {0}")]
    NotLinear(u32),
    #[error("inexact division by a simple root (action convention bug)")]
    InexactDivision,
    #[error("subexpressions have different endpoints")]
    EndpointMismatch,
    #[error("subexpression {0} has a D1 decoration")]
    HasD1(usize),
    #[error("word of length {length} exceeds the oracle bound {bound}")]
    OracleBoundExceeded { length: usize, bound: usize },
    #[error("matrix has entries of positive degree")]
    NonConstantEntries,
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotSquare => "NotSquare",
            Error::DiagonalNotTwo(_) => "DiagonalNotTwo",
            Error::PositiveOffDiagonal { .. } => "PositiveOffDiagonal",
            Error::AsymmetricZero { .. } => "AsymmetricZero",
            Error::EntryTooLarge { .. } => "EntryTooLarge",
            Error::InvalidCoxeterMatrix(_) => "InvalidCoxeterMatrix",
            Error::OrderMismatch { .. } => "OrderMismatch",
            Error::BadGeneratorIndex(_) => "BadGeneratorIndex",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::SystemMismatch { .. } => "SystemMismatch",
            Error::NotLinear(_) => "NotLinear",
            Error::InexactDivision => "InexactDivision",
            Error::EndpointMismatch => "EndpointMismatch",
            Error::HasD1(_) => "HasD1",
            Error::OracleBoundExceeded { .. } => "OracleBoundExceeded",
            Error::NonConstantEntries => "NonConstantEntries",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
