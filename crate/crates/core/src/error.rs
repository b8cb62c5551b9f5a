use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use crate::gwa::AxiomViolation;
use crate::xmod::{ActionViolation, CmFailure};

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A Cayley table, action table or map has the wrong shape or fails a
    /// structural check.
    InvalidTable(String),
    /// `image[a + b] != image[a] + image[b]`.
    NotAHomomorphism {
        a: usize,
        b: usize,
    },
    UnknownCatalogId {
        order: usize,
        index: usize,
    },
    /// A textual group description could not be parsed.
    BadSpec(String),
    /// An exhaustive enumeration was asked for a group above the configured bound.
    Capacity {
        order: usize,
        max: usize,
    },
    GwaAxiom(AxiomViolation),
    /// `condition` is 1 (normal subgroup), 2 (`a^g`) or 3 (`-g + g^a`).
    NotAnIdeal {
        condition: u8,
        element: usize,
        other: usize,
    },
    /// A subset that had to be closed under an operation is not.
    NotClosed(String),
    InvalidAction(Box<ActionViolation>),
    NotACrossedModule(Box<CmFailure>),
    /// Two structures that must share a group or GwA do not.
    Mismatch(String),
    /// A simplicial construction could not be completed.
    Construction(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidTable(msg) => write!(f, "invalid table: {msg}"),
            Error::NotAHomomorphism { a, b } => {
                write!(f, "map is not a homomorphism: fails at ({a}, {b})")
            }
            Error::UnknownCatalogId { order, index } => {
                write!(f, "no catalog group with id ({order},{index})")
            }
            Error::BadSpec(spec) => write!(f, "unrecognised group spec '{spec}'"),
            Error::Capacity { order, max } => {
                write!(f, "group order {order} exceeds the enumeration bound {max}")
            }
            Error::GwaAxiom(v) => write!(f, "not a group with action: {v}"),
            Error::NotAnIdeal {
                condition,
                element,
                other,
            } => write!(
                f,
                "not an ideal: condition {condition} fails for elements {element} and {other}"
            ),
            Error::NotClosed(msg) => write!(f, "subset not closed: {msg}"),
            Error::InvalidAction(v) => write!(f, "invalid action pair: {v}"),
            Error::NotACrossedModule(c) => write!(f, "{c}"),
            Error::Mismatch(msg) => write!(f, "mismatch: {msg}"),
            Error::Construction(msg) => write!(f, "construction failed: {msg}"),
        }
    }
}

impl From<AxiomViolation> for Error {
    fn from(v: AxiomViolation) -> Self {
        Error::GwaAxiom(v)
    }
}

impl From<ActionViolation> for Error {
    fn from(v: ActionViolation) -> Self {
        Error::InvalidAction(Box::new(v))
    }
}

impl From<CmFailure> for Error {
    fn from(c: CmFailure) -> Self {
        Error::NotACrossedModule(Box::new(c))
    }
}
