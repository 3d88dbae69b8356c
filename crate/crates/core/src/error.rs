use alloc::string::String;
use core::fmt;

/// Failures reported by the algebra routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    AlphabetMismatch { left: u8, right: u8 },
    WrongAlphabet { expected: u8, found: u8 },
    ArityMismatch { expected: usize, found: usize },
    StrandMismatch { left: usize, right: usize },
    IndexOutOfRange(String),
    DegreeTooLow { degree: usize, min: usize },
    NotHomogeneous,
    NotLie,
    NotInImage(String),
    NotSubalgebra,
    NotPure,
    Precondition(String),
    Unknown(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::AlphabetMismatch { left, right } => {
                write!(f, "alphabet mismatch: rank {} vs rank {}", left, right)
            }
            Error::WrongAlphabet { expected, found } => {
                write!(
                    f,
                    "expected an alphabet of rank {}, found rank {}",
                    expected, found
                )
            }
            Error::ArityMismatch { expected, found } => {
                write!(f, "expected {} images, got {}", expected, found)
            }
            Error::StrandMismatch { left, right } => {
                write!(f, "strand count mismatch: {} vs {}", left, right)
            }
            Error::IndexOutOfRange(s) => write!(f, "index out of range: {}", s),
            Error::DegreeTooLow { degree, min } => {
                write!(f, "degree {} is below the minimum {}", degree, min)
            }
            Error::NotHomogeneous => write!(f, "element is not homogeneous"),
            Error::NotLie => write!(f, "element is not a Lie polynomial"),
            Error::NotInImage(s) => write!(f, "not in image: {}", s),
            Error::NotSubalgebra => write!(f, "subspace is not closed under the bracket"),
            Error::NotPure => write!(f, "braid is not pure"),
            Error::Precondition(s) => write!(f, "precondition failed: {}", s),
            Error::Unknown(s) => write!(f, "unknown: {}", s),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
