use alloc::string::String;
use core::fmt;

use crate::ivreal::{DecimalError, IntervalError};

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    Interval(IntervalError),
    /// A polynomial exceeds the degree an operation supports.
    Degree {
        found: usize,
        max: usize,
    },
    /// Binary operation on polynomials expanded about different centers.
    CenterMismatch,
    Parse(String),
    /// A structural property of the seed does not hold.
    Invariant(&'static str),
    /// An argument left the domain of a bound; the tag names the bound.
    Domain(&'static str),
    /// A denominator is not certified positive; the tag names the bound.
    Denominator(&'static str),
    NotContractive(&'static str),
    NoRealRoot(&'static str),
    AmbiguousRoot(&'static str),
    Config(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Interval(e) => write!(f, "{e}"),
            Error::Degree { found, max } => write!(f, "degree {found} exceeds supported {max}"),
            Error::CenterMismatch => f.write_str("polynomials have different centers"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Invariant(what) => write!(f, "invariant violated: {what}"),
            Error::Domain(what) => write!(f, "domain error in {what}"),
            Error::Denominator(what) => write!(f, "denominator not positive in {what}"),
            Error::NotContractive(what) => write!(f, "not contractive: {what}"),
            Error::NoRealRoot(what) => write!(f, "no real root: {what}"),
            Error::AmbiguousRoot(what) => write!(f, "ambiguous root: {what}"),
            Error::Config(msg) => write!(f, "config error: {msg}"),
        }
    }
}

impl core::error::Error for Error {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            Error::Interval(e) => Some(e),
            _ => None,
        }
    }
}

impl From<IntervalError> for Error {
    fn from(e: IntervalError) -> Self {
        Error::Interval(e)
    }
}

impl From<DecimalError> for Error {
    fn from(e: DecimalError) -> Self {
        Error::Parse(alloc::format!("{e}"))
    }
}

pub type Result<T> = core::result::Result<T, Error>;
