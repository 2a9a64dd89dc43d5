//! Rigorous bounds for the period-doubling renormalization seed of
//! area-preserving maps.
//!
//! Everything here is pure and allocation-only; file formats, the CLI and
//! the floating-point oracle live in the `pdcert` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod ivreal;

pub use ivreal::{Interval, IntervalError};
pub mod certify;
pub mod compactness;
pub mod contraction;
pub mod error;
pub mod midpoint;
pub mod polyball;
pub mod scalings;
pub mod seedmap;

pub use error::Error;
