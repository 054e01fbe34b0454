//! Exact dimensional analysis: quantities with rational measures, dimensions
//! as integer exponent vectors, and enumeration of the power-law relations a
//! set of variables admits.
//!
//! All arithmetic is exact. Measures are arbitrary-precision rationals and
//! dimensional equations are solved over the integers, so derived exponents
//! like the `1/2` in a square-root law come out as true rationals rather than
//! floating-point approximations.

pub mod analysis;
pub mod cli;
pub mod dimension;
pub mod error;
pub mod intlinalg;
mod lex;
pub mod problem;
pub mod quantity;
pub mod rational;
pub mod report;
pub mod units;

pub use error::{Error, Result};
