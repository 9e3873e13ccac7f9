//! Exact-arithmetic laboratory over the polynomial ring `F_q[T]`.
//!
//! Everything here is deterministic and exhaustive at desk scale: finite
//! fields `F_q` with `q = p^e`, dense polynomial arithmetic, certified
//! factorization, factorization functions attached to representations of
//! the symmetric group, short-interval sums with explicit error bounds,
//! brute-force point counts of the associated varieties, and moments of
//! Dirichlet L-functions mod `u^{m+1}`.
//!
//! The crate is `no_std` (with `alloc`); all IO, serialization, and
//! parallel drivers live in the companion `ffsi` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod arith;
pub mod cyclotomic;
pub mod enumerate;
pub mod factor;
pub mod field;
pub mod interval;
pub mod lfunc;
pub mod oracle;
pub mod poly;
pub mod symrep;
pub mod variety;

use core::fmt;

pub use arith::ArithFnSpec;
pub use enumerate::ShortIntervalSpec;
pub use factor::{Factorization, FactorizationType};
pub use field::{El, Field, FieldSpec};
pub use interval::{BoundReport, ScanMode};
pub use poly::Poly;
pub use symrep::{CycleType, RepSpec, VirtualRep};

/// Hard cap on exhaustive work, measured in enumerated items.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(1 << 20)
    }
}

impl Budget {
    pub fn check(&self, work: u64) -> Result<(), Error> {
        if work <= self.0 {
            Ok(())
        } else {
            Err(Error::BudgetExceeded { work, budget: self.0 })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    NotPrime(u64),
    BudgetExceeded { work: u64, budget: u64 },
    FieldMismatch,
    NotMonic,
    DivisionByZero,
    NotSquarefree,
    DegreeMismatch { expected: usize, got: usize },
    InvalidParameter(&'static str),
    NonIntegralAverage,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::BudgetExceeded { work, budget } => {
                write!(f, "enumeration of {work} items exceeds budget {budget}")
            }
            Error::FieldMismatch => write!(f, "operands belong to different fields"),
            Error::NotMonic => write!(f, "polynomial is not monic"),
            Error::DivisionByZero => write!(f, "division by the zero polynomial"),
            Error::NotSquarefree => write!(f, "polynomial is not squarefree"),
            Error::DegreeMismatch { expected, got } => {
                write!(f, "degree mismatch: expected {expected}, got {got}")
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::NonIntegralAverage => {
                write!(f, "class average is not an integer (implementation bug)")
            }
        }
    }
}

impl core::error::Error for Error {}
