//! Discrete averages on `Z_N`, the rhythm and Boolean averaging maps, and the
//! algebraic normal form of the Boolean average.

pub mod anf;
pub mod boolvec;
pub mod cli;
pub mod error;
mod literal;
pub mod modular;
pub mod rhythm;
pub mod tables;
pub mod theory;
pub mod verify;

pub use anf::{AnfPoly, Basis, Monomial};
pub use boolvec::{BoolVec, Convention};
pub use error::{Error, Result};
pub use modular::{IntervalKind, Modulus, SignedIndex, Zn};
pub use rhythm::{IncreasingRhythm, Rhythm, SignedRhythm};
pub use theory::{AncestorFamily, PairKind, ParentalPair};
