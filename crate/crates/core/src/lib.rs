//! CSS codes from 2^m-divisible codes by puncture-then-repeat, with CSS-T
//! checks and transversal-gate verification.

pub mod catalog;
pub mod construction;
pub mod css;
pub mod csst;
pub mod error;
pub mod gf2;
pub mod textio;
pub mod verify;

pub use construction::CssPair;
pub use css::{CssCode, PauliOperator, SparseState};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector, LinearCode};
