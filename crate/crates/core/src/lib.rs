//! Exact constructions linking mutually orthogonal extraordinary supersquares
//! over GF(2^n) x GF(2^n) with complete sets of mutually unbiased bases for
//! n qubits.

pub mod error;
pub mod gauss;
pub mod gf2n;
pub mod phasespace;

pub use error::{Error, Result};
pub use gf2n::{Elem, Field, FieldBasis};
pub use phasespace::{PhaseSpace, Point, Subgroup, TraceZeroSet};
pub mod json;
pub mod mub;
pub mod pauli;
pub mod squares;
