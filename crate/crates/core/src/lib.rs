//! Exact construction and verification of cubature formulae, combinatorial
//! designs, invariant Euclidean designs of reflection groups, and Hilbert
//! identities.
//!
//! Everything here is `no_std` + `alloc`; file formats and the command line
//! live in the companion `cubforge` crate.
#![no_std]

extern crate alloc;

pub mod cubature;
pub mod designs;
pub mod error;
pub mod exactnum;
pub mod hilbert;
pub mod linalg;
pub mod moments;
pub mod reflect;
pub mod victoir;

pub use error::{Error, Result};
