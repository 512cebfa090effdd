//! Numerical verification of Beilinson's conjecture for Fermat motives.
//!
//! The pipeline pairs a hypergeometric regulator determinant with the special
//! value of a Jacobi-sum Hecke L-function and recognizes their ratio.

pub mod cache;
pub mod cyclo;
pub mod error;
pub mod hyperg;
pub mod ffield;
pub mod index;
pub mod intmat;
pub mod jacobi;
pub mod lattice;
pub mod lfunc;
pub mod numeric;
pub mod regulator;
pub mod tables;
pub mod verify;

pub use cyclo::{CycElt, GaloisAut};
pub use error::{Error, Result};
pub use index::{ElementKind, FermatIndex};
pub use numeric::{BigComplex, BigReal};
