//! Exact computations with hearts of bounded t-structures on the derived
//! category of a finite-dimensional bound quiver algebra over the rationals:
//! simple tilts, torsion theories, spherical twists and the stability
//! tilings assembled from them.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod endo;
pub mod homotopy;
pub mod error;
pub mod hearts;
pub mod linalg;
pub mod quiver;
pub mod stability;

pub use error::{Error, Result};
