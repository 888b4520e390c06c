//! Exact algebra for polynomial extended solutions of harmonic maps into O(n).
//!
//! Everything here is computed over the field Q(i): Gaussian-rational scalars,
//! rational functions in the surface coordinate z, and matrices of bounded
//! polynomials in the loop parameter λ. The crate is `no_std` (alloc only);
//! IO, JSON, and all floating-point work live in the companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod canonical;
pub mod exactnum;
pub mod lambdamat;

pub use canonical::CanonicalElement;
pub use exactnum::{GaussianRational, Polynomial, RationalFunction};
pub use lambdamat::{LambdaMatrix, LambdaPoly};
