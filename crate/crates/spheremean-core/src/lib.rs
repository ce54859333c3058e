//! Spherical mean value operators on periodic grids.
//!
//! The crate evaluates the generalized (order-`ell`) spherical mean value
//! operator two independent ways — sphere quadrature of directional
//! derivatives and exact Fourier multiplication — together with the
//! special-function machinery both realizations share: the normalized
//! Bessel function `j_nu`, its derivative expansion with exact rational
//! coefficient tables, certified zero sequences, an invertibility-condition
//! scanner, and a thresholded spectral deconvolution solver with
//! range-membership diagnostics.
//!
//! The core is `no_std` (allocation required); IO, file formats and the
//! command line live in the companion `spheremean` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bessel;
pub mod error;
pub mod fft;
pub mod field;
pub mod operator;
pub mod quad;
pub mod solver;
pub mod symbol;

mod dd;

pub use error::Error;
pub use num_complex::Complex64;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
