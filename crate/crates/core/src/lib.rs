//! Spectral computations for even functions on the sphere: the
//! homogeneous-extension Fourier transforms `T_q`, q-cosine and spherical
//! Radon transforms as Funk–Hecke multipliers, positivity tests for the
//! associated distributions, and certified L_p comparison results.

pub mod acceptance;
pub mod comparison;
pub mod error;
pub mod gallery;
pub mod numeric;
pub mod operators;
pub mod positivity;
pub mod specialfn;
pub mod spherefun;

pub use error::{Error, Result};
