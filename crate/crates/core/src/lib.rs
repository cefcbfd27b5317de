//! Workbench for non-Hermitian tight-binding Hamiltonians: chiral,
//! pseudo-chiral and antilinear symmetries, exceptional points and spectra.

pub mod clifford;
pub mod linalg;
pub mod model;
pub mod spectra;
pub mod symmetry;

pub use num_complex::Complex64 as C64;
