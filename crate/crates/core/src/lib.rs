//! Driven two-level Landau-Zener dynamics and defect-density scaling for
//! the periodically perturbed transverse-field Ising chain.

pub mod furry;
pub mod ising;
pub mod pt;
pub mod specfun;
pub mod tdse;

pub use num_complex::Complex64 as C64;
