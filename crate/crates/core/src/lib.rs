//! Weighted complex projective 2-designs built from unions of orthonormal
//! bases, and their use as measurements for quantum state tomography.
//!
//! The pipeline runs bottom-up:
//!
//! - [`algebra`]: cyclic-product groups, finite fields, `GR(4^n)` and their characters.
//! - [`nonlinear`]: differentially 1-uniform functions `f: G → H`, their
//!   constructions and a brute-force verifier.
//! - [`design`]: the basis family induced by a 1-uniform function, Welch-bound
//!   verification, MUB checks and the interchange file format.
//! - [`tomography`]: the family as a rank-one POVM, dual frames, linear
//!   reconstruction, and exact and simulated tomographic error.
//! - [`search`]: numerical minimization of the frame potential.
//!
//! ```
//! use basis_designs::{design, nonlinear};
//!
//! let f = nonlinear::exp_function(6, 1).unwrap();
//! let family = design::build_design(&f).unwrap();
//! assert_eq!(family.len(), 8);
//! let report = design::verify_design(&family, 2, 1e-9).unwrap();
//! assert!(report.is_design(2));
//! ```

pub mod algebra;
pub mod cli;
pub mod design;
mod error;
pub mod linalg;
pub mod nonlinear;
pub mod random;
pub mod search;
pub mod tomography;

pub use error::{Error, Result};
