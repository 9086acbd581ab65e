//! Dense-matrix toolkit for circuit-QED quantum simulation protocols.
//!
//! Frequencies at every public entry point are linear (GHz) and times are
//! in ns; Hamiltonian builders multiply by 2π internally. The qubit basis
//! puts `|g>` at index 0 and uses `sigma_z = |e><e| - |g><g|`.

pub mod digital;
pub mod error;
pub mod evolve;
pub mod hamlib;
pub mod linalg;
pub mod observe;
pub mod qft;
pub mod qops;

pub use error::{Error, Result};
pub use evolve::{IntegratorConfig, LindbladModel, Trajectory};
pub use hamlib::{Coefficient, TimeDependentHamiltonian};
pub use qops::{elementary, embed, tensor, ElementaryKind, HilbertSpace, Operator, QuantumState};

pub use num_complex::Complex64;
