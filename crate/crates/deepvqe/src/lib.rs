//! Divide-and-conquer ground-state pipeline for molecular qubit Hamiltonians.
//!
//! The pipeline: build or ingest second-quantized integrals, map to a qubit
//! Hamiltonian, split it across subsystems, solve the subsystems exactly,
//! generate local bases by excitation strategies, project the full
//! Hamiltonian into the product subspace, and solve the resulting effective
//! Hamiltonian — all in exact double-precision arithmetic.

pub mod basis;
pub mod dense;
pub mod effective;
pub mod eig;
pub mod error;
pub mod fci;
pub mod fcidump;
pub mod geometry;
pub mod gto;
pub mod integrals;
pub mod jw;
pub mod par;
pub mod partition;
pub mod pauli;
pub mod pipeline;
pub mod scf;
pub mod solver;
pub mod statevector;

pub use error::{Error, Result};
