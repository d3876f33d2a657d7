//! Exact simulation of toroidal flux qubits (fluxons) coupled to a charged
//! particle on a quantum ring through the Aharonov–Bohm phase.
//!
//! The crate builds the effective fluxon Hamiltonians (one fluxon, a driven
//! electron ⊗ fluxon pair, two fluxons sharing a ring, and a tunable
//! transverse-field Ising chain), diagonalizes them with a deterministic
//! Jacobi solver, and propagates states exactly to produce band tables, Bloch
//! vectors, excitation-transfer traces and entanglement entropies.
//!
//! Units: energies in a = ħ²/(2 m_e r²), times in ħ/a.

pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod exec;
pub mod hamiltonians;
pub mod linalg;
pub mod spectra;

pub use error::{Error, Result};
pub use exec::Exec;
