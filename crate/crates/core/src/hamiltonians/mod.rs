//! Effective Hamiltonians of fluxons coupled through a quantum ring.
//!
//! Energies are in units of the ring level spacing a = ħ²/(2 m_e r²) and
//! times in ħ/a. The flux-qubit basis is |n=0⟩, |n=1⟩ with σz|0⟩ = +|0⟩.

mod builders;
mod chain;
mod closed_form;
mod decompose;
mod system;

pub use builders::{
    build_driven, build_driven_with, build_ising_two_qubit, build_ring_two_fluxon,
    build_single_fluxon, build_single_fluxon_with, build_two_fluxon, build_two_fluxon_physical,
    build_two_fluxon_physical_with, build_two_fluxon_with,
};
pub use chain::{build_chain, build_chain_with, chain_decomposition, MAX_CHAIN_FLUXONS};
pub use closed_form::{
    closed_form_single_energies, closed_form_single_energies_with, closed_form_two_fluxon_energies,
    closed_form_two_fluxon_energies_with,
};
pub use decompose::{
    pauli_decompose, PauliDecomposition, QuotedCoefficients, REPRESENTABILITY_TOLERANCE,
};
pub use system::{
    Dispersion, DriveSchedule, DriveSegment, Orientation, SystemSpec, TwoFluxonCoupling,
};
