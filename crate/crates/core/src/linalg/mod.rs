//! Dense complex linear algebra and tensor-product bookkeeping.

pub mod density;
pub mod eigen;
pub mod matrix;
pub mod pauli;
pub mod state;

pub use density::{partial_trace, DensityOperator, PartialTrace};
pub use eigen::{eig_hermitian, eig_hermitian_with, EigenDecomposition, JacobiConfig};
pub use matrix::{kron, kron_vec, ComplexMatrix, C64};
pub use pauli::{pauli, sigma, PauliOp, PauliString};
pub use state::{digits_of, flat_index, StateVector};
