//! Entropy and mixedness of reduced states.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, partial_trace, DensityOperator, StateVector};
use crate::spectra::{bell_fidelity, Bell};

/// Eigenvalues below this are treated as exact zeros.
pub const EIGENVALUE_CLAMP: f64 = 1e-14;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum EntropyBase {
    #[default]
    Bits,
    Nats,
}

impl EntropyBase {
    pub fn unit(self) -> &'static str {
        match self {
            EntropyBase::Bits => "bits",
            EntropyBase::Nats => "nats",
        }
    }

    fn log(self, p: f64) -> f64 {
        match self {
            EntropyBase::Bits => p.log2(),
            EntropyBase::Nats => p.ln(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyValue {
    pub value: f64,
    pub base: EntropyBase,
}

impl fmt::Display for EntropyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.base.unit())
    }
}

/// S(ρ) = −Σ pᵢ log pᵢ over the spectrum of ρ.
///
/// Eigenvalues under [`EIGENVALUE_CLAMP`] are dropped and the rest renormalized,
/// so a pure state gives exactly zero.
pub fn von_neumann_entropy(rho: &DensityOperator, base: EntropyBase) -> Result<EntropyValue> {
    let eig = eig_hermitian(rho.matrix())?;
    let min = eig.values()[0];
    if min < -crate::linalg::density::POSITIVITY_TOLERANCE {
        return Err(Error::InvalidState(format!(
            "density matrix has negative eigenvalue {min:e}"
        )));
    }
    let kept: Vec<f64> = eig
        .values()
        .iter()
        .copied()
        .filter(|&p| p >= EIGENVALUE_CLAMP)
        .collect();
    let total: f64 = kept.iter().sum();
    let value = kept
        .iter()
        .map(|&p| {
            let p = p / total;
            -p * base.log(p)
        })
        .sum::<f64>()
        .max(0.0);
    Ok(EntropyValue { value, base })
}

/// Tr ρ².
pub fn purity(rho: &DensityOperator) -> f64 {
    rho.matrix().as_slice().iter().map(|z| z.norm_sqr()).sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementReport {
    pub entropy: EntropyValue,
    pub purity: f64,
    /// Best-matching Bell state and its fidelity, for two-qubit states.
    pub bell: Option<(Bell, f64)>,
}

/// Entropy and purity of the factors in `keep`, plus the dominant Bell
/// fidelity when the state is a pair of qubits.
pub fn entanglement_report(
    state: &StateVector,
    keep: &[usize],
    base: EntropyBase,
) -> Result<EntanglementReport> {
    let rho = partial_trace(state, keep)?;
    let entropy = von_neumann_entropy(&rho, base)?;
    let bell = if state.dims() == [2, 2] {
        let mut best: Option<(Bell, f64)> = None;
        for b in Bell::ALL {
            let f = bell_fidelity(state.amplitudes(), b)?;
            if best.is_none_or(|(_, bf)| f > bf) {
                best = Some((b, f));
            }
        }
        best
    } else {
        None
    };
    Ok(EntanglementReport {
        entropy,
        purity: purity(&rho),
        bell,
    })
}
