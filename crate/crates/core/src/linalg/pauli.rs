//! Pauli operators on qubit registers.
//!
//! Convention: σz|0⟩ = +|0⟩ and σz|1⟩ = −|1⟩. Site 0 is the leftmost tensor
//! factor, i.e. the most significant bit of the flattened basis index.

use std::fmt;

use super::matrix::{kron, ComplexMatrix, C64, ONE, ZERO};
use crate::error::{invalid, Result};

const I_UNIT: C64 = C64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PauliOp {
    I,
    X,
    Y,
    Z,
}

impl PauliOp {
    /// Image of a single-qubit basis state: `op|bit⟩ = phase |bit'⟩`.
    #[inline]
    pub fn act(self, bit: usize) -> (C64, usize) {
        match (self, bit) {
            (PauliOp::I, b) => (ONE, b),
            (PauliOp::X, b) => (ONE, b ^ 1),
            (PauliOp::Y, 0) => (I_UNIT, 1),
            (PauliOp::Y, _) => (-I_UNIT, 0),
            (PauliOp::Z, 0) => (ONE, 0),
            (PauliOp::Z, _) => (-ONE, 1),
        }
    }

    pub fn label(self) -> char {
        match self {
            PauliOp::I => 'I',
            PauliOp::X => 'X',
            PauliOp::Y => 'Y',
            PauliOp::Z => 'Z',
        }
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// The 2x2 matrix of a single Pauli operator.
pub fn sigma(op: PauliOp) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    for col in 0..2 {
        let (phase, row) = op.act(col);
        m[(row, col)] = phase;
    }
    m
}

/// Single-site Pauli `op` embedded at `site` of an `n_sites` qubit register.
pub fn pauli(op: PauliOp, site: usize, n_sites: usize) -> Result<ComplexMatrix> {
    if site >= n_sites {
        return Err(invalid(format!(
            "site {site} out of range for {n_sites} sites"
        )));
    }
    let mut ops = vec![PauliOp::I; n_sites];
    ops[site] = op;
    Ok(PauliString::new(ops).matrix())
}

/// Tensor product of single-site Pauli operators, one per site.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    ops: Vec<PauliOp>,
}

impl PauliString {
    pub fn new(ops: Vec<PauliOp>) -> Self {
        Self { ops }
    }

    pub fn identity(n_sites: usize) -> Self {
        Self::new(vec![PauliOp::I; n_sites])
    }

    /// Identity everywhere except the listed `(site, op)` pairs.
    pub fn with_sites(n_sites: usize, sites: &[(usize, PauliOp)]) -> Result<Self> {
        let mut ops = vec![PauliOp::I; n_sites];
        for &(site, op) in sites {
            if site >= n_sites {
                return Err(invalid(format!(
                    "site {site} out of range for {n_sites} sites"
                )));
            }
            ops[site] = op;
        }
        Ok(Self::new(ops))
    }

    pub fn n_sites(&self) -> usize {
        self.ops.len()
    }

    pub fn ops(&self) -> &[PauliOp] {
        &self.ops
    }

    /// Image of a computational basis state: `P|index⟩ = phase |index'⟩`.
    pub fn act(&self, index: usize) -> (C64, usize) {
        let n = self.ops.len();
        let mut phase = ONE;
        let mut out = index;
        for (site, &op) in self.ops.iter().enumerate() {
            if op == PauliOp::I {
                continue;
            }
            let shift = n - 1 - site;
            let bit = (index >> shift) & 1;
            let (p, b) = op.act(bit);
            phase *= p;
            out = (out & !(1 << shift)) | (b << shift);
        }
        (phase, out)
    }

    /// Tr(P·H) using the permutation structure of P.
    pub fn trace_with(&self, h: &ComplexMatrix) -> C64 {
        // (P·H)_{ii} = Σ_k P_{ik} H_{ki}; P has a single nonzero P_{π(k),k} per column.
        let dim = 1usize << self.ops.len();
        (0..dim)
            .map(|k| {
                let (phase, i) = self.act(k);
                phase * h[(k, i)]
            })
            .sum()
    }

    /// Adds `coeff · P` to `target` in place.
    pub fn accumulate(&self, coeff: C64, target: &mut ComplexMatrix) {
        if coeff == ZERO {
            return;
        }
        let dim = 1usize << self.ops.len();
        for k in 0..dim {
            let (phase, i) = self.act(k);
            target[(i, k)] += coeff * phase;
        }
    }

    pub fn matrix(&self) -> ComplexMatrix {
        self.ops
            .iter()
            .fold(ComplexMatrix::identity(1), |acc, &op| {
                kron(&acc, &sigma(op))
            })
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.ops {
            write!(f, "{op}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_z_convention() {
        assert_eq!(
            pauli(PauliOp::Z, 0, 1).unwrap(),
            ComplexMatrix::diag_real(&[1.0, -1.0])
        );
    }

    #[test]
    fn sigma_x_flips() {
        let x = pauli(PauliOp::X, 0, 1).unwrap();
        assert_eq!(x.mul_vec(&[ONE, ZERO]).unwrap(), vec![ZERO, ONE]);
    }

    #[test]
    fn embedding_order() {
        assert_eq!(
            pauli(PauliOp::Z, 1, 2).unwrap(),
            ComplexMatrix::diag_real(&[1.0, -1.0, 1.0, -1.0])
        );
    }

    #[test]
    fn site_out_of_range() {
        assert!(pauli(PauliOp::X, 2, 2).is_err());
        assert!(PauliString::with_sites(2, &[(3, PauliOp::Z)]).is_err());
    }

    #[test]
    fn pauli_algebra() {
        let x = sigma(PauliOp::X);
        let y = sigma(PauliOp::Y);
        let z = sigma(PauliOp::Z);
        // xy = iz
        assert_eq!(&x * &y, z.scale(I_UNIT));
        for m in [&x, &y, &z] {
            assert!(m.is_hermitian(0.0));
            assert_eq!(m * m, ComplexMatrix::identity(2));
        }
    }

    #[test]
    fn string_action_matches_matrix() {
        let s = PauliString::new(vec![PauliOp::Y, PauliOp::Z, PauliOp::X]);
        let m = s.matrix();
        let mut acc = ComplexMatrix::zeros(8, 8);
        s.accumulate(ONE, &mut acc);
        assert_eq!(acc, m);
        assert_eq!(s.trace_with(&m), C64::new(8.0, 0.0));
    }
}
