use std::collections::BTreeMap;

use crate::error::{invalid, Error, Result};
use crate::linalg::eigen::HERMITIAN_TOLERANCE;
use crate::linalg::{ComplexMatrix, PauliOp, PauliString, C64};

/// Largest elementwise reconstruction error accepted by [`pauli_decompose`].
pub const REPRESENTABILITY_TOLERANCE: f64 = 1e-10;

/// `h0·I + Σᵢ (hx σx + hy σy + hz σz)⁽ⁱ⁾ + Σᵢ<ⱼ Jᵢⱼ σz⁽ⁱ⁾σz⁽ʲ⁾`.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliDecomposition {
    pub n_sites: usize,
    pub h0: f64,
    /// Per-site `[hx, hy, hz]`.
    pub fields: Vec<[f64; 3]>,
    /// zz couplings keyed by `(i, j)` with `i < j`.
    pub zz_couplings: BTreeMap<(usize, usize), f64>,
}

impl PauliDecomposition {
    pub fn zeros(n_sites: usize) -> Self {
        Self {
            n_sites,
            h0: 0.0,
            fields: vec![[0.0; 3]; n_sites],
            zz_couplings: BTreeMap::new(),
        }
    }

    pub fn coupling(&self, i: usize, j: usize) -> f64 {
        let key = if i < j { (i, j) } else { (j, i) };
        self.zz_couplings.get(&key).copied().unwrap_or(0.0)
    }

    /// Every term as `(pauli string, coefficient)`, identity first.
    pub fn terms(&self) -> Vec<(PauliString, f64)> {
        let n = self.n_sites;
        let mut out = vec![(PauliString::identity(n), self.h0)];
        for (site, f) in self.fields.iter().enumerate() {
            for (op, &c) in [PauliOp::X, PauliOp::Y, PauliOp::Z].into_iter().zip(f) {
                let s = PauliString::with_sites(n, &[(site, op)]).expect("site in range");
                out.push((s, c));
            }
        }
        for (&(i, j), &c) in &self.zz_couplings {
            let s = PauliString::with_sites(n, &[(i, PauliOp::Z), (j, PauliOp::Z)])
                .expect("sites in range");
            out.push((s, c));
        }
        out
    }

    /// Dense matrix of the expansion.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let dim = 1usize << self.n_sites;
        let mut h = ComplexMatrix::zeros(dim, dim);
        for (s, c) in self.terms() {
            s.accumulate(C64::new(c, 0.0), &mut h);
        }
        h
    }
}

/// Expands a Hermitian `2^n_sites` matrix on identity, single-site Pauli and
/// zz-pair terms by trace projection, c_P = Tr(P·H) / 2^n.
///
/// Fails with [`Error::NonRepresentable`] when H has components outside that set.
pub fn pauli_decompose(h: &ComplexMatrix, n_sites: usize) -> Result<PauliDecomposition> {
    if n_sites == 0 || n_sites >= usize::BITS as usize || !h.is_square() || h.rows() != 1 << n_sites
    {
        return Err(invalid(format!(
            "{}x{} matrix is not a {n_sites}-qubit operator",
            h.rows(),
            h.cols()
        )));
    }
    let herm = h.hermiticity_error();
    if herm > HERMITIAN_TOLERANCE {
        return Err(invalid(format!(
            "matrix is not Hermitian (deviation {herm:e})"
        )));
    }
    let norm = (1usize << n_sites) as f64;
    let project = |s: &PauliString| s.trace_with(h).re / norm;

    let mut dec = PauliDecomposition::zeros(n_sites);
    dec.h0 = project(&PauliString::identity(n_sites));
    for site in 0..n_sites {
        for (k, op) in [PauliOp::X, PauliOp::Y, PauliOp::Z].into_iter().enumerate() {
            let s = PauliString::with_sites(n_sites, &[(site, op)])?;
            dec.fields[site][k] = project(&s);
        }
    }
    for i in 0..n_sites {
        for j in (i + 1)..n_sites {
            let s = PauliString::with_sites(n_sites, &[(i, PauliOp::Z), (j, PauliOp::Z)])?;
            dec.zz_couplings.insert((i, j), project(&s));
        }
    }

    let residual = dec.reconstruct().max_abs_diff(h);
    if residual > REPRESENTABILITY_TOLERANCE {
        return Err(Error::NonRepresentable { residual });
    }
    Ok(dec)
}

/// Alternative closed-form coefficient sets that are commonly quoted for the
/// one- and two-fluxon matrices. They do not reproduce those matrices under
/// trace projection and are kept only for side-by-side reporting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuotedCoefficients {
    pub h0: f64,
    pub field: [f64; 3],
    /// Present for the two-fluxon form only.
    pub j: Option<f64>,
}

impl QuotedCoefficients {
    /// h₀ = m² − m + 1, h = (Δ, 0, m − ½).
    pub fn single_fluxon(m: i64, delta: f64) -> Self {
        let m = m as f64;
        Self {
            h0: m * m - m + 1.0,
            field: [delta, 0.0, m - 0.5],
            j: None,
        }
    }

    /// h₀ = m², h = g = (Δ, 0, m − ½), J = 2m − 1.
    pub fn two_fluxon(m: i64, delta: f64) -> Self {
        let m = m as f64;
        Self {
            h0: m * m,
            field: [delta, 0.0, m - 0.5],
            j: Some(2.0 * m - 1.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonians::{build_single_fluxon, build_two_fluxon};

    #[test]
    fn single_fluxon_projection() {
        for m in [-3i64, 0, 1, 4] {
            let dec = pauli_decompose(&build_single_fluxon(m, 2.5), 1).unwrap();
            let mf = m as f64;
            assert!((dec.h0 - (mf * mf - mf + 0.5)).abs() < 1e-14);
            assert!((dec.fields[0][0] - 2.5).abs() < 1e-14);
            assert_eq!(dec.fields[0][1], 0.0);
            assert!((dec.fields[0][2] - (mf - 0.5)).abs() < 1e-14);
        }
    }

    #[test]
    fn two_fluxon_projection() {
        for m in [-2i64, 0, 1, 3] {
            let dec = pauli_decompose(&build_two_fluxon(m, 1.5), 2).unwrap();
            let mf = m as f64;
            assert!((dec.h0 - (mf * mf - mf + 0.5)).abs() < 1e-14);
            for f in &dec.fields {
                assert_eq!(*f, [1.5, 0.0, 0.0]);
            }
            assert!((dec.coupling(0, 1) - (2.0 * mf - 1.0) / 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn quoted_sets_differ_from_projection() {
        let q = QuotedCoefficients::single_fluxon(0, 1.0);
        let dec = pauli_decompose(&build_single_fluxon(0, 1.0), 1).unwrap();
        assert_eq!(q.h0, 1.0);
        assert_eq!(dec.h0, 0.5);
        let q = QuotedCoefficients::two_fluxon(2, 1.0);
        assert_eq!(q.j, Some(3.0));
    }

    #[test]
    fn rejects_terms_outside_ansatz() {
        let xx = PauliString::new(vec![PauliOp::X, PauliOp::X]).matrix();
        assert!(matches!(
            pauli_decompose(&xx, 2),
            Err(Error::NonRepresentable { residual }) if residual > 0.5
        ));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(pauli_decompose(&ComplexMatrix::identity(3), 1).is_err());
        assert!(pauli_decompose(&ComplexMatrix::identity(4), 1).is_err());
        let mut h = ComplexMatrix::identity(2);
        h[(0, 1)] = C64::new(1.0, 0.0);
        assert!(pauli_decompose(&h, 1).is_err());
    }
}
