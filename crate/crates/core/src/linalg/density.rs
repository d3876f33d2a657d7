//! Density operators and partial traces over tensor factors.

use super::eigen::eig_hermitian;
use super::matrix::{ComplexMatrix, C64, ZERO};
use super::state::StateVector;
use crate::error::{invalid, Error, Result};

pub const TRACE_TOLERANCE: f64 = 1e-10;
pub const POSITIVITY_TOLERANCE: f64 = 1e-10;

/// Hermitian, unit-trace, positive semidefinite operator over `dims`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    dims: Vec<usize>,
    matrix: ComplexMatrix,
}

impl DensityOperator {
    /// Validates trace, Hermiticity and positivity.
    pub fn new(dims: Vec<usize>, matrix: ComplexMatrix) -> Result<Self> {
        let total: usize = dims.iter().product();
        if dims.is_empty() || !matrix.is_square() || matrix.rows() != total {
            return Err(invalid(format!(
                "dims {dims:?} do not match {}x{} matrix",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let herm = matrix.hermiticity_error();
        if herm > 1e-12 {
            return Err(Error::InvalidState(format!(
                "density matrix not Hermitian (deviation {herm:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > TRACE_TOLERANCE {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let min = eig_hermitian(&matrix)?.values()[0];
        if min < -POSITIVITY_TOLERANCE {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { dims, matrix })
    }

    /// |ψ⟩⟨ψ|.
    pub fn from_pure(state: &StateVector) -> Self {
        let a = state.amplitudes();
        let n = a.len();
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = a[i] * a[j].conj();
            }
        }
        Self {
            dims: state.dims().to_vec(),
            matrix: m,
        }
    }

    pub(crate) fn from_parts_unchecked(dims: Vec<usize>, matrix: ComplexMatrix) -> Self {
        Self { dims, matrix }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }
}

/// Anything that can be reduced to a subset of its tensor factors.
pub trait PartialTrace {
    fn partial_trace(&self, keep: &[usize]) -> Result<DensityOperator>;
}

/// Reduced state on the factors listed in `keep` (output in ascending factor order).
pub fn partial_trace<S: PartialTrace + ?Sized>(
    state: &S,
    keep: &[usize],
) -> Result<DensityOperator> {
    state.partial_trace(keep)
}

/// Splits flat indices into (kept, traced) sub-indices.
struct Split {
    kept_dims: Vec<usize>,
    kept_dim: usize,
    traced_dim: usize,
    /// flat index → (kept index, traced index)
    map: Vec<(usize, usize)>,
}

fn split(dims: &[usize], keep: &[usize]) -> Result<Split> {
    let n = dims.len();
    let mut sorted = keep.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != keep.len() {
        return Err(invalid(format!("duplicate factor in keep set {keep:?}")));
    }
    if sorted.is_empty() || sorted.len() >= n {
        return Err(invalid(format!(
            "keep set {keep:?} must be a nonempty proper subset of {n} factors"
        )));
    }
    if let Some(&bad) = sorted.iter().find(|&&k| k >= n) {
        return Err(invalid(format!(
            "factor {bad} out of range for {n} factors"
        )));
    }
    let is_kept: Vec<bool> = (0..n).map(|f| sorted.binary_search(&f).is_ok()).collect();
    let kept_dims: Vec<usize> = sorted.iter().map(|&f| dims[f]).collect();
    let kept_dim = kept_dims.iter().product();
    let total: usize = dims.iter().product();
    let traced_dim = total / kept_dim;

    let mut map = Vec::with_capacity(total);
    for flat in 0..total {
        let digits = super::state::digits_of(dims, flat);
        let (mut k, mut t) = (0, 0);
        for f in 0..n {
            if is_kept[f] {
                k = k * dims[f] + digits[f];
            } else {
                t = t * dims[f] + digits[f];
            }
        }
        map.push((k, t));
    }
    Ok(Split {
        kept_dims,
        kept_dim,
        traced_dim,
        map,
    })
}

impl PartialTrace for StateVector {
    fn partial_trace(&self, keep: &[usize]) -> Result<DensityOperator> {
        let sp = split(self.dims(), keep)?;
        // Arrange amplitudes as M[kept][traced]; ρ = M M†.
        let mut m = vec![ZERO; sp.kept_dim * sp.traced_dim];
        for (flat, &(k, t)) in sp.map.iter().enumerate() {
            m[k * sp.traced_dim + t] = self.amplitudes()[flat];
        }
        let mut rho = ComplexMatrix::zeros(sp.kept_dim, sp.kept_dim);
        for i in 0..sp.kept_dim {
            let ri = &m[i * sp.traced_dim..(i + 1) * sp.traced_dim];
            for j in i..sp.kept_dim {
                let rj = &m[j * sp.traced_dim..(j + 1) * sp.traced_dim];
                let z: C64 = ri.iter().zip(rj).map(|(a, b)| a * b.conj()).sum();
                rho[(i, j)] = z;
                rho[(j, i)] = z.conj();
            }
            rho[(i, i)] = C64::new(rho[(i, i)].re, 0.0);
        }
        Ok(DensityOperator::from_parts_unchecked(sp.kept_dims, rho))
    }
}

impl PartialTrace for DensityOperator {
    fn partial_trace(&self, keep: &[usize]) -> Result<DensityOperator> {
        let sp = split(self.dims(), keep)?;
        let mut rho = ComplexMatrix::zeros(sp.kept_dim, sp.kept_dim);
        for (a, &(ka, ta)) in sp.map.iter().enumerate() {
            for (b, &(kb, tb)) in sp.map.iter().enumerate() {
                if ta == tb {
                    rho[(ka, kb)] += self.matrix()[(a, b)];
                }
            }
        }
        Ok(DensityOperator::from_parts_unchecked(sp.kept_dims, rho))
    }
}
