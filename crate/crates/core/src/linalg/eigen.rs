//! Cyclic Jacobi eigensolver for dense Hermitian matrices.

use super::matrix::{ComplexMatrix, C64, ZERO};
use crate::error::{invalid, Error, Result};

/// Maximum allowed |H[i][j] − conj(H[j][i])| on input.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiConfig {
    /// Sweeps stop once the off-diagonal Frobenius norm drops below
    /// `threshold · max(1, ‖H‖_F)`.
    pub threshold: f64,
    pub max_sweeps: usize,
}

impl Default for JacobiConfig {
    fn default() -> Self {
        Self {
            threshold: 1e-13,
            max_sweeps: 100,
        }
    }
}

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
///
/// Each eigenvector's largest-magnitude component (first one on ties) is real
/// and non-negative, which makes the decomposition reproducible bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    values: Vec<f64>,
    /// Eigenvectors stored as columns.
    vectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Column matrix of eigenvectors.
    pub fn vectors(&self) -> &ComplexMatrix {
        &self.vectors
    }

    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// V diag(λ) V†.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.spectral_map(|l| C64::new(l, 0.0))
    }

    /// V diag(f(λ)) V†.
    pub fn spectral_map(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let n = self.values.len();
        let weights: Vec<C64> = self.values.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n, n);
        let v = &self.vectors;
        for i in 0..n {
            for j in 0..n {
                let mut acc = ZERO;
                for k in 0..n {
                    acc += v[(i, k)] * weights[k] * v[(j, k)].conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    /// Largest relative residual ‖H v_k − λ_k v_k‖ / max(1, |λ_k|).
    pub fn max_residual(&self, h: &ComplexMatrix) -> f64 {
        (0..self.len())
            .map(|k| {
                let v = self.vector(k);
                let hv = h.mul_vec(&v).expect("dimension mismatch");
                let r: f64 = hv
                    .iter()
                    .zip(&v)
                    .map(|(a, b)| (a - b * self.values[k]).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                r / self.values[k].abs().max(1.0)
            })
            .fold(0.0, f64::max)
    }
}

pub fn eig_hermitian(h: &ComplexMatrix) -> Result<EigenDecomposition> {
    eig_hermitian_with(h, JacobiConfig::default())
}

pub fn eig_hermitian_with(h: &ComplexMatrix, config: JacobiConfig) -> Result<EigenDecomposition> {
    if !h.is_square() {
        return Err(invalid(format!(
            "eigensolver needs a square matrix, got {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    let herm_err = h.hermiticity_error();
    if herm_err > HERMITIAN_TOLERANCE {
        return Err(invalid(format!(
            "matrix is not Hermitian (deviation {herm_err:e})"
        )));
    }
    let n = h.rows();
    let mut a = h.clone();
    // Start from the exactly Hermitian part with a real diagonal.
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let tol = config.threshold * h.frobenius_norm().max(1.0);

    let mut converged = false;
    let mut off = off_diagonal_norm(&a);
    for _ in 0..config.max_sweeps {
        if off <= tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        off = off_diagonal_norm(&a);
    }
    if !converged && off > tol {
        return Err(Error::NoConvergence {
            size: n,
            sweeps: config.max_sweeps,
            residual: off,
        });
    }

    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    // Stable sort keeps original index order among equal eigenvalues.
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        let mut col = v.column(old_col);
        fix_phase(&mut col);
        for (row, z) in col.into_iter().enumerate() {
            vectors[(row, new_col)] = z;
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            sum += a[(i, j)].norm_sqr();
        }
    }
    (2.0 * sum).sqrt()
}

/// Applies the unitary rotation J that annihilates a[p][q]: a ← J† a J, v ← v J.
///
/// With a[p][q] = r·e, |e| = 1, J = diag(1, ē) · [[c, s], [−s, c]] on (p, q).
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let n = a.rows();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let e = apq / r;
    let ec = e.conj();

    // Columns: a ← a J.
    {
        let data = a.as_mut_slice();
        for k in 0..n {
            let akp = data[k * n + p];
            let akq = data[k * n + q];
            data[k * n + p] = akp * c - akq * ec * s;
            data[k * n + q] = akp * s + akq * ec * c;
        }
        // Rows: a ← J† a.
        for k in 0..n {
            let apk = data[p * n + k];
            let aqk = data[q * n + k];
            data[p * n + k] = apk * c - aqk * e * s;
            data[q * n + k] = apk * s + aqk * e * c;
        }
        data[p * n + q] = ZERO;
        data[q * n + p] = ZERO;
        data[p * n + p] = C64::new(app - t * r, 0.0);
        data[q * n + q] = C64::new(aqq + t * r, 0.0);
    }
    let vd = v.as_mut_slice();
    for k in 0..n {
        let vkp = vd[k * n + p];
        let vkq = vd[k * n + q];
        vd[k * n + p] = vkp * c - vkq * ec * s;
        vd[k * n + q] = vkp * s + vkq * ec * c;
    }
}

/// Rotates the global phase so the dominant component is real and ≥ 0.
fn fix_phase(col: &mut [C64]) {
    let max = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return;
    }
    let k = col
        .iter()
        .position(|z| z.norm() >= max * (1.0 - 1e-12))
        .expect("maximum exists");
    let phase = col[k].conj() / col[k].norm();
    for z in col.iter_mut() {
        *z *= phase;
    }
    col[k] = C64::new(col[k].norm(), 0.0);
}
