use super::matrix::{kron_vec, ComplexMatrix, C64, ONE, ZERO};
use crate::error::{invalid, Error, Result};

/// Tolerance on the norm of a state vector.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Pure state over a tensor product of subsystems.
///
/// `dims` lists the factor dimensions; factor 0 is the most significant index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    dims: Vec<usize>,
    amplitudes: Vec<C64>,
}

impl StateVector {
    /// Wraps amplitudes without normalizing them.
    pub fn new(dims: Vec<usize>, amplitudes: Vec<C64>) -> Result<Self> {
        check_dims(&dims)?;
        let total: usize = dims.iter().product();
        if total != amplitudes.len() {
            return Err(invalid(format!(
                "dims {dims:?} need {total} amplitudes, got {}",
                amplitudes.len()
            )));
        }
        Ok(Self { dims, amplitudes })
    }

    /// Like [`StateVector::new`] but rescales to unit norm.
    pub fn normalized(dims: Vec<usize>, amplitudes: Vec<C64>) -> Result<Self> {
        let mut s = Self::new(dims, amplitudes)?;
        let norm = s.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        for a in &mut s.amplitudes {
            *a /= norm;
        }
        Ok(s)
    }

    /// Computational basis state with one digit per factor.
    pub fn basis(dims: Vec<usize>, digits: &[usize]) -> Result<Self> {
        check_dims(&dims)?;
        let index = flat_index(&dims, digits)?;
        let mut amplitudes = vec![ZERO; dims.iter().product()];
        amplitudes[index] = ONE;
        Ok(Self { dims, amplitudes })
    }

    /// Tensor product of per-factor states.
    pub fn product(factors: &[&[C64]]) -> Result<Self> {
        if factors.is_empty() {
            return Err(invalid("product state needs at least one factor"));
        }
        let dims = factors.iter().map(|f| f.len()).collect();
        let amplitudes = factors[1..]
            .iter()
            .fold(factors[0].to_vec(), |acc, f| kron_vec(&acc, f));
        Self::new(dims, amplitudes)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn amplitude(&self, digits: &[usize]) -> Result<C64> {
        Ok(self.amplitudes[flat_index(&self.dims, digits)?])
    }

    pub fn probability(&self, digits: &[usize]) -> Result<f64> {
        Ok(self.amplitude(digits)?.norm_sqr())
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= NORM_TOLERANCE
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.dims != other.dims {
            return Err(invalid(format!(
                "dims differ: {:?} vs {:?}",
                self.dims, other.dims
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Re⟨ψ|O|ψ⟩ for a Hermitian observable.
    pub fn expectation(&self, op: &ComplexMatrix) -> Result<f64> {
        let o_psi = op.mul_vec(&self.amplitudes)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&o_psi)
            .map(|(a, b)| a.conj() * b)
            .sum::<C64>()
            .re)
    }

    /// Returns the state with `op` applied (not renormalized).
    pub fn apply(&self, op: &ComplexMatrix) -> Result<StateVector> {
        Ok(StateVector {
            dims: self.dims.clone(),
            amplitudes: op.mul_vec(&self.amplitudes)?,
        })
    }

    /// Same amplitudes, different factorization of the same total dimension.
    pub fn reshaped(&self, dims: Vec<usize>) -> Result<StateVector> {
        StateVector::new(dims, self.amplitudes.clone())
    }
}

fn check_dims(dims: &[usize]) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(invalid(format!("invalid subsystem dims {dims:?}")));
    }
    Ok(())
}

/// Flattened index of per-factor digits, leftmost factor most significant.
pub fn flat_index(dims: &[usize], digits: &[usize]) -> Result<usize> {
    if digits.len() != dims.len() {
        return Err(invalid(format!(
            "expected {} digits for dims {dims:?}, got {}",
            dims.len(),
            digits.len()
        )));
    }
    let mut index = 0;
    for (&d, &x) in dims.iter().zip(digits) {
        if x >= d {
            return Err(invalid(format!(
                "digit {x} out of range for factor of dim {d}"
            )));
        }
        index = index * d + x;
    }
    Ok(index)
}

/// Per-factor digits of a flattened index.
pub fn digits_of(dims: &[usize], mut index: usize) -> Vec<usize> {
    let mut digits = vec![0; dims.len()];
    for (slot, &d) in digits.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
    digits
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_and_digits() {
        let s = StateVector::basis(vec![3, 2, 2], &[1, 0, 1]).unwrap();
        assert_eq!(s.dim(), 12);
        assert_eq!(s.amplitudes()[5], ONE);
        assert_eq!(digits_of(&[3, 2, 2], 5), vec![1, 0, 1]);
        assert!(StateVector::basis(vec![2, 2], &[2, 0]).is_err());
    }

    #[test]
    fn product_matches_kron() {
        let h = C64::new(1.0 / 2f64.sqrt(), 0.0);
        let s = StateVector::product(&[&[ONE, ZERO], &[h, h]]).unwrap();
        assert_eq!(s.dims(), &[2, 2]);
        assert_eq!(s.amplitudes(), &[h, h, ZERO, ZERO]);
        assert!(s.is_normalized());
    }

    #[test]
    fn rejects_mismatched_amplitudes() {
        assert!(StateVector::new(vec![2, 2], vec![ONE; 3]).is_err());
        assert!(StateVector::new(vec![], vec![]).is_err());
        assert!(StateVector::normalized(vec![2], vec![ZERO, ZERO]).is_err());
    }
}
