use crate::error::{invalid, Error, Result};
use crate::linalg::ComplexMatrix;

use super::builders::build_two_fluxon_with;
use super::decompose::{pauli_decompose, PauliDecomposition};
use super::system::Dispersion;

/// Largest chain accepted (a 4096-dimensional Hilbert space).
pub const MAX_CHAIN_FLUXONS: usize = 12;

/// Transverse-field Ising chain of `n_fluxons` fluxons, link `i` coupling
/// fluxons `i` and `i+1` through a ring at number `link_ms[i]`.
pub fn build_chain(n_fluxons: usize, link_ms: &[i64], delta: f64) -> Result<ComplexMatrix> {
    build_chain_with(Dispersion::Quadratic, n_fluxons, link_ms, delta)
}

pub fn build_chain_with(
    disp: Dispersion,
    n_fluxons: usize,
    link_ms: &[i64],
    delta: f64,
) -> Result<ComplexMatrix> {
    Ok(chain_decomposition(disp, n_fluxons, link_ms, delta)?.reconstruct())
}

/// Pauli coefficients of the chain.
///
/// Each link contributes the trace projection of its two-fluxon Hamiltonian at
/// sites (i, i+1). The transverse σx field is a property of the fluxon, so on
/// every site the x-fields of the adjacent links are averaged rather than
/// summed; everything else (identity, y, z fields, zz couplings) adds up.
pub fn chain_decomposition(
    disp: Dispersion,
    n_fluxons: usize,
    link_ms: &[i64],
    delta: f64,
) -> Result<PauliDecomposition> {
    if n_fluxons > MAX_CHAIN_FLUXONS {
        return Err(Error::SizeGuard {
            requested: n_fluxons,
            max: MAX_CHAIN_FLUXONS,
        });
    }
    if n_fluxons < 2 {
        return Err(invalid(format!(
            "a chain needs at least 2 fluxons, got {n_fluxons}"
        )));
    }
    if link_ms.len() + 1 != n_fluxons {
        return Err(invalid(format!(
            "{} link ring numbers given for {n_fluxons} fluxons",
            link_ms.len()
        )));
    }
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(invalid(format!(
            "delta must be finite and >= 0, got {delta}"
        )));
    }

    let mut dec = PauliDecomposition::zeros(n_fluxons);
    let mut x_links = vec![0usize; n_fluxons];
    for j in 0..n_fluxons {
        for i in 0..j {
            dec.zz_couplings.insert((i, j), 0.0);
        }
    }
    for (link, &m) in link_ms.iter().enumerate() {
        let pair = pauli_decompose(&build_two_fluxon_with(disp, m, delta), 2)?;
        dec.h0 += pair.h0;
        for (k, f) in pair.fields.iter().enumerate() {
            let site = link + k;
            for (acc, c) in dec.fields[site].iter_mut().zip(f) {
                *acc += c;
            }
            x_links[site] += 1;
        }
        *dec.zz_couplings
            .get_mut(&(link, link + 1))
            .expect("pair present") += pair.coupling(0, 1);
    }
    for (f, &count) in dec.fields.iter_mut().zip(&x_links) {
        f[0] /= count as f64;
    }
    Ok(dec)
}
