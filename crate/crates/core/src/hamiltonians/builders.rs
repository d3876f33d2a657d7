use crate::linalg::{pauli::PauliString, ComplexMatrix, PauliOp, C64};

use super::system::{Dispersion, Orientation};

fn d(disp: Dispersion, k: i64) -> f64 {
    disp.energy(k as f64)
}

/// Fluxon Hamiltonian at ring number `m`, basis |n=0⟩, |n=1⟩:
/// `[[m², Δ], [Δ, (m−1)²]]`.
pub fn build_single_fluxon(m: i64, delta: f64) -> ComplexMatrix {
    build_single_fluxon_with(Dispersion::Quadratic, m, delta)
}

pub fn build_single_fluxon_with(disp: Dispersion, m: i64, delta: f64) -> ComplexMatrix {
    ComplexMatrix::from_real_rows([[d(disp, m), delta], [delta, d(disp, m - 1)]])
}

/// Electron ⊗ fluxon over the two lowest ring states, basis |m n⟩ ∈
/// {|00⟩, |01⟩, |10⟩, |11⟩}, with the electron driven by `g σx`.
pub fn build_driven(delta: f64, g: f64) -> ComplexMatrix {
    build_driven_with(Dispersion::Quadratic, delta, g, 0.0)
}

/// [`build_driven`] with a chosen dispersion and an extra `g2 σy` electron term.
pub fn build_driven_with(disp: Dispersion, delta: f64, g1: f64, g2: f64) -> ComplexMatrix {
    let mut h = ComplexMatrix::from_real_rows([
        [d(disp, 0), delta, g1, 0.0],
        [delta, d(disp, -1), 0.0, g1],
        [g1, 0.0, d(disp, 1), delta],
        [0.0, g1, delta, d(disp, 0)],
    ]);
    if g2 != 0.0 {
        PauliString::new(vec![PauliOp::Y, PauliOp::I]).accumulate(C64::new(g2, 0.0), &mut h);
    }
    h
}

/// Two fluxons sharing a ring at number `m`, basis |n₁n₂⟩:
///
/// ```text
/// [[m²,  Δ,      Δ,      0 ],
///  [Δ,  (m−1)², 0,      Δ ],
///  [Δ,   0,     (m−1)², Δ ],
///  [0,   Δ,      Δ,      m²]]
/// ```
pub fn build_two_fluxon(m: i64, delta: f64) -> ComplexMatrix {
    build_two_fluxon_with(Dispersion::Quadratic, m, delta)
}

pub fn build_two_fluxon_with(disp: Dispersion, m: i64, delta: f64) -> ComplexMatrix {
    let (a, b) = (d(disp, m), d(disp, m - 1));
    ComplexMatrix::from_real_rows([
        [a, delta, delta, 0.0],
        [delta, b, 0.0, delta],
        [delta, 0.0, b, delta],
        [0.0, delta, delta, a],
    ])
}

/// Two-fluxon Hamiltonian with kinetic term (m − s₁n₁ − s₂n₂)² built from the
/// explicit orientation signs.
pub fn build_two_fluxon_physical(
    m: i64,
    delta: f64,
    s1: Orientation,
    s2: Orientation,
) -> ComplexMatrix {
    build_two_fluxon_physical_with(Dispersion::Quadratic, m, delta, s1, s2)
}

pub fn build_two_fluxon_physical_with(
    disp: Dispersion,
    m: i64,
    delta: f64,
    s1: Orientation,
    s2: Orientation,
) -> ComplexMatrix {
    let diag = |n1: i64, n2: i64| d(disp, m - s1.sign() * n1 - s2.sign() * n2);
    ComplexMatrix::from_real_rows([
        [diag(0, 0), delta, delta, 0.0],
        [delta, diag(0, 1), 0.0, delta],
        [delta, 0.0, diag(1, 0), delta],
        [0.0, delta, delta, diag(1, 1)],
    ])
}

/// Two-qubit Ising form over |electron⟩ ⊗ |fluxon⟩:
/// `(−σz⁽ᵉ⁾σz⁽ᶠ⁾ + I) + Δσx⁽ᶠ⁾ + g₁σx⁽ᵉ⁾ + g₂σy⁽ᵉ⁾`.
pub fn build_ising_two_qubit(delta: f64, g1: f64, g2: f64) -> ComplexMatrix {
    let mut h = ComplexMatrix::identity(4);
    let terms = [
        (vec![PauliOp::Z, PauliOp::Z], -1.0),
        (vec![PauliOp::I, PauliOp::X], delta),
        (vec![PauliOp::X, PauliOp::I], g1),
        (vec![PauliOp::Y, PauliOp::I], g2),
    ];
    for (ops, c) in terms {
        PauliString::new(ops).accumulate(C64::new(c, 0.0), &mut h);
    }
    h
}

/// Ring ⊗ fluxon₁ ⊗ fluxon₂ Hamiltonian restricted to the listed ring numbers.
///
/// The two-fluxon problem conserves `m`, so the result is block diagonal with
/// one [`build_two_fluxon_with`] block per entry of `m_values`.
pub fn build_ring_two_fluxon(disp: Dispersion, m_values: &[i64], delta: f64) -> ComplexMatrix {
    let n = 4 * m_values.len();
    let mut h = ComplexMatrix::zeros(n, n);
    for (block, &m) in m_values.iter().enumerate() {
        let b = build_two_fluxon_with(disp, m, delta);
        for i in 0..4 {
            for j in 0..4 {
                h[(4 * block + i, 4 * block + j)] = b[(i, j)];
            }
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kron;

    fn real(m: &ComplexMatrix) -> Vec<f64> {
        m.as_slice().iter().map(|z| z.re).collect()
    }

    #[test]
    fn single_fluxon_entries() {
        assert_eq!(
            build_single_fluxon(0, 0.0),
            ComplexMatrix::diag_real(&[0.0, 1.0])
        );
        assert_eq!(real(&build_single_fluxon(0, 5.0)), vec![0.0, 5.0, 5.0, 1.0]);
        assert_eq!(real(&build_single_fluxon(3, 2.0)), vec![9.0, 2.0, 2.0, 4.0]);
        assert_eq!(
            build_single_fluxon_with(Dispersion::Linear, 0, 0.0),
            ComplexMatrix::diag_real(&[0.0, 1.0])
        );
        assert_eq!(
            real(&build_single_fluxon_with(Dispersion::Linear, -2, 1.0)),
            vec![2.0, 1.0, 1.0, 3.0]
        );
    }

    #[test]
    fn driven_entries() {
        assert_eq!(
            build_driven(0.0, 0.0),
            ComplexMatrix::diag_real(&[0.0, 1.0, 1.0, 0.0])
        );
        #[rustfmt::skip]
        let expected = vec![
            0.0, 2.0, 0.5, 0.0,
            2.0, 1.0, 0.0, 0.5,
            0.5, 0.0, 1.0, 2.0,
            0.0, 0.5, 2.0, 0.0,
        ];
        assert_eq!(real(&build_driven(2.0, 0.5)), expected);
        let h = build_driven_with(Dispersion::Quadratic, 1.0, 0.3, 0.7);
        assert!(h.is_hermitian(0.0));
        assert_eq!(h[(0, 2)], C64::new(0.3, -0.7));
    }

    #[test]
    fn driven_without_drive_is_block_diagonal() {
        let h = build_driven(1.0, 0.0);
        let b0 = build_single_fluxon(0, 1.0);
        let b1 = build_single_fluxon(1, 1.0);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(h[(i, j)], b0[(i, j)]);
                assert_eq!(h[(2 + i, 2 + j)], b1[(i, j)]);
                assert_eq!(h[(i, 2 + j)], C64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn two_fluxon_entries() {
        assert_eq!(
            build_two_fluxon(0, 0.0),
            ComplexMatrix::diag_real(&[0.0, 1.0, 1.0, 0.0])
        );
        #[rustfmt::skip]
        let expected = vec![
            0.0, 3.0, 3.0, 0.0,
            3.0, 1.0, 0.0, 3.0,
            3.0, 0.0, 1.0, 3.0,
            0.0, 3.0, 3.0, 0.0,
        ];
        assert_eq!(real(&build_two_fluxon(0, 3.0)), expected);
    }

    #[test]
    fn physical_diagonals() {
        use Orientation::*;
        // (m − s₁n₁ − s₂n₂)² expanded by hand for n₁n₂ ∈ {00, 01, 10, 11}.
        let diag = |m, s1, s2| build_two_fluxon_physical(m, 0.0, s1, s2).diagonal();
        let re = |v: Vec<C64>| v.iter().map(|z| z.re).collect::<Vec<_>>();
        assert_eq!(re(diag(0, Forward, Reverse)), vec![0.0, 1.0, 1.0, 0.0]);
        assert_eq!(re(diag(0, Forward, Forward)), vec![0.0, 1.0, 1.0, 4.0]);
        assert_eq!(re(diag(1, Forward, Reverse)), vec![1.0, 4.0, 0.0, 1.0]);
        let h = build_two_fluxon_physical(2, 0.7, Forward, Reverse);
        assert_eq!(h[(0, 1)].re, 0.7);
        assert_eq!(h[(0, 3)].re, 0.0);
    }

    #[test]
    fn ising_entries() {
        assert_eq!(
            build_ising_two_qubit(0.0, 0.0, 0.0),
            ComplexMatrix::diag_real(&[0.0, 2.0, 2.0, 0.0])
        );
        let x = crate::linalg::sigma(PauliOp::X);
        let i2 = ComplexMatrix::identity(2);
        let expected = &ComplexMatrix::diag_real(&[0.0, 2.0, 2.0, 0.0]) + &kron(&i2, &x);
        assert_eq!(build_ising_two_qubit(1.0, 0.0, 0.0), expected);
        let g = build_ising_two_qubit(0.0, 1.0, 0.0);
        assert_eq!(
            &g - &ComplexMatrix::diag_real(&[0.0, 2.0, 2.0, 0.0]),
            kron(&x, &i2)
        );
        assert!(build_ising_two_qubit(0.4, -1.0, 2.5).is_hermitian(0.0));
    }

    #[test]
    fn ring_blocks() {
        let h = build_ring_two_fluxon(Dispersion::Quadratic, &[0, 1], 1.0);
        assert_eq!(h.rows(), 8);
        let b = build_two_fluxon(1, 1.0);
        assert_eq!(h[(5, 4)], b[(1, 0)]);
        assert_eq!(h[(0, 4)].re, 0.0);
    }
}
