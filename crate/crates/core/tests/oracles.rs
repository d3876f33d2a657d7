//! Independent reference computations checked against the library.

use fluxon_core::dynamics::{
    chain_transport_experiment, evolve, propagator, quench_experiment, teleport_experiment,
};
use fluxon_core::entanglement::{von_neumann_entropy, EntropyBase};
use fluxon_core::hamiltonians::{build_ring_two_fluxon, build_two_fluxon, Dispersion};
use fluxon_core::linalg::{eig_hermitian, partial_trace, ComplexMatrix, StateVector, C64};

/// Truncated Taylor series with scaling and squaring; independent of the
/// eigensolver-based propagator.
fn expm_taylor(h: &ComplexMatrix, t: f64) -> ComplexMatrix {
    let n = h.rows();
    let norm = h.max_abs() * n as f64 * t.abs();
    let squarings = (norm.max(1.0).log2().ceil() as i32 + 4).max(0) as u32;
    let step = t / 2f64.powi(squarings as i32);
    let a = h.scale(C64::new(0.0, -step));
    let mut term = ComplexMatrix::identity(n);
    let mut sum = ComplexMatrix::identity(n);
    for k in 1..30 {
        term = (&term * &a).scale_real(1.0 / k as f64);
        sum = &sum + &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

#[test]
fn two_fluxon_eigenvalues_match_hand_evaluated_closed_forms() {
    // m = 0, Δ = 1: (m−1)² = 1, m² = 0, ½(1 ± √17).
    let s = 17f64.sqrt();
    let mut expected = vec![1.0, 0.0, 0.5 * (1.0 + s), 0.5 * (1.0 - s)];
    expected.sort_by(f64::total_cmp);
    let e = eig_hermitian(&build_two_fluxon(0, 1.0)).unwrap();
    for (a, b) in e.values().iter().zip(&expected) {
        assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }
    assert!((expected[0] + 1.5616).abs() < 1e-4);
    assert!((expected[3] - 2.5616).abs() < 1e-4);
}

/// ⟨10|U(t)|01⟩ for the m = 0, Δ = 1 two-fluxon matrix.
///
/// |01⟩ = (Ψ+ + Ψ−)/√2 and |10⟩ = (Ψ+ − Ψ−)/√2. Ψ− is an eigenvector with
/// energy (m−1)² = 1. Ψ+ mixes with Φ+ through the 2x2 block [[0, 2], [2, 1]]
/// whose eigenvectors are (2, λ)/√(4 + λ²), λ± = (1 ± √17)/2, so
/// ⟨Ψ+|U|Ψ+⟩ = Σ± λ±²/(4 + λ±²) e^{−iλ±t}.
fn transfer_amplitude(t: f64) -> C64 {
    let s = 17f64.sqrt();
    let c: C64 = [0.5 * (1.0 + s), 0.5 * (1.0 - s)]
        .iter()
        .map(|&l| C64::from_polar(l * l / (4.0 + l * l), -l * t))
        .sum();
    (c - C64::from_polar(1.0, -t)) * 0.5
}

#[test]
fn propagator_transfer_amplitude_matches_block_reduction() {
    let h = build_two_fluxon(0, 1.0);
    for &t in &[0.0, 0.37, 1.0, 3.0, 6.1, 11.5] {
        let u = propagator(&h, t).unwrap();
        let got = u[(2, 1)];
        let want = transfer_amplitude(t);
        assert!((got - want).norm() < 1e-12, "t={t}: {got} vs {want}");
        assert!(u.max_abs_diff(&expm_taylor(&h, t)) < 1e-10);
    }
}

#[test]
fn evolve_reproduces_transfer_probability() {
    let h = build_two_fluxon(0, 1.0);
    let psi = StateVector::basis(vec![2, 2], &[0, 1]).unwrap();
    let times: Vec<f64> = (0..200).map(|k| k as f64 * 0.06).collect();
    for (s, &t) in evolve(&h, &psi, &times).unwrap().iter().zip(&times) {
        let p = s.probability(&[1, 0]).unwrap();
        assert!((p - transfer_amplitude(t).norm_sqr()).abs() < 1e-12);
    }
}

#[test]
fn teleport_peak_matches_dense_scan() {
    // Brute-force scan of |⟨10|U(t)|01⟩|² on the same grid.
    let (mut best, mut best_t) = (0.0, 0.0);
    for k in 0..=1200 {
        let t = k as f64 * 0.01;
        let p = transfer_amplitude(t).norm_sqr();
        if p > best {
            best = p;
            best_t = t;
        }
    }
    let r = teleport_experiment(1.0, 0, 12.0, 0.01).unwrap();
    assert!((r.peak_value - best).abs() < 1e-10);
    assert!((r.peak_time - best_t).abs() < 1e-12);
    assert!(r.peak_value >= 0.99 && (5.6..=6.6).contains(&r.peak_time));
}

/// Fluxon-1 reduced state from an explicit 8-amplitude ring⊗f1⊗f2 vector:
/// ρ[a][a'] = Σ_{r,b} ψ[r,a,b] conj(ψ[r,a',b]).
fn brute_reduced_f1(psi: &[C64]) -> [[C64; 2]; 2] {
    let mut rho = [[C64::new(0.0, 0.0); 2]; 2];
    for a in 0..2 {
        for ap in 0..2 {
            for r in 0..2 {
                for b in 0..2 {
                    rho[a][ap] += psi[r * 4 + a * 2 + b] * psi[r * 4 + ap * 2 + b].conj();
                }
            }
        }
    }
    rho
}

#[test]
fn teleport_midway_partial_trace() {
    let h = build_ring_two_fluxon(Dispersion::Quadratic, &[0, 1], 1.0);
    let u = expm_taylor(&h, 3.0);
    let psi0 = StateVector::basis(vec![2, 2, 2], &[0, 0, 1]).unwrap();
    let psi_ref = u.mul_vec(psi0.amplitudes()).unwrap();
    let brute = brute_reduced_f1(&psi_ref);

    let psi = &evolve(&h, &psi0, &[3.0]).unwrap()[0];
    let rho = partial_trace(psi, &[1]).unwrap();
    for (a, row) in brute.iter().enumerate() {
        for (b, &x) in row.iter().enumerate() {
            assert!((rho.matrix()[(a, b)] - x).norm() < 1e-10);
        }
    }
    let s = von_neumann_entropy(&rho, EntropyBase::Bits).unwrap().value;
    assert!(s > 0.0 && s < 1.0, "entropy {s}");
}

#[test]
fn quench_entropy_grows_under_drive() {
    let r = quench_experiment(1.0, 0.5, 20.0, 0.01).unwrap();
    let s = r.series.channel("S_f").unwrap();
    let e = r.series.channel("E_f").unwrap();
    assert_eq!(s[0], 0.0);
    assert!(r.peak_value > 1e-3);
    let e_max = e.iter().copied().fold(f64::MIN, f64::max);
    assert!(e_max > e[0]);
    // ⟨Δσx⟩ of the ground state of [[0, 1], [1, 1]] is −2/√5.
    assert!((e[0] + 2.0 / 5f64.sqrt()).abs() < 1e-12);
}

#[test]
fn chain_excitation_spreads() {
    let r = chain_transport_experiment(4, &[0, 0, 0], 1.0, 0, 20.0, 0.05).unwrap();
    assert!(r.peak_value > 0.1);
    assert!(r.peak_time <= 20.0);

    // Same quantity from a Taylor-series propagator at the peak time.
    let h = fluxon_core::hamiltonians::build_chain(4, &[0, 0, 0], 1.0).unwrap();
    let psi0 = StateVector::basis(vec![2; 4], &[1, 0, 0, 0]).unwrap();
    let psi = expm_taylor(&h, r.peak_time)
        .mul_vec(psi0.amplitudes())
        .unwrap();
    let s = StateVector::new(vec![2; 4], psi).unwrap();
    let occ = fluxon_core::dynamics::site_occupations(&s, 4);
    let other = occ[1..].iter().copied().fold(0.0, f64::max);
    assert!((other - r.peak_value).abs() < 1e-9);
}

#[test]
fn decoupled_chain_is_frozen() {
    let r = chain_transport_experiment(3, &[1, -1], 0.0, 1, 5.0, 0.5).unwrap();
    for site in 0..3 {
        let expected = if site == 1 { 1.0 } else { 0.0 };
        for &p in r.series.channel(&format!("P_site{site}")).unwrap() {
            assert!((p - expected).abs() < 1e-14);
        }
    }
}

#[test]
fn two_site_chain_matches_teleport() {
    let chain = chain_transport_experiment(2, &[0], 1.0, 1, 8.0, 0.05).unwrap();
    let tele = teleport_experiment(1.0, 0, 8.0, 0.05).unwrap();
    let p0 = chain.series.channel("P_site0").unwrap();
    let p10 = tele.series.channel("P_10").unwrap();
    let p11 = tele.series.channel("P_11").unwrap();
    for k in 0..p0.len() {
        assert!((p0[k] - (p10[k] + p11[k])).abs() < 1e-10);
    }
}
