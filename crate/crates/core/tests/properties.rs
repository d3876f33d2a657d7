use fluxon_core::dynamics::{evolve, Propagator};
use fluxon_core::entanglement::{entanglement_report, purity, EntropyBase};
use fluxon_core::hamiltonians::{
    build_chain, build_driven, build_ising_two_qubit, build_single_fluxon, build_two_fluxon,
    build_two_fluxon_physical, pauli_decompose, Orientation, PauliDecomposition,
};
use fluxon_core::linalg::{eig_hermitian, partial_trace, ComplexMatrix, StateVector, C64};
use proptest::prelude::*;

fn hermitian(n: usize, entries: &[(f64, f64)]) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(n, n);
    let mut it = entries.iter();
    for i in 0..n {
        for j in i..n {
            let &(re, im) = it.next().unwrap();
            if i == j {
                h[(i, i)] = C64::new(re, 0.0);
            } else {
                h[(i, j)] = C64::new(re, im);
                h[(j, i)] = C64::new(re, -im);
            }
        }
    }
    h
}

fn arb_hermitian(max_n: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64), n * (n + 1) / 2)
            .prop_map(move |e| hermitian(n, &e))
    })
}

fn arb_state(dims: Vec<usize>) -> impl Strategy<Value = StateVector> {
    let total: usize = dims.iter().product();
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), total)
        .prop_filter("nonzero", |v| {
            v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3)
        })
        .prop_map(move |v| {
            let amps = v.into_iter().map(|(a, b)| C64::new(a, b)).collect();
            StateVector::normalized(dims.clone(), amps).unwrap()
        })
}

fn check_eigen(h: &ComplexMatrix) {
    let e = eig_hermitian(h).unwrap();
    assert!(e.reconstruct().max_abs_diff(h) <= 1e-10 * h.max_abs().max(1.0));
    assert!(e.max_residual(h) <= 1e-10);
    let v = e.vectors();
    let gram = &v.adjoint() * v;
    assert!(gram.max_abs_diff(&ComplexMatrix::identity(h.rows())) <= 1e-10);
    assert!(e.values().windows(2).all(|w| w[0] <= w[1]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigen_reconstruction(h in arb_hermitian(24)) {
        check_eigen(&h);
    }

    #[test]
    fn partial_trace_composes(s in arb_state(vec![2, 3, 2])) {
        // Trace factor 0 then (old) factor 2, versus tracing both at once.
        let step = partial_trace(&partial_trace(&s, &[1, 2]).unwrap(), &[0]).unwrap();
        let joint = partial_trace(&s, &[1]).unwrap();
        prop_assert!(step.matrix().max_abs_diff(joint.matrix()) <= 1e-12);
        prop_assert!((joint.trace() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn product_states_have_pure_marginals(a in arb_state(vec![2]), b in arb_state(vec![3])) {
        let s = StateVector::product(&[a.amplitudes(), b.amplitudes()]).unwrap();
        for keep in [0usize, 1] {
            let rho = partial_trace(&s, &[keep]).unwrap();
            prop_assert!((purity(&rho) - 1.0).abs() <= 1e-10);
            let r = entanglement_report(&s, &[keep], EntropyBase::Bits).unwrap();
            prop_assert!(r.entropy.value <= 1e-10);
        }
    }

    #[test]
    fn schmidt_symmetry(s in arb_state(vec![2, 2])) {
        let a = entanglement_report(&s, &[0], EntropyBase::Bits).unwrap();
        let b = entanglement_report(&s, &[1], EntropyBase::Bits).unwrap();
        prop_assert!((a.entropy.value - b.entropy.value).abs() <= 1e-10);
        prop_assert!(a.entropy.value >= 0.0 && a.entropy.value <= 1.0);
        prop_assert_eq!((a.purity - 1.0).abs() <= 1e-10, a.entropy.value <= 1e-10);
    }

    #[test]
    fn decomposition_round_trip(
        n in 1usize..5,
        coeffs in prop::collection::vec(-5.0..5.0f64, 1 + 3 * 4 + 6),
    ) {
        let mut dec = PauliDecomposition::zeros(n);
        dec.h0 = coeffs[0];
        for site in 0..n {
            dec.fields[site] = [coeffs[1 + 3 * site], coeffs[2 + 3 * site], coeffs[3 + 3 * site]];
        }
        let mut k = 13;
        for i in 0..n {
            for j in (i + 1)..n {
                dec.zz_couplings.insert((i, j), coeffs[k]);
                k += 1;
            }
        }
        let h = dec.reconstruct();
        let back = pauli_decompose(&h, n).unwrap();
        prop_assert!(back.reconstruct().max_abs_diff(&h) <= 1e-12);
        prop_assert!((back.h0 - dec.h0).abs() <= 1e-12);
    }

    #[test]
    fn builders_are_hermitian(m in -20i64..=20, delta in 0.0..100.0f64, g in -3.0..3.0f64) {
        prop_assert!(build_single_fluxon(m, delta).is_hermitian(1e-12));
        prop_assert!(build_two_fluxon(m, delta).is_hermitian(1e-12));
        prop_assert!(build_driven(delta, g).is_hermitian(1e-12));
        prop_assert!(build_ising_two_qubit(delta, g, -g).is_hermitian(1e-12));
        prop_assert!(
            build_two_fluxon_physical(m, delta, Orientation::Forward, Orientation::Reverse)
                .is_hermitian(1e-12)
        );
    }

    #[test]
    fn evolution_composes(t1 in 0.0..10.0f64, t2 in 0.0..10.0f64, m in -3i64..=3, delta in 0.1..3.0f64) {
        let h = build_two_fluxon(m, delta);
        let psi = StateVector::basis(vec![2, 2], &[0, 1]).unwrap();
        let direct = &evolve(&h, &psi, &[t1 + t2]).unwrap()[0];
        let mid = &evolve(&h, &psi, &[t1]).unwrap()[0];
        let stepped = &evolve(&h, mid, &[t2]).unwrap()[0];
        let diff = direct
            .amplitudes()
            .iter()
            .zip(stepped.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        prop_assert!(diff <= 1e-10);
    }
}

#[test]
fn eigen_reconstruction_larger_matrices() {
    for &n in &[64usize, 128, 256] {
        let entries: Vec<(f64, f64)> = (0..n * (n + 1) / 2)
            .map(|k| {
                let x = (k as f64 * 0.618_033_988_75).fract() - 0.5;
                let y = (k as f64 * 0.414_213_562_37).fract() - 0.5;
                (x, y)
            })
            .collect();
        check_eigen(&hermitian(n, &entries));
    }
    check_eigen(&build_chain(8, &[0, 1, -1, 2, 0, -2, 1], 0.8).unwrap());
}

#[test]
fn unitarity_of_propagators() {
    for h in [
        build_two_fluxon(0, 1.0),
        build_driven(1.0, 0.5),
        build_chain(8, &[0; 7], 1.0).unwrap(),
    ] {
        let p = Propagator::new(&h).unwrap();
        for &t in &[0.3, 5.0, 20.0] {
            let u = p.at(t);
            let uu = &u.adjoint() * &u;
            assert!(uu.max_abs_diff(&ComplexMatrix::identity(h.rows())) <= 1e-10);
        }
    }
}

#[cfg(feature = "parallel")]
#[test]
fn parallel_matches_sequential_bitwise() {
    use fluxon_core::dynamics::evolve_with;
    use fluxon_core::hamiltonians::SystemSpec;
    use fluxon_core::spectra::band_sweep_with;
    use fluxon_core::Exec;

    let h = build_chain(6, &[0, 1, -1, 0, 2], 0.9).unwrap();
    let psi = StateVector::basis(vec![2; 6], &[0, 0, 1, 0, 0, 0]).unwrap();
    let times: Vec<f64> = (0..300).map(|k| k as f64 * 0.07).collect();
    let a = evolve_with(Exec::Sequential, &h, &psi, &times).unwrap();
    let b = evolve_with(Exec::Parallel, &h, &psi, &times).unwrap();
    assert_eq!(a, b);

    let sys = SystemSpec::two_fluxon(0, 3.0);
    assert_eq!(
        band_sweep_with(Exec::Sequential, &sys, -20, 20).unwrap(),
        band_sweep_with(Exec::Parallel, &sys, -20, 20).unwrap()
    );
}
