use super::system::Dispersion;

/// Analytic eigenvalues (E₋, E₊) of the single-fluxon Hamiltonian:
/// E± = ½(1 − 2m + 2m² ± √((1 − 2m)² + 4Δ²)).
pub fn closed_form_single_energies(m: i64, delta: f64) -> (f64, f64) {
    let m = m as f64;
    let root = ((1.0 - 2.0 * m).powi(2) + 4.0 * delta * delta).sqrt();
    let base = 1.0 - 2.0 * m + 2.0 * m * m;
    (0.5 * (base - root), 0.5 * (base + root))
}

/// Same as [`closed_form_single_energies`] for an arbitrary dispersion d(k):
/// ½(d(m) + d(m−1) ± √((d(m) − d(m−1))² + 4Δ²)).
pub fn closed_form_single_energies_with(disp: Dispersion, m: i64, delta: f64) -> (f64, f64) {
    if disp == Dispersion::Quadratic {
        return closed_form_single_energies(m, delta);
    }
    let (a, b) = (disp.energy(m as f64), disp.energy((m - 1) as f64));
    let root = ((a - b).powi(2) + 4.0 * delta * delta).sqrt();
    (0.5 * (a + b - root), 0.5 * (a + b + root))
}

/// Analytic two-fluxon bands `[E1, E2, E3, E4]`:
/// E1 = (m−1)², E2 = m², E3,4 = ½(1 − 2m + 2m² ± √((1 − 2m)² + 16Δ²)).
///
/// The labels follow these expressions, not energy order.
pub fn closed_form_two_fluxon_energies(m: i64, delta: f64) -> [f64; 4] {
    let mf = m as f64;
    let root = ((1.0 - 2.0 * mf).powi(2) + 16.0 * delta * delta).sqrt();
    let base = 1.0 - 2.0 * mf + 2.0 * mf * mf;
    [
        (mf - 1.0).powi(2),
        mf * mf,
        0.5 * (base + root),
        0.5 * (base - root),
    ]
}

/// Two-fluxon bands for an arbitrary dispersion. The antisymmetric states
/// decouple with energies d(m−1), d(m); the symmetric pair gives
/// ½(d(m) + d(m−1) ± √((d(m) − d(m−1))² + 16Δ²)).
pub fn closed_form_two_fluxon_energies_with(disp: Dispersion, m: i64, delta: f64) -> [f64; 4] {
    if disp == Dispersion::Quadratic {
        return closed_form_two_fluxon_energies(m, delta);
    }
    let (a, b) = (disp.energy(m as f64), disp.energy((m - 1) as f64));
    let root = ((a - b).powi(2) + 16.0 * delta * delta).sqrt();
    [b, a, 0.5 * (a + b + root), 0.5 * (a + b - root)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_values() {
        assert_eq!(closed_form_single_energies(0, 0.0), (0.0, 1.0));
        let (lo, hi) = closed_form_single_energies(0, 5.0);
        assert!((lo - 0.5 * (1.0 - 101f64.sqrt())).abs() < 1e-14);
        assert!((hi - 0.5 * (1.0 + 101f64.sqrt())).abs() < 1e-14);
        let (lo, hi) = closed_form_single_energies(-2, 3.0);
        assert!((lo - 0.5 * (13.0 - 61f64.sqrt())).abs() < 1e-14);
        assert!((hi - 0.5 * (13.0 + 61f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn two_fluxon_values() {
        assert_eq!(
            closed_form_two_fluxon_energies(0, 0.0),
            [1.0, 0.0, 1.0, 0.0]
        );
        let e = closed_form_two_fluxon_energies(0, 1.0);
        let s = 17f64.sqrt();
        assert_eq!(e[..2], [1.0, 0.0]);
        assert!((e[2] - 0.5 * (1.0 + s)).abs() < 1e-14);
        assert!((e[3] - 0.5 * (1.0 - s)).abs() < 1e-14);
        let e = closed_form_two_fluxon_energies(2, 3.0);
        assert_eq!(e[..2], [1.0, 4.0]);
        assert!((e[2] - 0.5 * (5.0 + 153f64.sqrt())).abs() < 1e-13);
    }

    #[test]
    fn linear_matches_quadratic_structure() {
        assert_eq!(
            closed_form_single_energies_with(Dispersion::Linear, 0, 0.0),
            (0.0, 1.0)
        );
        let e = closed_form_two_fluxon_energies_with(Dispersion::Linear, -3, 0.0);
        assert_eq!(e, [4.0, 3.0, 4.0, 3.0]);
    }
}
