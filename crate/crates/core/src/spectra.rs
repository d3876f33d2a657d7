//! Band structure over the ring number, Bloch vectors of fluxon eigenstates
//! and Bell-state content of two-fluxon eigenvectors.

use std::fmt;

use crate::error::{invalid, Result};
use crate::exec::Exec;
use crate::hamiltonians::{
    build_single_fluxon_with, build_two_fluxon_with, closed_form_single_energies_with,
    closed_form_two_fluxon_energies_with, Dispersion, SystemSpec, TwoFluxonCoupling,
};
use crate::linalg::{eig_hermitian, C64};

/// Energies per ring number, labelled consistently across the sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct BandTable {
    pub m_values: Vec<i64>,
    pub band_labels: Vec<String>,
    /// Numeric eigenvalues per m in ascending order.
    pub bands: Vec<Vec<f64>>,
    /// Numeric eigenvalues per m arranged by `band_labels`.
    pub labelled: Vec<Vec<f64>>,
    /// Analytic values per m arranged by `band_labels`, where known.
    pub closed: Option<Vec<Vec<f64>>>,
}

impl BandTable {
    /// Largest |numeric − analytic| / max(1, |analytic|) over the table.
    pub fn max_closed_deviation(&self) -> Option<f64> {
        let closed = self.closed.as_ref()?;
        Some(
            self.labelled
                .iter()
                .zip(closed)
                .flat_map(|(n, c)| {
                    n.iter()
                        .zip(c)
                        .map(|(a, b)| (a - b).abs() / b.abs().max(1.0))
                })
                .fold(0.0, f64::max),
        )
    }
}

/// Analytic energies of `system` at ring number `m` with their labels.
fn closed_forms(system: &SystemSpec, m: i64) -> Option<(Vec<&'static str>, Vec<f64>)> {
    let d = system.dispersion;
    match (system.n_fluxons, system.drive.is_some(), system.coupling) {
        (1, false, _) => {
            let (lo, hi) = closed_form_single_energies_with(d, m, system.delta);
            Some((vec!["E_minus", "E_plus"], vec![lo, hi]))
        }
        (2, _, TwoFluxonCoupling::Printed) => Some((
            vec!["E1", "E2", "E3", "E4"],
            closed_form_two_fluxon_energies_with(d, m, system.delta).to_vec(),
        )),
        _ => None,
    }
}

/// Permutation `p` with `p[label] = eigen index` minimising the worst
/// deviation between numeric and analytic values (exhaustive, n ≤ 4).
fn assign_labels(numeric: &[f64], closed: &[f64]) -> Vec<usize> {
    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out.sort();
        out
    }
    let cost = |p: &[usize]| {
        p.iter()
            .enumerate()
            .map(|(label, &k)| (numeric[k] - closed[label]).abs())
            .fold(0.0, f64::max)
    };
    permutations(numeric.len())
        .into_iter()
        .fold((Vec::new(), f64::INFINITY), |(best, bc), p| {
            let c = cost(&p);
            if c < bc {
                (p, c)
            } else {
                (best, bc)
            }
        })
        .0
}

/// Eigenvalues of `system` for every integer m in `m_min..=m_max`.
pub fn band_sweep(system: &SystemSpec, m_min: i64, m_max: i64) -> Result<BandTable> {
    band_sweep_with(Exec::default(), system, m_min, m_max)
}

pub fn band_sweep_with(
    exec: Exec,
    system: &SystemSpec,
    m_min: i64,
    m_max: i64,
) -> Result<BandTable> {
    if m_min > m_max {
        return Err(invalid(format!("empty m range {m_min}..={m_max}")));
    }
    system.validate()?;
    let m_values: Vec<i64> = (m_min..=m_max).collect();
    let rows = exec.try_map(m_values.len(), |i| {
        let m = m_values[i];
        let spec = system.at_m(m);
        let eig = eig_hermitian(&spec.hamiltonian()?)?;
        let sorted = eig.values().to_vec();
        Ok::<_, crate::Error>((sorted, closed_forms(&spec, m)))
    })?;

    let dim = rows[0].0.len();
    let band_labels: Vec<String> = match &rows[0].1 {
        Some((labels, _)) => labels.iter().map(|s| s.to_string()).collect(),
        None => (1..=dim).map(|k| format!("E{k}")).collect(),
    };
    let mut bands = Vec::with_capacity(rows.len());
    let mut labelled = Vec::with_capacity(rows.len());
    let mut closed = Vec::with_capacity(rows.len());
    let has_closed = rows[0].1.is_some();
    for (sorted, cf) in rows {
        match cf {
            Some((_, values)) => {
                let perm = assign_labels(&sorted, &values);
                labelled.push(perm.iter().map(|&k| sorted[k]).collect());
                closed.push(values);
            }
            None => labelled.push(sorted.clone()),
        }
        bands.push(sorted);
    }
    Ok(BandTable {
        m_values,
        band_labels,
        bands,
        labelled,
        closed: has_closed.then_some(closed),
    })
}

/// Point on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn length(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

/// Bloch vector of a fluxon state α|0⟩ + β|1⟩:
/// (2 Re(ᾱβ), 2 Im(ᾱβ), |α|² − |β|²), normalized by ‖v‖².
pub fn fluxon_bloch_vector(v: &[C64]) -> Result<BlochVector> {
    if v.len() != 2 {
        return Err(invalid(format!(
            "fluxon state needs 2 components, got {}",
            v.len()
        )));
    }
    let n2 = v[0].norm_sqr() + v[1].norm_sqr();
    if n2 == 0.0 || !n2.is_finite() {
        return Err(invalid("Bloch vector of a zero state is undefined"));
    }
    let c = v[0].conj() * v[1];
    Ok(BlochVector {
        x: 2.0 * c.re / n2,
        y: 2.0 * c.im / n2,
        z: (v[0].norm_sqr() - v[1].norm_sqr()) / n2,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Band {
    Lower,
    Upper,
}

impl Band {
    pub fn name(self) -> &'static str {
        match self {
            Band::Lower => "lower",
            Band::Upper => "upper",
        }
    }
}

/// A single-fluxon eigenstate and its Bloch vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochState {
    pub m: i64,
    pub band: Band,
    pub energy: f64,
    pub bloch: BlochVector,
}

/// Bloch vectors of both single-fluxon eigenstates for each m in the range,
/// ordered by m then band.
pub fn bloch_sweep(
    disp: Dispersion,
    delta: f64,
    m_min: i64,
    m_max: i64,
) -> Result<Vec<BlochState>> {
    bloch_sweep_with(Exec::default(), disp, delta, m_min, m_max)
}

pub fn bloch_sweep_with(
    exec: Exec,
    disp: Dispersion,
    delta: f64,
    m_min: i64,
    m_max: i64,
) -> Result<Vec<BlochState>> {
    if m_min > m_max {
        return Err(invalid(format!("empty m range {m_min}..={m_max}")));
    }
    SystemSpec::single_fluxon(0, delta).validate()?;
    let per_m = exec.try_map((m_max - m_min + 1) as usize, |i| {
        let m = m_min + i as i64;
        let eig = eig_hermitian(&build_single_fluxon_with(disp, m, delta))?;
        [Band::Lower, Band::Upper]
            .into_iter()
            .enumerate()
            .map(|(k, band)| {
                Ok(BlochState {
                    m,
                    band,
                    energy: eig.values()[k],
                    bloch: fluxon_bloch_vector(&eig.vector(k))?,
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(per_m.into_iter().flatten().collect())
}

/// The four two-qubit Bell states, Φ± = (|00⟩ ± |11⟩)/√2, Ψ± = (|01⟩ ± |10⟩)/√2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bell {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl Bell {
    pub const ALL: [Bell; 4] = [Bell::PhiPlus, Bell::PhiMinus, Bell::PsiPlus, Bell::PsiMinus];

    pub fn amplitudes(self) -> [C64; 4] {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let (p, n, z) = (C64::new(h, 0.0), C64::new(-h, 0.0), C64::new(0.0, 0.0));
        match self {
            Bell::PhiPlus => [p, z, z, p],
            Bell::PhiMinus => [p, z, z, n],
            Bell::PsiPlus => [z, p, p, z],
            Bell::PsiMinus => [z, p, n, z],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Bell::PhiPlus => "Phi+",
            Bell::PhiMinus => "Phi-",
            Bell::PsiPlus => "Psi+",
            Bell::PsiMinus => "Psi-",
        }
    }
}

impl fmt::Display for Bell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// |⟨Bell|v⟩|² for a normalized two-qubit vector.
pub fn bell_fidelity(v: &[C64], bell: Bell) -> Result<f64> {
    if v.len() != 4 {
        return Err(invalid(format!(
            "two-qubit state needs 4 components, got {}",
            v.len()
        )));
    }
    let overlap: C64 = bell
        .amplitudes()
        .iter()
        .zip(v)
        .map(|(b, a)| b.conj() * a)
        .sum();
    Ok(overlap.norm_sqr())
}

/// Eigenvectors of the two-fluxon Hamiltonian at `m`, indexed by the analytic
/// labels E1..E4.
pub fn two_fluxon_band_states(
    disp: Dispersion,
    m: i64,
    delta: f64,
) -> Result<[(f64, Vec<C64>); 4]> {
    let eig = eig_hermitian(&build_two_fluxon_with(disp, m, delta))?;
    let closed = closed_form_two_fluxon_energies_with(disp, m, delta);
    let perm = assign_labels(eig.values(), &closed);
    Ok(std::array::from_fn(|label| {
        let k = perm[label];
        (eig.values()[k], eig.vector(k))
    }))
}
