//! Exact unitary evolution and the time-domain experiments.
//!
//! Every constant stretch of a Hamiltonian is propagated through its spectral
//! decomposition, U(t) = V e^{−iΛt} V†, so the sampling step never affects
//! accuracy.

use crate::entanglement::{von_neumann_entropy, EntropyBase};
use crate::error::{invalid, Result};
use crate::exec::Exec;
use crate::hamiltonians::{
    build_chain_with, build_driven_with, build_ring_two_fluxon, build_single_fluxon_with,
    Dispersion, DriveSchedule, SystemSpec, MAX_CHAIN_FLUXONS,
};
use crate::linalg::{
    eig_hermitian, kron_vec, partial_trace, pauli, ComplexMatrix, EigenDecomposition, PauliOp,
    StateVector, C64,
};

/// Sampled real-valued observables.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    channels: Vec<(String, Vec<f64>)>,
}

impl TimeSeries {
    pub fn new(times: Vec<f64>) -> Self {
        Self {
            times,
            channels: Vec::new(),
        }
    }

    pub fn add_channel(&mut self, name: impl Into<String>, values: Vec<f64>) -> Result<()> {
        let name = name.into();
        if values.len() != self.times.len() {
            return Err(invalid(format!(
                "channel '{name}' has {} samples for {} times",
                values.len(),
                self.times.len()
            )));
        }
        if self.channel(&name).is_some() {
            return Err(invalid(format!("duplicate channel '{name}'")));
        }
        self.channels.push((name, values));
        Ok(())
    }

    pub fn channel(&self, name: &str) -> Option<&[f64]> {
        self.channels
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_slice())
    }

    pub fn channels(&self) -> &[(String, Vec<f64>)] {
        &self.channels
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// (max value, time of first occurrence) of a channel.
    pub fn peak(&self, name: &str) -> Option<(f64, f64)> {
        let values = self.channel(name)?;
        let mut best: Option<(f64, f64)> = None;
        for (&t, &v) in self.times.iter().zip(values) {
            if best.is_none_or(|(bv, _)| v > bv) {
                best = Some((v, t));
            }
        }
        best
    }
}

/// States sampled along a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<StateVector>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub series: TimeSeries,
    /// Channel whose maximum defines the peak.
    pub peak_channel: String,
    pub peak_value: f64,
    pub peak_time: f64,
    /// Parameter echo as ordered key/value pairs.
    pub metadata: Vec<(String, String)>,
}

impl ExperimentResult {
    fn from_series(
        series: TimeSeries,
        peak_channel: &str,
        metadata: Vec<(String, String)>,
    ) -> Result<Self> {
        let (peak_value, peak_time) = series
            .peak(peak_channel)
            .ok_or_else(|| invalid(format!("no samples in channel '{peak_channel}'")))?;
        Ok(Self {
            series,
            peak_channel: peak_channel.to_string(),
            peak_value,
            peak_time,
            metadata,
        })
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

/// Time-evolution operator family of a fixed Hamiltonian.
#[derive(Debug, Clone)]
pub struct Propagator {
    eig: EigenDecomposition,
}

impl Propagator {
    pub fn new(h: &ComplexMatrix) -> Result<Self> {
        Ok(Self {
            eig: eig_hermitian(h)?,
        })
    }

    pub fn eigen(&self) -> &EigenDecomposition {
        &self.eig
    }

    pub fn dim(&self) -> usize {
        self.eig.len()
    }

    /// U(t) = V e^{−iΛt} V†.
    pub fn at(&self, t: f64) -> ComplexMatrix {
        self.eig.spectral_map(|l| C64::from_polar(1.0, -l * t))
    }

    /// Coefficients of `amps` in the eigenbasis, V†ψ.
    fn to_eigenbasis(&self, amps: &[C64]) -> Vec<C64> {
        let v = self.eig.vectors();
        let n = self.dim();
        let mut out = vec![C64::new(0.0, 0.0); n];
        for (i, &a) in amps.iter().enumerate() {
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            for (k, o) in out.iter_mut().enumerate() {
                *o += v[(i, k)].conj() * a;
            }
        }
        out
    }

    /// V e^{−iΛt} c for eigenbasis coefficients c.
    fn phased_from_eigenbasis(&self, coeffs: &[C64], t: f64) -> Vec<C64> {
        let v = self.eig.vectors();
        let n = self.dim();
        let phased: Vec<C64> = coeffs
            .iter()
            .zip(self.eig.values())
            .map(|(&c, &l)| c * C64::from_polar(1.0, -l * t))
            .collect();
        (0..n)
            .map(|i| v.row(i).iter().zip(&phased).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn apply(&self, psi: &StateVector, t: f64) -> Result<StateVector> {
        self.check_dim(psi)?;
        if t == 0.0 {
            return Ok(psi.clone());
        }
        let c = self.to_eigenbasis(psi.amplitudes());
        StateVector::new(psi.dims().to_vec(), self.phased_from_eigenbasis(&c, t))
    }

    /// ψ(t) for each sample time, evaluated independently from ψ(0).
    pub fn evolve(&self, exec: Exec, psi: &StateVector, times: &[f64]) -> Result<Vec<StateVector>> {
        self.check_dim(psi)?;
        check_times(times)?;
        let c = self.to_eigenbasis(psi.amplitudes());
        let dims = psi.dims().to_vec();
        // U(0) = I exactly.
        exec.try_map(times.len(), |k| match times[k] {
            0.0 => Ok(psi.clone()),
            t => StateVector::new(dims.clone(), self.phased_from_eigenbasis(&c, t)),
        })
    }

    fn check_dim(&self, psi: &StateVector) -> Result<()> {
        if psi.dim() != self.dim() {
            return Err(invalid(format!(
                "state of dimension {} does not match Hamiltonian of dimension {}",
                psi.dim(),
                self.dim()
            )));
        }
        Ok(())
    }
}

/// e^{−iHt}.
pub fn propagator(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    Ok(Propagator::new(h)?.at(t))
}

fn check_times(times: &[f64]) -> Result<()> {
    if times.iter().any(|t| !t.is_finite()) {
        return Err(invalid("sample times must be finite"));
    }
    if times.windows(2).any(|w| w[1] < w[0]) {
        return Err(invalid("sample times must be ascending"));
    }
    Ok(())
}

/// ψ(t) = e^{−iHt} ψ₀ at each time.
pub fn evolve(h: &ComplexMatrix, psi0: &StateVector, times: &[f64]) -> Result<Vec<StateVector>> {
    evolve_with(Exec::default(), h, psi0, times)
}

pub fn evolve_with(
    exec: Exec,
    h: &ComplexMatrix,
    psi0: &StateVector,
    times: &[f64],
) -> Result<Vec<StateVector>> {
    Propagator::new(h)?.evolve(exec, psi0, times)
}

/// Uniform grid 0, dt, 2dt, … up to `t_max`, with `t_max` itself appended when
/// it is not on the grid.
pub fn sample_times(t_max: f64, dt: f64) -> Result<Vec<f64>> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(invalid(format!("dt must be positive, got {dt}")));
    }
    if !(t_max >= 0.0 && t_max.is_finite()) {
        return Err(invalid(format!("t_max must be non-negative, got {t_max}")));
    }
    let n = (t_max / dt + 1e-9).floor() as usize;
    let mut times: Vec<f64> = (0..=n).map(|k| k as f64 * dt).collect();
    let last = *times.last().expect("at least t = 0");
    if t_max - last > 1e-9 * dt {
        times.push(t_max);
    }
    Ok(times)
}

/// Evolution of the driven electron ⊗ fluxon system under a piecewise-constant
/// schedule. Samples lie on the `dt` grid plus every segment boundary.
pub fn evolve_schedule(
    base: &SystemSpec,
    schedule: &DriveSchedule,
    psi0: &StateVector,
    dt: f64,
) -> Result<Trajectory> {
    evolve_schedule_with(Exec::default(), base, schedule, psi0, dt)
}

pub fn evolve_schedule_with(
    exec: Exec,
    base: &SystemSpec,
    schedule: &DriveSchedule,
    psi0: &StateVector,
    dt: f64,
) -> Result<Trajectory> {
    let system = base.clone().with_drive(schedule.clone());
    system.validate()?;
    let total = schedule.total_duration();
    let mut grid = sample_times(total, dt)?;

    let mut boundaries = Vec::with_capacity(schedule.segments().len() + 1);
    let mut acc = 0.0;
    boundaries.push(0.0);
    for s in schedule.segments() {
        acc += s.duration;
        boundaries.push(acc);
    }
    grid.extend_from_slice(&boundaries);
    grid.sort_by(f64::total_cmp);
    let eps = 1e-9 * dt;
    grid.dedup_by(|b, a| (*b - *a).abs() <= eps);

    let mut times = Vec::with_capacity(grid.len());
    let mut states = Vec::with_capacity(grid.len());
    let mut start_state = psi0.clone();
    let mut cursor = 0;
    for (seg, s) in schedule.segments().iter().enumerate() {
        let (t0, t1) = (boundaries[seg], boundaries[seg + 1]);
        let prop = Propagator::new(&system.driven_hamiltonian(s.g1, s.g2)?)?;
        // Samples in (t0, t1]; t = 0 belongs to the first segment.
        let mut local = Vec::new();
        while cursor < grid.len() && grid[cursor] <= t1 + eps {
            if seg == 0 || grid[cursor] > t0 + eps {
                local.push(grid[cursor]);
            }
            cursor += 1;
        }
        let offsets: Vec<f64> = local.iter().map(|t| (t - t0).max(0.0)).collect();
        let sampled = prop.evolve(exec, &start_state, &offsets)?;
        start_state = prop.apply(&start_state, t1 - t0)?;
        times.extend(local);
        states.extend(sampled);
    }
    Ok(Trajectory { times, states })
}

fn entropy_channel(exec: Exec, states: &[StateVector], keep: &[usize]) -> Result<Vec<f64>> {
    exec.try_map(states.len(), |k| {
        let rho = partial_trace(&states[k], keep)?;
        Ok(von_neumann_entropy(&rho, EntropyBase::Bits)?.value)
    })
}

fn meta(pairs: &[(&str, String)]) -> Vec<(String, String)> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

/// Excitation transfer between two fluxons sharing a ring.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TeleportParams {
    pub delta: f64,
    pub m: i64,
    pub t_max: f64,
    pub dt: f64,
    /// Peak probability that counts as a complete transfer.
    pub transfer_threshold: f64,
    pub dispersion: Dispersion,
}

impl Default for TeleportParams {
    fn default() -> Self {
        Self {
            delta: 1.0,
            m: 0,
            t_max: 12.0,
            dt: 0.01,
            transfer_threshold: 0.99,
            dispersion: Dispersion::Quadratic,
        }
    }
}

pub fn teleport_experiment(delta: f64, m: i64, t_max: f64, dt: f64) -> Result<ExperimentResult> {
    teleport(
        Exec::default(),
        &TeleportParams {
            delta,
            m,
            t_max,
            dt,
            ..TeleportParams::default()
        },
    )
}

/// Starts in |m⟩ ⊗ |n₁=0⟩ ⊗ |n₂=1⟩ on the ring ⊗ fluxon ⊗ fluxon space (ring
/// truncated to m and m+1) and tracks the four fluxon configurations at ring
/// number m plus the entropy of fluxon 1. The peak is taken over `P_10`.
pub fn teleport(exec: Exec, p: &TeleportParams) -> Result<ExperimentResult> {
    SystemSpec::two_fluxon(p.m, p.delta).validate()?;
    let times = sample_times(p.t_max, p.dt)?;
    let h = build_ring_two_fluxon(p.dispersion, &[p.m, p.m + 1], p.delta);
    let psi0 = StateVector::basis(vec![2, 2, 2], &[0, 0, 1])?;
    let states = evolve_with(exec, &h, &psi0, &times)?;

    let mut series = TimeSeries::new(times);
    for (name, n1, n2) in [
        ("P_10", 1, 0),
        ("P_01", 0, 1),
        ("P_00", 0, 0),
        ("P_11", 1, 1),
    ] {
        let values = states
            .iter()
            .map(|s| s.probability(&[0, n1, n2]))
            .collect::<Result<Vec<_>>>()?;
        series.add_channel(name, values)?;
    }
    series.add_channel("S_f1", entropy_channel(exec, &states, &[1])?)?;

    let mut res = ExperimentResult::from_series(
        series,
        "P_10",
        meta(&[
            ("delta", p.delta.to_string()),
            ("m", p.m.to_string()),
            ("t_max", p.t_max.to_string()),
            ("dt", p.dt.to_string()),
            ("dispersion", p.dispersion.to_string()),
            ("transfer_threshold", p.transfer_threshold.to_string()),
        ]),
    )?;
    let transferred = res.peak_value >= p.transfer_threshold;
    res.metadata
        .push(("transferred".into(), transferred.to_string()));
    Ok(res)
}

/// Product ground state |m=0⟩ ⊗ |g⟩ of the undriven electron ⊗ fluxon system.
///
/// The undriven ground level is twofold degenerate (m = 0 and m = 1 sectors);
/// the m = 0 member is selected.
pub fn quench_initial_state(disp: Dispersion, delta: f64) -> Result<StateVector> {
    let eig = eig_hermitian(&build_driven_with(disp, delta, 0.0, 0.0))?;
    let ground = eig.values()[0];
    let tol = 1e-10 * ground.abs().max(1.0);
    for k in 0..eig.len() {
        if eig.values()[k] - ground > tol {
            break;
        }
        let v = eig.vector(k);
        let w0 = v[0].norm_sqr() + v[1].norm_sqr();
        if w0 > 0.5 {
            return StateVector::normalized(vec![2, 2], v);
        }
    }
    // Sector mixing cannot happen for a block-diagonal input; fall back to the
    // explicit product construction all the same.
    let sub = eig_hermitian(&build_single_fluxon_with(disp, 0, delta))?;
    let one = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
    StateVector::normalized(vec![2, 2], kron_vec(&one, &sub.vector(0)))
}

/// Sudden switch-on of the electron drive `g σx⁽ᵉ⁾` at t = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuenchParams {
    pub delta: f64,
    pub g: f64,
    pub t_max: f64,
    pub dt: f64,
    pub dispersion: Dispersion,
}

impl Default for QuenchParams {
    fn default() -> Self {
        Self {
            delta: 1.0,
            g: 0.5,
            t_max: 20.0,
            dt: 0.01,
            dispersion: Dispersion::Quadratic,
        }
    }
}

pub fn quench_experiment(delta: f64, g: f64, t_max: f64, dt: f64) -> Result<ExperimentResult> {
    quench(
        Exec::default(),
        &QuenchParams {
            delta,
            g,
            t_max,
            dt,
            ..QuenchParams::default()
        },
    )
}

/// Channels: fluxon entropy `S_f` (bits) and fluxon energy `E_f` = ⟨Δσx⁽ᶠ⁾⟩.
/// The peak is taken over `S_f`.
pub fn quench(exec: Exec, p: &QuenchParams) -> Result<ExperimentResult> {
    if p.t_max.is_nan() || p.t_max <= 0.0 {
        return Err(invalid(format!("t_max must be positive, got {}", p.t_max)));
    }
    if !p.g.is_finite() {
        return Err(invalid("drive coupling must be finite"));
    }
    let base = SystemSpec::single_fluxon(0, p.delta).with_dispersion(p.dispersion);
    base.validate()?;
    let psi0 = quench_initial_state(p.dispersion, p.delta)?;
    let schedule = DriveSchedule::quench(p.g, p.t_max)?;
    let traj = evolve_schedule_with(exec, &base, &schedule, &psi0, p.dt)?;

    let fluxon_x = pauli(PauliOp::X, 1, 2)?.scale_real(p.delta);
    let energy = exec.try_map(traj.states.len(), |k| traj.states[k].expectation(&fluxon_x))?;
    let mut series = TimeSeries::new(traj.times.clone());
    series.add_channel("S_f", entropy_channel(exec, &traj.states, &[1])?)?;
    series.add_channel("E_f", energy)?;

    ExperimentResult::from_series(
        series,
        "S_f",
        meta(&[
            ("delta", p.delta.to_string()),
            ("g", p.g.to_string()),
            ("t_max", p.t_max.to_string()),
            ("dt", p.dt.to_string()),
            ("dispersion", p.dispersion.to_string()),
        ]),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainParams {
    pub n: usize,
    pub link_ms: Vec<i64>,
    pub delta: f64,
    pub excited_site: usize,
    pub t_max: f64,
    pub dt: f64,
    pub dispersion: Dispersion,
}

pub fn chain_transport_experiment(
    n: usize,
    link_ms: &[i64],
    delta: f64,
    excited_site: usize,
    t_max: f64,
    dt: f64,
) -> Result<ExperimentResult> {
    chain_transport(
        Exec::default(),
        &ChainParams {
            n,
            link_ms: link_ms.to_vec(),
            delta,
            excited_site,
            t_max,
            dt,
            dispersion: Dispersion::Quadratic,
        },
    )
}

/// Starts with only `excited_site` flipped and records P(nᵢ = 1) per site as
/// channels `P_site<i>`. The peak is taken over `P_other_max`, the largest
/// excitation probability on any other site.
pub fn chain_transport(exec: Exec, p: &ChainParams) -> Result<ExperimentResult> {
    if p.n > MAX_CHAIN_FLUXONS {
        return Err(crate::Error::SizeGuard {
            requested: p.n,
            max: MAX_CHAIN_FLUXONS,
        });
    }
    if p.excited_site >= p.n {
        return Err(invalid(format!(
            "excited site {} out of range for {} fluxons",
            p.excited_site, p.n
        )));
    }
    let h = build_chain_with(p.dispersion, p.n, &p.link_ms, p.delta)?;
    let times = sample_times(p.t_max, p.dt)?;
    let mut digits = vec![0; p.n];
    digits[p.excited_site] = 1;
    let psi0 = StateVector::basis(vec![2; p.n], &digits)?;
    let states = evolve_with(exec, &h, &psi0, &times)?;

    let occupations: Vec<Vec<f64>> = exec.map(states.len(), |k| site_occupations(&states[k], p.n));
    let mut series = TimeSeries::new(times);
    for site in 0..p.n {
        series.add_channel(
            format!("P_site{site}"),
            occupations.iter().map(|o| o[site]).collect(),
        )?;
    }
    let other_max = occupations
        .iter()
        .map(|o| {
            o.iter()
                .enumerate()
                .filter(|&(i, _)| i != p.excited_site)
                .map(|(_, &v)| v)
                .fold(0.0, f64::max)
        })
        .collect();
    series.add_channel("P_other_max", other_max)?;

    let links: Vec<String> = p.link_ms.iter().map(|m| m.to_string()).collect();
    ExperimentResult::from_series(
        series,
        "P_other_max",
        meta(&[
            ("n", p.n.to_string()),
            ("link_ms", links.join(",")),
            ("delta", p.delta.to_string()),
            ("excited_site", p.excited_site.to_string()),
            ("t_max", p.t_max.to_string()),
            ("dt", p.dt.to_string()),
            ("dispersion", p.dispersion.to_string()),
        ]),
    )
}

/// P(nᵢ = 1) for each site of an n-qubit register.
pub fn site_occupations(state: &StateVector, n: usize) -> Vec<f64> {
    let mut occ = vec![0.0; n];
    for (index, a) in state.amplitudes().iter().enumerate() {
        let p = a.norm_sqr();
        if p == 0.0 {
            continue;
        }
        for (site, o) in occ.iter_mut().enumerate() {
            if (index >> (n - 1 - site)) & 1 == 1 {
                *o += p;
            }
        }
    }
    occ
}
