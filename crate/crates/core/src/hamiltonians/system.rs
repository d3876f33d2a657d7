use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Result};
use crate::linalg::ComplexMatrix;

use super::builders;
use super::chain;

/// Kinetic energy of a ring state as a function of its shifted angular momentum.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Dispersion {
    /// k², a massive particle on a ring.
    #[default]
    Quadratic,
    /// |k|, a Dirac-like ring.
    Linear,
}

impl Dispersion {
    #[inline]
    pub fn energy(self, k: f64) -> f64 {
        match self {
            Dispersion::Quadratic => k * k,
            Dispersion::Linear => k.abs(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Dispersion::Quadratic => "quadratic",
            Dispersion::Linear => "linear",
        }
    }
}

impl fmt::Display for Dispersion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Dispersion {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quadratic" => Ok(Dispersion::Quadratic),
            "linear" => Ok(Dispersion::Linear),
            other => Err(invalid(format!("unknown dispersion '{other}'"))),
        }
    }
}

/// Direction of a fluxon's flux relative to the ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Forward,
    Reverse,
}

impl Orientation {
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Forward => 1,
            Orientation::Reverse => -1,
        }
    }

    pub fn from_sign(sign: i64) -> Result<Self> {
        match sign {
            1 => Ok(Orientation::Forward),
            -1 => Ok(Orientation::Reverse),
            other => Err(invalid(format!(
                "orientation must be +1 or -1, got {other}"
            ))),
        }
    }
}

/// Which two-fluxon matrix to use.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum TwoFluxonCoupling {
    /// Diagonal (d(m), d(m−1), d(m−1), d(m)) over |n₁n₂⟩.
    #[default]
    Printed,
    /// Diagonal d(m − s₁n₁ − s₂n₂) from the explicit orientation signs.
    Physical,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveSegment {
    /// Length of the segment in ħ/a.
    pub duration: f64,
    /// Coefficient of σx on the electron.
    pub g1: f64,
    /// Coefficient of σy on the electron.
    pub g2: f64,
}

/// Piecewise-constant electron drive.
#[derive(Debug, Clone, PartialEq)]
pub struct DriveSchedule {
    segments: Vec<DriveSegment>,
}

impl DriveSchedule {
    pub fn new(segments: Vec<DriveSegment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(invalid("drive schedule has no segments"));
        }
        for (i, s) in segments.iter().enumerate() {
            if !(s.duration > 0.0 && s.duration.is_finite()) {
                return Err(invalid(format!(
                    "segment {i} has non-positive duration {}",
                    s.duration
                )));
            }
            if !s.g1.is_finite() || !s.g2.is_finite() {
                return Err(invalid(format!("segment {i} has non-finite coupling")));
            }
        }
        Ok(Self { segments })
    }

    /// A single step switching the σx drive to `g` for `duration`.
    pub fn quench(g: f64, duration: f64) -> Result<Self> {
        Self::new(vec![DriveSegment {
            duration,
            g1: g,
            g2: 0.0,
        }])
    }

    pub fn segments(&self) -> &[DriveSegment] {
        &self.segments
    }

    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }
}

/// Declarative description of a ring coupled to one or more fluxons.
///
/// * one fluxon without drive: the 2x2 fluxon Hamiltonian at ring number `m`;
/// * one fluxon with drive: the electron ⊗ fluxon problem over the two lowest
///   ring states, electron driven by the schedule;
/// * two fluxons: the 4x4 two-fluxon Hamiltonian at `m`;
/// * three or more: the transverse-field Ising chain with per-link ring
///   numbers `link_ms` (defaults to `m` on every link).
#[derive(Debug, Clone, PartialEq)]
pub struct SystemSpec {
    pub m: i64,
    pub delta: f64,
    pub n_fluxons: usize,
    pub orientations: Vec<Orientation>,
    pub dispersion: Dispersion,
    pub drive: Option<DriveSchedule>,
    pub coupling: TwoFluxonCoupling,
    pub link_ms: Option<Vec<i64>>,
}

impl SystemSpec {
    pub fn single_fluxon(m: i64, delta: f64) -> Self {
        Self {
            m,
            delta,
            n_fluxons: 1,
            orientations: vec![Orientation::Forward],
            dispersion: Dispersion::Quadratic,
            drive: None,
            coupling: TwoFluxonCoupling::Printed,
            link_ms: None,
        }
    }

    /// Two fluxons with opposite orientations.
    pub fn two_fluxon(m: i64, delta: f64) -> Self {
        Self {
            n_fluxons: 2,
            orientations: vec![Orientation::Forward, Orientation::Reverse],
            ..Self::single_fluxon(m, delta)
        }
    }

    pub fn chain(link_ms: Vec<i64>, delta: f64) -> Self {
        let n = link_ms.len() + 1;
        Self {
            n_fluxons: n,
            orientations: (0..n)
                .map(|i| {
                    if i % 2 == 0 {
                        Orientation::Forward
                    } else {
                        Orientation::Reverse
                    }
                })
                .collect(),
            link_ms: Some(link_ms),
            ..Self::single_fluxon(0, delta)
        }
    }

    pub fn with_dispersion(mut self, dispersion: Dispersion) -> Self {
        self.dispersion = dispersion;
        self
    }

    pub fn with_coupling(mut self, coupling: TwoFluxonCoupling) -> Self {
        self.coupling = coupling;
        self
    }

    pub fn with_drive(mut self, drive: DriveSchedule) -> Self {
        self.drive = Some(drive);
        self
    }

    pub fn with_orientations(mut self, orientations: Vec<Orientation>) -> Self {
        self.orientations = orientations;
        self
    }

    /// Same system at a different ring number.
    pub fn at_m(&self, m: i64) -> Self {
        Self { m, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta >= 0.0 && self.delta.is_finite()) {
            return Err(invalid(format!(
                "delta must be finite and >= 0, got {}",
                self.delta
            )));
        }
        if self.n_fluxons == 0 {
            return Err(invalid("system needs at least one fluxon"));
        }
        if self.orientations.len() != self.n_fluxons {
            return Err(invalid(format!(
                "{} orientations given for {} fluxons",
                self.orientations.len(),
                self.n_fluxons
            )));
        }
        if self.drive.is_some() && self.n_fluxons != 1 {
            return Err(invalid(
                "electron drive is only modelled for a single fluxon",
            ));
        }
        if let Some(links) = &self.link_ms {
            if links.len() + 1 != self.n_fluxons {
                return Err(invalid(format!(
                    "{} link ring numbers given for {} fluxons",
                    links.len(),
                    self.n_fluxons
                )));
            }
        }
        if self.n_fluxons > chain::MAX_CHAIN_FLUXONS {
            return Err(crate::Error::SizeGuard {
                requested: self.n_fluxons,
                max: chain::MAX_CHAIN_FLUXONS,
            });
        }
        Ok(())
    }

    /// Number of qubit sites in [`SystemSpec::hamiltonian`].
    pub fn n_sites(&self) -> usize {
        if self.n_fluxons == 1 && self.drive.is_some() {
            2
        } else {
            self.n_fluxons
        }
    }

    /// The Hamiltonian with the drive switched off.
    pub fn hamiltonian(&self) -> Result<ComplexMatrix> {
        self.driven_hamiltonian(0.0, 0.0)
    }

    /// The Hamiltonian with electron couplings `g1 σx + g2 σy` (single fluxon
    /// with a drive schedule only; other systems ignore a zero drive).
    pub fn driven_hamiltonian(&self, g1: f64, g2: f64) -> Result<ComplexMatrix> {
        self.validate()?;
        let d = self.dispersion;
        match self.n_fluxons {
            1 if self.drive.is_some() => Ok(builders::build_driven_with(d, self.delta, g1, g2)),
            _ if g1 != 0.0 || g2 != 0.0 => Err(invalid(
                "electron drive needs a single fluxon with a drive schedule",
            )),
            1 => Ok(builders::build_single_fluxon_with(d, self.m, self.delta)),
            2 => Ok(match self.coupling {
                TwoFluxonCoupling::Printed => {
                    builders::build_two_fluxon_with(d, self.m, self.delta)
                }
                TwoFluxonCoupling::Physical => builders::build_two_fluxon_physical_with(
                    d,
                    self.m,
                    self.delta,
                    self.orientations[0],
                    self.orientations[1],
                ),
            }),
            n => {
                let links = self.link_ms.clone().unwrap_or_else(|| vec![self.m; n - 1]);
                chain::build_chain_with(d, n, &links, self.delta)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispersion_kinds() {
        assert_eq!(Dispersion::Quadratic.energy(-2.0), 4.0);
        assert_eq!(Dispersion::Linear.energy(-2.0), 2.0);
        assert_eq!("linear".parse::<Dispersion>().unwrap(), Dispersion::Linear);
        assert!("cubic".parse::<Dispersion>().is_err());
    }

    #[test]
    fn schedule_validation() {
        assert!(DriveSchedule::new(vec![]).is_err());
        let bad = DriveSegment {
            duration: 0.0,
            g1: 1.0,
            g2: 0.0,
        };
        assert!(DriveSchedule::new(vec![bad]).is_err());
        let s = DriveSchedule::quench(0.5, 2.0).unwrap();
        assert_eq!(s.total_duration(), 2.0);
    }

    #[test]
    fn spec_validation() {
        assert!(SystemSpec::single_fluxon(0, -1.0).validate().is_err());
        let mut s = SystemSpec::two_fluxon(0, 1.0);
        s.orientations.pop();
        assert!(s.validate().is_err());
        let drive = DriveSchedule::quench(0.5, 1.0).unwrap();
        assert!(SystemSpec::two_fluxon(0, 1.0)
            .with_drive(drive)
            .validate()
            .is_err());
        assert!(matches!(
            SystemSpec::chain(vec![0; 12], 1.0).validate(),
            Err(crate::Error::SizeGuard { requested: 13, .. })
        ));
        assert!(Orientation::from_sign(0).is_err());
    }

    #[test]
    fn spec_dispatches_builders() {
        let s = SystemSpec::single_fluxon(3, 2.0);
        assert_eq!(
            s.hamiltonian().unwrap(),
            builders::build_single_fluxon(3, 2.0)
        );
        let s = SystemSpec::two_fluxon(1, 0.5);
        assert_eq!(s.hamiltonian().unwrap(), builders::build_two_fluxon(1, 0.5));
        let drive = DriveSchedule::quench(0.5, 1.0).unwrap();
        let s = SystemSpec::single_fluxon(0, 1.0).with_drive(drive);
        assert_eq!(
            s.driven_hamiltonian(0.5, 0.0).unwrap(),
            builders::build_driven(1.0, 0.5)
        );
        assert!(SystemSpec::single_fluxon(0, 1.0)
            .driven_hamiltonian(0.1, 0.0)
            .is_err());
    }
}
