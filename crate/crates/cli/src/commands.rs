//! Execution of a resolved [`RunConfig`] into an [`Artifact`] and a summary.

use fluxon_core::dynamics::{chain_transport, quench, teleport, ExperimentResult};
use fluxon_core::hamiltonians::{
    build_chain_with, build_driven_with, build_ising_two_qubit, build_single_fluxon_with,
    build_two_fluxon_physical_with, build_two_fluxon_with, chain_decomposition, pauli_decompose,
    PauliDecomposition, QuotedCoefficients, SystemSpec, TwoFluxonCoupling,
};
use fluxon_core::linalg::PauliOp;
use fluxon_core::spectra::{band_sweep_with, bloch_sweep_with};
use fluxon_core::Exec;
use serde_json::{Map, Value};

use crate::config::{BlochConfig, DecomposeConfig, Params, RunConfig, SpectrumConfig, SystemKind};
use crate::error::{usage, CliError};
use crate::output::{json_float, write_atomic, Artifact, Cell};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// What a run produced, before it is written.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub artifact: Artifact,
    /// Parameter echo.
    pub params: Vec<(String, String)>,
    /// Headline numbers for the stdout summary.
    pub highlights: Vec<(String, Value)>,
}

fn kv(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

fn conventions() -> Vec<(String, String)> {
    vec![
        kv("tool", "fluxon"),
        kv("version", VERSION),
        kv("units_energy", "a"),
        kv("units_time", "hbar/a"),
        kv("units_entropy", "bits"),
        kv(
            "basis_convention",
            "sigma_z|0> = +|0>; leftmost tensor factor is the most significant bit",
        ),
        kv(
            "bell_convention",
            "Phi+- = (|00> +- |11>)/sqrt(2); Psi+- = (|01> +- |10>)/sqrt(2)",
        ),
    ]
}

fn two_fluxon_labels() -> Vec<(String, String)> {
    vec![
        kv(
            "band_labels",
            "E1 = (m-1)^2 [Psi-]; E2 = m^2 [Phi-]; E3 = upper root; E4 = lower root",
        ),
        kv(
            "band_labels_alternate",
            "E1 [Phi-]; E2 [Psi-] (swapped Bell assignment; not what the matrix gives)",
        ),
    ]
}

/// Runs the configured command and returns the artifact without writing it.
pub fn execute(config: &RunConfig, exec: Exec) -> Result<Outcome, CliError> {
    match &config.params {
        Params::Spectrum(c) => spectrum(c, exec),
        Params::Bloch(c) => bloch(c, exec),
        Params::Teleport(p) => Ok(experiment("teleport", teleport(exec, p)?)),
        Params::Quench(p) => Ok(experiment("quench", quench(exec, p)?)),
        Params::Chain(p) => Ok(experiment("chain", chain_transport(exec, p)?)),
        Params::Decompose(c) => decompose(c),
    }
}

/// Executes, writes the artifact atomically and returns the one-line summary.
pub fn run(config: &RunConfig) -> Result<String, CliError> {
    let outcome = execute(config, Exec::default())?;
    write_atomic(&config.out, &outcome.artifact.render(config.format))?;
    Ok(summary(config, &outcome))
}

pub fn summary(config: &RunConfig, outcome: &Outcome) -> String {
    let mut root = Map::new();
    root.insert("command".into(), Value::from(config.params.command()));
    let params: Map<String, Value> = outcome
        .params
        .iter()
        .map(|(k, v)| (k.clone(), Value::from(v.as_str())))
        .collect();
    root.insert("params".into(), Value::Object(params));
    root.insert(
        "output".into(),
        Value::from(config.out.display().to_string()),
    );
    root.insert("format".into(), Value::from(config.format.extension()));
    for (k, v) in &outcome.highlights {
        root.insert(k.clone(), v.clone());
    }
    Value::Object(root).to_string()
}

fn spectrum(c: &SpectrumConfig, exec: Exec) -> Result<Outcome, CliError> {
    let spec = match c.system {
        SystemKind::Single => SystemSpec::single_fluxon(c.m_min, c.delta),
        SystemKind::TwoFluxon => SystemSpec::two_fluxon(c.m_min, c.delta),
        SystemKind::TwoFluxonPhysical => SystemSpec::two_fluxon(c.m_min, c.delta)
            .with_coupling(TwoFluxonCoupling::Physical)
            .with_orientations(c.orientations.to_vec()),
        other => {
            return Err(usage(format!(
                "spectrum does not support system '{}'",
                other.name()
            )))
        }
    }
    .with_dispersion(c.dispersion);
    let table = band_sweep_with(exec, &spec, c.m_min, c.m_max)?;

    let mut params = vec![
        kv("system", c.system.name()),
        kv("delta", c.delta),
        kv("m_min", c.m_min),
        kv("m_max", c.m_max),
        kv("dispersion", c.dispersion),
    ];
    if c.system == SystemKind::TwoFluxonPhysical {
        params.push(kv(
            "orientations",
            format!("{},{}", c.orientations[0].sign(), c.orientations[1].sign()),
        ));
    }

    let mut meta = conventions();
    meta.push(kv("command", "spectrum"));
    meta.extend(params.iter().cloned());
    match c.system {
        SystemKind::Single => meta.push(kv(
            "band_labels",
            "E_minus = lower branch; E_plus = upper branch",
        )),
        SystemKind::TwoFluxon => meta.extend(two_fluxon_labels()),
        _ => meta.push(kv(
            "band_labels",
            "E1..E4 in ascending order; no closed form",
        )),
    }

    let mut columns = vec!["m".to_string()];
    columns.extend(table.band_labels.iter().cloned());
    if table.closed.is_some() {
        columns.extend(table.band_labels.iter().map(|l| format!("{l}_closed")));
    }
    let rows = table
        .m_values
        .iter()
        .enumerate()
        .map(|(i, &m)| {
            let mut row = vec![Cell::Int(m)];
            row.extend(table.labelled[i].iter().map(|&e| Cell::Float(e)));
            if let Some(closed) = &table.closed {
                row.extend(closed[i].iter().map(|&e| Cell::Float(e)));
            }
            row
        })
        .collect();

    let mut highlights = vec![("rows".to_string(), Value::from(table.m_values.len()))];
    if let Some(dev) = table.max_closed_deviation() {
        highlights.push(("max_closed_deviation".into(), json_float(dev)));
    }
    Ok(Outcome {
        artifact: Artifact {
            meta,
            columns,
            rows,
            json_extra: Vec::new(),
        },
        params,
        highlights,
    })
}

fn bloch(c: &BlochConfig, exec: Exec) -> Result<Outcome, CliError> {
    let states = bloch_sweep_with(exec, c.dispersion, c.delta, c.m_min, c.m_max)?;
    let params = vec![
        kv("delta", c.delta),
        kv("m_min", c.m_min),
        kv("m_max", c.m_max),
        kv("dispersion", c.dispersion),
    ];
    let mut meta = conventions();
    meta.push(kv("command", "bloch"));
    meta.extend(params.iter().cloned());
    meta.push(kv(
        "band_labels",
        "lower = E_minus eigenstate; upper = E_plus eigenstate",
    ));
    meta.push(kv(
        "bloch_vector",
        "(2 Re(conj(a) b), 2 Im(conj(a) b), |a|^2 - |b|^2) for a|0> + b|1>",
    ));

    let columns = ["m", "band", "x", "y", "z", "energy"]
        .map(String::from)
        .to_vec();
    let rows: Vec<Vec<Cell>> = states
        .iter()
        .map(|s| {
            vec![
                Cell::Int(s.m),
                Cell::Text(s.band.name().to_string()),
                Cell::Float(s.bloch.x),
                Cell::Float(s.bloch.y),
                Cell::Float(s.bloch.z),
                Cell::Float(s.energy),
            ]
        })
        .collect();
    let list: Vec<Value> = rows
        .iter()
        .map(|row| {
            let obj: Map<String, Value> = columns
                .iter()
                .zip(row)
                .map(|(k, cell)| (k.clone(), cell.json()))
                .collect();
            Value::Object(obj)
        })
        .collect();

    Ok(Outcome {
        artifact: Artifact {
            meta,
            columns,
            rows,
            json_extra: vec![("states".into(), Value::Array(list))],
        },
        params,
        highlights: vec![("states".into(), Value::from(states.len()))],
    })
}

fn experiment(command: &str, res: ExperimentResult) -> Outcome {
    let mut meta = conventions();
    meta.push(kv("command", command));
    meta.extend(res.metadata.iter().cloned());
    meta.push(kv("peak_channel", &res.peak_channel));
    if command == "teleport" {
        meta.extend(two_fluxon_labels());
    }

    let series = &res.series;
    let mut columns = vec!["t".to_string()];
    columns.extend(series.channels().iter().map(|(n, _)| n.clone()));
    let rows = series
        .times
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let mut row = vec![Cell::Float(t)];
            row.extend(series.channels().iter().map(|(_, v)| Cell::Float(v[i])));
            row
        })
        .collect();

    let mut highlights = vec![
        (
            "peak_channel".to_string(),
            Value::from(res.peak_channel.as_str()),
        ),
        ("peak_value".into(), json_float(res.peak_value)),
        ("peak_time".into(), json_float(res.peak_time)),
    ];
    if let Some(t) = res.meta("transferred") {
        highlights.push(("transferred".into(), Value::from(t == "true")));
    }
    let params = res
        .metadata
        .iter()
        .filter(|(k, _)| k != "transferred")
        .cloned()
        .collect();
    Outcome {
        artifact: Artifact {
            meta,
            columns,
            rows,
            json_extra: Vec::new(),
        },
        params,
        highlights,
    }
}

fn decompose(c: &DecomposeConfig) -> Result<Outcome, CliError> {
    let d = c.dispersion;
    let (h, n_sites, quoted, site_names) = match c.system {
        SystemKind::Single => (
            build_single_fluxon_with(d, c.m, c.delta),
            1,
            Some(QuotedCoefficients::single_fluxon(c.m, c.delta)),
            "fluxon",
        ),
        SystemKind::TwoFluxon => (
            build_two_fluxon_with(d, c.m, c.delta),
            2,
            Some(QuotedCoefficients::two_fluxon(c.m, c.delta)),
            "fluxon1,fluxon2",
        ),
        SystemKind::TwoFluxonPhysical => (
            build_two_fluxon_physical_with(d, c.m, c.delta, c.orientations[0], c.orientations[1]),
            2,
            None,
            "fluxon1,fluxon2",
        ),
        SystemKind::Driven => (
            build_driven_with(d, c.delta, c.g1, c.g2),
            2,
            None,
            "fluxon,electron",
        ),
        SystemKind::Ising => (
            build_ising_two_qubit(c.delta, c.g1, c.g2),
            2,
            None,
            "electron,fluxon",
        ),
        SystemKind::Chain => {
            let n = c.link_ms.len() + 1;
            (
                build_chain_with(d, n, &c.link_ms, c.delta)?,
                n,
                None,
                "fluxon0..fluxonN-1",
            )
        }
    };
    let dec: PauliDecomposition = if c.system == SystemKind::Chain {
        chain_decomposition(d, n_sites, &c.link_ms, c.delta)?
    } else {
        pauli_decompose(&h, n_sites)?
    };
    let residual = dec.reconstruct().max_abs_diff(&h);

    let mut params = vec![kv("system", c.system.name())];
    match c.system {
        SystemKind::Driven | SystemKind::Ising => {
            params.push(kv("delta", c.delta));
            params.push(kv("g1", c.g1));
            params.push(kv("g2", c.g2));
        }
        SystemKind::Chain => {
            let links: Vec<String> = c.link_ms.iter().map(i64::to_string).collect();
            params.push(kv("n", n_sites));
            params.push(kv("link_ms", links.join(",")));
            params.push(kv("delta", c.delta));
        }
        _ => {
            params.push(kv("m", c.m));
            params.push(kv("delta", c.delta));
        }
    }
    if c.system == SystemKind::TwoFluxonPhysical {
        params.push(kv(
            "orientations",
            format!("{},{}", c.orientations[0].sign(), c.orientations[1].sign()),
        ));
    }
    if c.system != SystemKind::Ising {
        params.push(kv("dispersion", d));
    }

    let mut meta = conventions();
    meta.push(kv("command", "decompose"));
    meta.extend(params.iter().cloned());
    meta.push(kv("sites", site_names));
    meta.push(kv(
        "expansion",
        "H = h0 I + sum_i (hx X_i + hy Y_i + hz Z_i) + sum_{i<j} J_ij Z_i Z_j",
    ));
    meta.push(kv(
        "reconstruction_error",
        crate::output::format_float(residual),
    ));
    if let Some(q) = quoted {
        let f = crate::output::format_float;
        meta.push(kv("quoted_h0", f(q.h0)));
        meta.push(kv(
            "quoted_field",
            format!("{};{};{}", f(q.field[0]), f(q.field[1]), f(q.field[2])),
        ));
        if let Some(j) = q.j {
            meta.push(kv("quoted_J", f(j)));
        }
        meta.push(kv(
            "quoted_note",
            "alternate closed-form coefficients; they do not reproduce the matrix",
        ));
    }

    let columns = ["term", "site_i", "site_j", "coefficient"]
        .map(String::from)
        .to_vec();
    let rows: Vec<Vec<Cell>> = dec
        .terms()
        .into_iter()
        .map(|(s, coeff)| {
            let sites: Vec<usize> = s
                .ops()
                .iter()
                .enumerate()
                .filter(|(_, op)| **op != PauliOp::I)
                .map(|(i, _)| i)
                .collect();
            let site = |k: usize| sites.get(k).map_or(Cell::Empty, |&i| Cell::Int(i as i64));
            vec![
                Cell::Text(s.to_string()),
                site(0),
                site(1),
                Cell::Float(coeff),
            ]
        })
        .collect();

    let mut highlights = vec![
        ("h0".to_string(), json_float(dec.h0)),
        ("reconstruction_error".into(), json_float(residual)),
    ];
    if n_sites == 2 {
        highlights.push(("J".into(), json_float(dec.coupling(0, 1))));
    }
    Ok(Outcome {
        artifact: Artifact {
            meta,
            columns,
            rows,
            json_extra: Vec::new(),
        },
        params,
        highlights,
    })
}
