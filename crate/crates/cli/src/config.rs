//! Resolved run configuration and input loading.

use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use nucc_core::chem::{build_qubit_hamiltonian, parse_amplitudes, parse_fcidump, parse_pauli_hamiltonian};
use nucc_core::sim::EigenOptions;
use nucc_core::{CCAmplitudes, HamiltonianSpec};
use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HamiltonianFormat {
    Fcidump,
    Pauli,
}

impl HamiltonianFormat {
    /// Files whose name mentions FCIDUMP are integrals; everything else is
    /// read as a Pauli sum.
    pub fn infer(path: &Path) -> Self {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().to_ascii_lowercase())
            .unwrap_or_default();
        if name.contains("fcidump") {
            HamiltonianFormat::Fcidump
        } else {
            HamiltonianFormat::Pauli
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Postselect,
    Sample,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HamiltonianSource {
    pub path: PathBuf,
    pub format: HamiltonianFormat,
}

/// Everything a command needs, after defaults are applied. Embedded
/// verbatim in every output document.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub hamiltonian: Option<HamiltonianSource>,
    pub amplitudes_path: Option<PathBuf>,
    pub drop_threshold: f64,
    pub epsilon_list: Vec<f64>,
    pub mode: Mode,
    pub shots: u64,
    pub seed: u64,
    pub output_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        if !(self.drop_threshold >= 0.0 && self.drop_threshold.is_finite()) {
            return Err(CliError::Usage(format!(
                "--threshold must be a finite non-negative number, got {}",
                self.drop_threshold
            )));
        }
        if let Some(eps) = self.epsilon_list.iter().find(|e| !(**e > 0.0 && **e < 1.0)) {
            return Err(CliError::Usage(format!(
                "--epsilon values must lie in (0, 1), got {eps}"
            )));
        }
        if self.mode == Mode::Sample && self.shots == 0 {
            return Err(CliError::Usage("sample mode needs --shots >= 1".into()));
        }
        Ok(())
    }

    /// Eigensolver settings: integral Hamiltonians conserve particle number
    /// and spin, so the search stays in the reference's sector; Pauli
    /// Hamiltonians are searched over the whole space.
    pub fn eigen_options(&self, spec: &HamiltonianSpec) -> EigenOptions {
        let base = match self.hamiltonian.as_ref().map(|h| h.format) {
            Some(HamiltonianFormat::Fcidump) => EigenOptions::for_reference(spec.reference_occupation),
            _ => EigenOptions {
                start: Some(spec.reference_occupation),
                ..EigenOptions::default()
            },
        };
        EigenOptions {
            seed: self.seed,
            ..base
        }
    }
}

pub fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_hamiltonian(source: &HamiltonianSource) -> CliResult<HamiltonianSpec> {
    let text = read_file(&source.path)?;
    let context = source.path.display().to_string();
    let spec = match source.format {
        HamiltonianFormat::Fcidump => parse_fcidump(&text).and_then(|ints| build_qubit_hamiltonian(&ints)),
        HamiltonianFormat::Pauli => parse_pauli_hamiltonian(&text),
    };
    spec.map_err(|e| CliError::core(context, e))
}

pub fn load_amplitudes(path: &Path) -> CliResult<CCAmplitudes> {
    let text = read_file(path)?;
    parse_amplitudes(&text).map_err(|e| CliError::core(path.display().to_string(), e))
}

/// Loads whichever inputs the configuration names and checks that they
/// describe the same system. A Pauli Hamiltonian without an electron count
/// adopts the amplitudes' count.
pub fn load_inputs(config: &RunConfig) -> CliResult<(Option<HamiltonianSpec>, Option<CCAmplitudes>)> {
    let mut spec = config.hamiltonian.as_ref().map(load_hamiltonian).transpose()?;
    let amps = config.amplitudes_path.as_deref().map(load_amplitudes).transpose()?;
    if let (Some(s), Some(a)) = (spec.as_mut(), amps.as_ref()) {
        if s.n_qubits != a.n_spin_orbitals {
            return Err(CliError::Usage(format!(
                "Hamiltonian acts on {} qubits but the amplitudes describe {} spin-orbitals",
                s.n_qubits, a.n_spin_orbitals
            )));
        }
        if s.n_electrons != a.n_electrons {
            let is_pauli = config.hamiltonian.as_ref().map(|h| h.format) == Some(HamiltonianFormat::Pauli);
            if is_pauli && s.n_electrons == 0 {
                *s = s
                    .clone()
                    .with_electrons(a.n_electrons)
                    .map_err(|e| CliError::core("amplitudes", e))?;
            } else {
                return Err(CliError::Usage(format!(
                    "Hamiltonian has {} electrons but the amplitudes have {}",
                    s.n_electrons, a.n_electrons
                )));
            }
        }
    }
    Ok((spec, amps))
}
