//! The four subcommands. Each returns its result document; files are
//! written only when an output directory is configured.

use std::fs;
use std::path::Path;

use nucc_core::builder::{block_cnot_count, PlannedBlock, SignPhase};
use nucc_core::circuit::{to_json, to_text};
use nucc_core::resources::{benchmark_molecules, report, reports_to_csv, ExcitationSet, CONVENTIONS};
use nucc_core::sim::{expectation, ground_state_with, ORACLE_LIMIT};
use nucc_core::{
    assemble_circuit, plan_state_prep, run_postselected, run_sampled, CCAmplitudes, CircuitIR, ExcitationTerm,
    HamiltonianSpec, ResourceQuery, ResourceReport, StatePrepPlan, StateVector,
};
use serde::Serialize;

use crate::config::{load_inputs, write_file, Mode, RunConfig};
use crate::error::{CliError, CliResult};

/// `2^ 3^ 0 1` for `a+_2 a+_3 a_0 a_1`.
pub fn term_label(term: &ExcitationTerm) -> String {
    let creations = term.creations().iter().map(|c| format!("{c}^"));
    let annihilations = term.annihilations().iter().map(|a| a.to_string());
    creations.chain(annihilations).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Serialize)]
pub struct PlanEntry {
    pub block: usize,
    pub term: String,
    pub creations: Vec<usize>,
    pub annihilations: Vec<usize>,
    pub alpha: f64,
    pub theta: f64,
    pub sign_phase: SignPhase,
    pub cnot_equivalent: usize,
}

impl PlanEntry {
    fn new(block: usize, planned: &PlannedBlock) -> Self {
        PlanEntry {
            block,
            term: term_label(&planned.term),
            creations: planned.term.creations().to_vec(),
            annihilations: planned.term.annihilations().to_vec(),
            alpha: planned.term.amplitude(),
            theta: planned.angle.theta,
            sign_phase: planned.angle.sign_phase,
            cnot_equivalent: block_cnot_count(&planned.term),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct QubitBudget {
    pub system: usize,
    pub ancillas: usize,
    pub total: usize,
    /// Total when every block gets its own ancillas instead of reusing them.
    pub total_without_reuse: usize,
}

#[derive(Debug, Serialize)]
pub struct PrepareDocument {
    pub config: RunConfig,
    pub conventions: &'static str,
    pub reference_occupation: u64,
    pub drop_threshold: f64,
    pub blocks: Vec<PlanEntry>,
    pub qubits: QubitBudget,
}

#[derive(Debug, Serialize)]
pub struct SampledSuccess {
    pub shots: u64,
    pub successes: u64,
    pub rate: f64,
    /// Binomial standard deviation of the rate at the exact probability.
    pub sigma: f64,
}

#[derive(Debug, Serialize)]
pub struct BlockProbability {
    pub label: String,
    pub probability: f64,
}

#[derive(Debug, Serialize)]
pub struct SimulateDocument {
    pub config: RunConfig,
    pub conventions: &'static str,
    pub n_system_qubits: usize,
    pub n_qubits: usize,
    pub n_blocks: usize,
    pub energy: f64,
    pub reference_energy: Option<f64>,
    pub success_probability: f64,
    pub block_probabilities: Vec<BlockProbability>,
    pub sampled: Option<SampledSuccess>,
    pub ground_energy: Option<f64>,
    pub ground_state_overlap: Option<f64>,
    pub cc_reference_energy: Option<f64>,
    pub delta_vs_cc_reference: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct ResourcesDocument {
    pub config: RunConfig,
    pub conventions: &'static str,
    pub reports: Vec<ResourceReport>,
}

#[derive(Debug, Serialize)]
pub struct SpectrumDocument {
    pub config: RunConfig,
    pub conventions: &'static str,
    pub n_qubits: usize,
    pub n_electrons: usize,
    pub ground_energy: f64,
    pub reference_energy: Option<f64>,
    pub hf_overlap: f64,
    pub prepared_overlap: Option<f64>,
    pub prepared_energy: Option<f64>,
}

fn out_path(config: &RunConfig, name: &str) -> CliResult<Option<std::path::PathBuf>> {
    let Some(dir) = &config.output_dir else {
        return Ok(None);
    };
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.clone(),
        source,
    })?;
    Ok(Some(dir.join(name)))
}

fn emit(config: &RunConfig, name: &str, contents: &str) -> CliResult<()> {
    if let Some(path) = out_path(config, name)? {
        write_file(&path, contents)?;
    }
    Ok(())
}

fn emit_json<T: Serialize>(config: &RunConfig, name: &str, doc: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(doc).expect("documents serialize");
    emit(config, name, &(text + "\n"))
}

fn require_hamiltonian(spec: Option<HamiltonianSpec>, command: &str) -> CliResult<HamiltonianSpec> {
    spec.ok_or_else(|| CliError::Usage(format!("{command} needs --hamiltonian")))
}

/// The plan for the configured amplitudes, or an empty (reference-only)
/// plan when none are given.
fn build_plan(
    config: &RunConfig,
    spec: Option<&HamiltonianSpec>,
    amps: Option<&CCAmplitudes>,
) -> CliResult<StatePrepPlan> {
    let plan = match (amps, spec) {
        (Some(a), _) => plan_state_prep(a, config.drop_threshold),
        (None, Some(s)) => StatePrepPlan::from_terms(
            s.n_qubits,
            s.reference_occupation,
            std::iter::empty(),
            config.drop_threshold,
        ),
        (None, None) => {
            return Err(CliError::Usage(format!(
                "{} needs --amplitudes or --hamiltonian",
                config.command
            )))
        }
    };
    plan.map_err(|e| CliError::core("state-preparation plan", e))
}

fn build_circuit(plan: &StatePrepPlan) -> CliResult<CircuitIR> {
    assemble_circuit(plan, true).map_err(|e| CliError::core("circuit assembly", e))
}

fn core<T>(context: &str, r: nucc_core::Result<T>) -> CliResult<T> {
    r.map_err(|e| CliError::core(context, e))
}

pub fn prepare(config: RunConfig) -> CliResult<PrepareDocument> {
    let (spec, amps) = load_inputs(&config)?;
    let plan = build_plan(&config, spec.as_ref(), amps.as_ref())?;
    let circ = build_circuit(&plan)?;
    let blocks: Vec<PlanEntry> = plan
        .blocks
        .iter()
        .enumerate()
        .map(|(k, b)| PlanEntry::new(k, b))
        .collect();
    let doc = PrepareDocument {
        conventions: CONVENTIONS,
        reference_occupation: plan.reference_occupation,
        drop_threshold: plan.drop_threshold,
        qubits: QubitBudget {
            system: plan.n_system_qubits,
            ancillas: circ.n_ancillas(),
            total: circ.n_qubits(),
            total_without_reuse: plan.n_system_qubits + plan.n_ancillas(false),
        },
        blocks,
        config,
    };

    let mut csv = String::from("block,term,alpha,theta,sign_phase,cnot_equivalent\n");
    for b in &doc.blocks {
        csv += &format!(
            "{},{},{:?},{:?},{:?},{}\n",
            b.block, b.term, b.alpha, b.theta, b.sign_phase, b.cnot_equivalent
        );
    }
    emit(&doc.config, "circuit.txt", &to_text(&circ))?;
    emit(&doc.config, "circuit.json", &to_json(&circ))?;
    emit(&doc.config, "plan.csv", &csv)?;
    emit_json(&doc.config, "plan.json", &doc)?;
    Ok(doc)
}

pub fn simulate(config: RunConfig) -> CliResult<SimulateDocument> {
    let (spec, amps) = load_inputs(&config)?;
    let spec = require_hamiltonian(spec, "simulate")?;
    let plan = build_plan(&config, Some(&spec), amps.as_ref())?;
    let circ = build_circuit(&plan)?;
    let init = core("initial state", StateVector::zero(plan.n_system_qubits))?;

    let run = core("post-selected simulation", run_postselected(&circ, &init))?;
    let energy = core("energy", expectation(&run.final_state, &spec.qubit_hamiltonian))?;

    let sampled = match config.mode {
        Mode::Postselect => None,
        Mode::Sample => {
            let record = core(
                "sampled simulation",
                run_sampled(&circ, &init, config.seed, config.shots),
            )?;
            let p = run.success_probability;
            Some(SampledSuccess {
                shots: record.shots,
                successes: record.successes,
                rate: record.success_rate(),
                sigma: (p * (1.0 - p) / record.shots as f64).sqrt(),
            })
        }
    };

    let (ground_energy, ground_state_overlap) = if spec.n_qubits <= ORACLE_LIMIT {
        let (e0, ground) = core(
            "eigensolver",
            ground_state_with(&spec.qubit_hamiltonian, &config.eigen_options(&spec)),
        )?;
        (Some(e0), Some(core("overlap", run.final_state.overlap(&ground))?))
    } else {
        (None, None)
    };

    let cc_reference_energy = amps
        .as_ref()
        .and_then(|a| a.cc_reference_energy)
        .or(spec.cc_reference_energy);
    let doc = SimulateDocument {
        conventions: CONVENTIONS,
        n_system_qubits: circ.n_system(),
        n_qubits: circ.n_qubits(),
        n_blocks: plan.blocks.len(),
        energy,
        reference_energy: spec.reference_energy,
        success_probability: run.success_probability,
        block_probabilities: run
            .block_labels
            .iter()
            .zip(&run.per_block_probabilities)
            .map(|(label, &probability)| BlockProbability {
                label: label.clone(),
                probability,
            })
            .collect(),
        sampled,
        ground_energy,
        ground_state_overlap,
        cc_reference_energy,
        delta_vs_cc_reference: cc_reference_energy.map(|cc| energy - cc),
        config,
    };

    let mut csv = String::from("block,term,alpha,probability,cumulative_probability\n");
    let mut cumulative = 1.0;
    for ((k, planned), p) in plan.blocks.iter().enumerate().zip(&run.per_block_probabilities) {
        cumulative *= p;
        csv += &format!(
            "{k},{},{:?},{:?},{:?}\n",
            term_label(&planned.term),
            planned.term.amplitude(),
            p,
            cumulative
        );
    }
    emit(&doc.config, "blocks.csv", &csv)?;
    emit_json(&doc.config, "simulate.json", &doc)?;
    Ok(doc)
}

fn stem(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().split('.').next().unwrap_or_default().to_string())
        .unwrap_or_default()
}

/// Queries for one precision: the amplitudes' own excitations when given,
/// all singles and doubles of the Hamiltonian's system otherwise, and the
/// benchmark molecules when neither input is named.
fn resource_queries(
    config: &RunConfig,
    spec: Option<&HamiltonianSpec>,
    amps: Option<&CCAmplitudes>,
    epsilon: f64,
) -> CliResult<Vec<ResourceQuery>> {
    if let Some(a) = amps {
        let plan = core("state-preparation plan", plan_state_prep(a, config.drop_threshold))?;
        let label = config.amplitudes_path.as_deref().map(stem).unwrap_or_default();
        return Ok(vec![ResourceQuery {
            label,
            n_spin_orbitals: a.n_spin_orbitals,
            n_electrons: a.n_electrons,
            epsilon,
            excitations: ExcitationSet::Explicit(plan.terms().cloned().collect()),
        }]);
    }
    if let (Some(s), Some(h)) = (spec, config.hamiltonian.as_ref()) {
        return Ok(vec![ResourceQuery {
            label: stem(&h.path),
            n_spin_orbitals: s.n_qubits,
            n_electrons: s.n_electrons,
            epsilon,
            excitations: ExcitationSet::AllSinglesDoubles,
        }]);
    }
    Ok(benchmark_molecules()
        .iter()
        .map(|m| ResourceQuery::for_molecule(m, epsilon))
        .collect())
}

pub fn resources(config: RunConfig) -> CliResult<ResourcesDocument> {
    let (spec, amps) = load_inputs(&config)?;
    let mut reports = Vec::new();
    for &epsilon in &config.epsilon_list {
        let batch = resource_queries(&config, spec.as_ref(), amps.as_ref(), epsilon)?
            .iter()
            .map(|q| core(&q.label, report(q)))
            .collect::<CliResult<Vec<_>>>()?;
        emit(&config, &format!("resources_eps{epsilon}.csv"), &reports_to_csv(&batch))?;
        reports.extend(batch);
    }

    // ratio series against the total number of excitations
    let mut series: Vec<&ResourceReport> = reports.iter().collect();
    series.sort_by(|a, b| {
        a.epsilon
            .total_cmp(&b.epsilon)
            .reverse()
            .then(a.n_excitations().cmp(&b.n_excitations()))
    });
    let mut csv = String::from("label,epsilon,n_excitations,cnot_ratio,t_ratio\n");
    for r in series {
        csv += &format!(
            "{},{},{},{:?},{:?}\n",
            r.label,
            r.epsilon,
            r.n_excitations(),
            r.cnot_ratio,
            r.t_ratio
        );
    }
    emit(&config, "ratios.csv", &csv)?;

    let doc = ResourcesDocument {
        config,
        conventions: CONVENTIONS,
        reports,
    };
    emit_json(&doc.config, "resources.json", &doc)?;
    Ok(doc)
}

pub fn spectrum(config: RunConfig) -> CliResult<SpectrumDocument> {
    let (spec, amps) = load_inputs(&config)?;
    let spec = require_hamiltonian(spec, "spectrum")?;
    if spec.n_qubits > ORACLE_LIMIT {
        return Err(CliError::core(
            "spectrum",
            nucc_core::Error::DimensionLimit {
                n_qubits: spec.n_qubits,
                limit: ORACLE_LIMIT,
                what: "exact diagonalisation",
            },
        ));
    }
    let (ground_energy, ground) = core(
        "eigensolver",
        ground_state_with(&spec.qubit_hamiltonian, &config.eigen_options(&spec)),
    )?;
    let hf = core(
        "reference state",
        StateVector::basis(spec.n_qubits, spec.reference_occupation),
    )?;
    let hf_overlap = core("overlap", hf.overlap(&ground))?;

    let (prepared_overlap, prepared_energy) = match amps {
        Some(a) => {
            let plan = build_plan(&config, Some(&spec), Some(&a))?;
            let circ = build_circuit(&plan)?;
            let init = core("initial state", StateVector::zero(plan.n_system_qubits))?;
            let state = core("post-selected simulation", run_postselected(&circ, &init))?.final_state;
            (
                Some(core("overlap", state.overlap(&ground))?),
                Some(core("energy", expectation(&state, &spec.qubit_hamiltonian))?),
            )
        }
        None => (None, None),
    };

    let doc = SpectrumDocument {
        config,
        conventions: CONVENTIONS,
        n_qubits: spec.n_qubits,
        n_electrons: spec.n_electrons,
        ground_energy,
        reference_energy: spec.reference_energy,
        hf_overlap,
        prepared_overlap,
        prepared_energy,
    };
    emit_json(&doc.config, "spectrum.json", &doc)?;
    Ok(doc)
}
