use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::StateVector;
use crate::circuit::{CircuitIR, Step};
use crate::error::{Error, Result};

/// Outcome of a post-selected run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    /// System register after every measurement returned its desired outcome.
    pub final_state: StateVector,
    pub success_probability: f64,
    /// Success probability of each measurement group, in circuit order.
    pub per_block_probabilities: Vec<f64>,
    /// Group names (measurement label prefixes) matching the probabilities.
    pub block_labels: Vec<String>,
}

/// Tally of repeated sampled runs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotRecord {
    pub shots: u64,
    pub successes: u64,
    /// Outcome strings, one character per measurement in circuit order.
    pub outcome_histogram: BTreeMap<String, u64>,
}

impl ShotRecord {
    pub fn success_rate(&self) -> f64 {
        if self.shots == 0 {
            0.0
        } else {
            self.successes as f64 / self.shots as f64
        }
    }

    /// Combines two tallies; the operation is associative and commutative.
    pub fn merge(mut self, other: ShotRecord) -> ShotRecord {
        self.shots += other.shots;
        self.successes += other.successes;
        for (k, v) in other.outcome_histogram {
            *self.outcome_histogram.entry(k).or_insert(0) += v;
        }
        self
    }
}

fn initial_state(circ: &CircuitIR, init: &StateVector) -> Result<StateVector> {
    if init.n_qubits() == circ.n_qubits() {
        Ok(init.clone())
    } else if init.n_qubits() == circ.n_system() {
        init.extend(circ.n_ancillas())
    } else {
        Err(Error::QubitCountMismatch {
            left: circ.n_system(),
            right: init.n_qubits(),
        })
    }
}

/// Executes `circ` from `init` (system register or full register), forcing
/// every measurement onto its desired outcome.
pub fn run_postselected(circ: &CircuitIR, init: &StateVector) -> Result<RunResult> {
    let mut state = initial_state(circ, init)?;
    let mut success_probability = 1.0;
    let mut per_block_probabilities: Vec<f64> = Vec::new();
    let mut block_labels: Vec<String> = Vec::new();
    for step in circ.steps() {
        match step {
            Step::Gate(g) => state.apply_gate(g)?,
            Step::Reset(q) => state.reset(*q)?,
            Step::Measure(m) => {
                let group = m.block();
                if block_labels.last().map(String::as_str) != Some(group) {
                    block_labels.push(group.to_string());
                    per_block_probabilities.push(1.0);
                }
                let p = match state.project(m.qubit, m.desired_outcome, m.pre_rotation) {
                    Err(Error::ZeroBranch { .. }) => {
                        return Err(Error::ZeroProbabilityBlock {
                            block: block_labels.len() - 1,
                            label: m.label.clone(),
                        })
                    }
                    other => other?,
                };
                success_probability *= p;
                *per_block_probabilities.last_mut().expect("group pushed") *= p;
            }
        }
    }
    Ok(RunResult {
        final_state: state.split_low(circ.n_system())?,
        success_probability,
        per_block_probabilities,
        block_labels,
    })
}

/// Executes `circ` `shots` times, sampling every measurement from its Born
/// probability. A shot succeeds when all outcomes equal their desired
/// values. Results depend only on `seed`.
pub fn run_sampled(circ: &CircuitIR, init: &StateVector, seed: u64, shots: u64) -> Result<ShotRecord> {
    if shots == 0 {
        return Err(Error::InvalidInput("at least one shot is required".into()));
    }
    let mut prefix_state = initial_state(circ, init)?;
    let first_measure = circ
        .steps()
        .iter()
        .position(|s| matches!(s, Step::Measure(_)))
        .unwrap_or(circ.steps().len());
    for step in &circ.steps()[..first_measure] {
        match step {
            Step::Gate(g) => prefix_state.apply_gate(g)?,
            Step::Reset(q) => prefix_state.reset(*q)?,
            Step::Measure(_) => unreachable!("prefix holds no measurements"),
        }
    }
    let rest = &circ.steps()[first_measure..];

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut record = ShotRecord::default();
    for _ in 0..shots {
        let mut state = prefix_state.clone();
        let mut outcomes = String::new();
        let mut success = true;
        for step in rest {
            match step {
                Step::Gate(g) => state.apply_gate(g)?,
                Step::Reset(q) => state.reset(*q)?,
                Step::Measure(m) => {
                    let bit = state.measure_sample(m.qubit, m.pre_rotation, &mut rng)?;
                    success &= bit == m.desired_outcome;
                    outcomes.push(if bit == 0 { '0' } else { '1' });
                }
            }
        }
        record.shots += 1;
        record.successes += u64::from(success);
        *record.outcome_histogram.entry(outcomes).or_insert(0) += 1;
    }
    Ok(record)
}
