#![allow(dead_code)]

use std::path::PathBuf;

use nucc_core::builder::{ExcitationTerm, StatePrepPlan};
use nucc_core::circuit::{CircuitIR, Step};
use nucc_core::{Error, Result, StateVector};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn fixture_json(name: &str) -> serde_json::Value {
    serde_json::from_str(&fixture(name)).expect("fixture JSON")
}

/// Operator applied to the qubits below `n_low` when the circuit's gates run
/// on `|k>` (upper qubits in |0>) and every measurement is projected onto
/// `outcomes[m]` without renormalization. Column `k` is the image of `|k>`.
pub fn branch_operator(circ: &CircuitIR, n_low: usize, outcomes: &[u8]) -> Vec<Vec<Complex64>> {
    let dim = 1usize << n_low;
    let mut columns = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << circ.n_qubits()];
        amps[k] = Complex64::new(1.0, 0.0);
        let mut state = StateVector::from_amplitudes(amps).unwrap();
        let mut weight = 1.0f64;
        let mut m = 0;
        let mut alive = true;
        for step in circ.steps() {
            match step {
                Step::Gate(g) => state.apply_gate(g).unwrap(),
                Step::Reset(q) => state.reset(*q).unwrap(),
                Step::Measure(op) => {
                    match state.project(op.qubit, outcomes[m], op.pre_rotation) {
                        Ok(p) => weight *= p,
                        Err(Error::ZeroBranch { .. }) => alive = false,
                        Err(e) => panic!("{e}"),
                    }
                    m += 1;
                    if !alive {
                        break;
                    }
                }
            }
        }
        let column = if alive {
            let scale = weight.sqrt();
            let low = state.split_low(n_low).unwrap();
            // recover the ancilla phase lost by split_low's renormalization
            let (argmax, _) = state
                .amplitudes()
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
                .unwrap();
            let reference = low.amplitudes()[argmax & (dim - 1)];
            let phase = state.amplitudes()[argmax] / reference;
            low.amplitudes().iter().map(|a| a * phase * scale).collect()
        } else {
            vec![Complex64::new(0.0, 0.0); dim]
        };
        columns.push(column);
    }
    columns
}

/// Random n-body excitation on `n` qubits with |alpha| <= `max_alpha`.
pub fn random_term(rng: &mut impl Rng, n: usize, n_body: usize, max_alpha: f64) -> ExcitationTerm {
    let mut qubits: Vec<usize> = (0..n).collect();
    qubits.shuffle(rng);
    let mut creations = qubits[..n_body].to_vec();
    let mut annihilations = qubits[n_body..2 * n_body].to_vec();
    creations.sort_unstable();
    annihilations.sort_unstable();
    let alpha = rng.gen_range(-max_alpha..=max_alpha);
    ExcitationTerm::new(creations, annihilations, alpha).unwrap()
}

/// Random plan whose every block acts non-trivially somewhere along the way:
/// system of `n` qubits, reference with `n_e` electrons at random positions.
pub fn random_plan(rng: &mut impl Rng, n: usize, n_blocks: usize, max_alpha: f64) -> Result<StatePrepPlan> {
    let n_e = rng.gen_range(1..n);
    let mut positions: Vec<usize> = (0..n).collect();
    positions.shuffle(rng);
    let reference = positions[..n_e].iter().fold(0u64, |acc, &p| acc | 1 << p);
    let terms: Vec<ExcitationTerm> = (0..n_blocks)
        .map(|_| {
            let max_body = (n / 2).min(2);
            let body = rng.gen_range(1..=max_body);
            random_term(rng, n, body, max_alpha)
        })
        .collect();
    StatePrepPlan::from_terms(n, reference, terms, 0.0)
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
