//! Gate-count estimates for the non-unitary construction and for a
//! trotterized UCCSD circuit built from CNOT ladders.
//!
//! Conventions:
//! * non-unitary CNOTs are counted on the circuits the builder actually
//!   emits, with each controlled-S expanded into two CNOTs and CZ counted as
//!   one two-qubit gate;
//! * an n-body UCCSD excitation exponentiates `2^(2n-1)` Pauli strings of
//!   weight `w = 2n + |parity string|`, each costing `2(w-1)` CNOTs, with no
//!   cancellation between consecutive strings;
//! * T counts use `1.12 log2(1/eps) + 18n + 10.6` per non-unitary term and
//!   `2^(2n-1) (5.3 + 0.56 log2(1/eps))` per UCCSD term, each rounded to the
//!   nearest integer before summing.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::builder::{amplitude_to_angle, build_excitation_block, BlockLayout, ExcitationTerm};
use crate::circuit::gate_census;
use crate::error::{Error, Result};

/// Human-readable summary of the counting conventions, embedded in reports.
pub const CONVENTIONS: &str = "non-unitary CNOTs from built circuits (controlled-S = 2 CNOT, CZ = 1); \
UCCSD CNOTs = 2(w-1) per Pauli string of weight w including parity qubits, 2^(2n-1) strings per n-body term, no ladder cancellation; \
T counts per term rounded to nearest integer before summing";

/// Spin-orbital and electron counts of a molecule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoleculeConfig {
    pub name: String,
    pub n_spin_orbitals: usize,
    pub n_electrons: usize,
}

impl MoleculeConfig {
    pub fn new(name: &str, n_spin_orbitals: usize, n_electrons: usize) -> Self {
        MoleculeConfig {
            name: name.to_string(),
            n_spin_orbitals,
            n_electrons,
        }
    }
}

/// The benchmark set in minimal basis, active spaces as (spin-orbitals, electrons).
pub fn benchmark_molecules() -> Vec<MoleculeConfig> {
    [
        ("H2", 4, 2),
        ("H3", 6, 3),
        ("H4", 8, 4),
        ("LiH", 12, 4),
        ("BeH2", 14, 6),
        ("BH3", 16, 8),
        ("NH3", 16, 10),
        ("H2O", 14, 10),
        ("HF", 12, 10),
        ("OH", 12, 9),
    ]
    .into_iter()
    .map(|(name, n_so, n_e)| MoleculeConfig::new(name, n_so, n_e))
    .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ExcitationSet {
    AllSinglesDoubles,
    Explicit(Vec<ExcitationTerm>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResourceQuery {
    pub label: String,
    pub n_spin_orbitals: usize,
    pub n_electrons: usize,
    /// Rotation-synthesis precision, in (0, 1).
    pub epsilon: f64,
    pub excitations: ExcitationSet,
}

impl ResourceQuery {
    pub fn for_molecule(molecule: &MoleculeConfig, epsilon: f64) -> Self {
        ResourceQuery {
            label: molecule.name.clone(),
            n_spin_orbitals: molecule.n_spin_orbitals,
            n_electrons: molecule.n_electrons,
            epsilon,
            excitations: ExcitationSet::AllSinglesDoubles,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResourceReport {
    pub label: String,
    pub n_spin_orbitals: usize,
    pub n_electrons: usize,
    pub epsilon: f64,
    pub n_singles: usize,
    pub n_doubles: usize,
    pub cnot_nonunitary: u64,
    pub t_nonunitary: u64,
    pub cnot_uccsd: u64,
    pub t_uccsd: u64,
    /// Non-unitary over UCCSD.
    pub cnot_ratio: f64,
    pub t_ratio: f64,
}

impl ResourceReport {
    pub fn n_excitations(&self) -> usize {
        self.n_singles + self.n_doubles
    }
}

const EVEN: fn(usize) -> bool = |p| p % 2 == 0;

/// All spin-preserving singles and doubles from the lowest `n_electrons`
/// spin-orbitals into the rest, with unit amplitude, singles first.
pub fn enumerate_excitations(n_spin_orbitals: usize, n_electrons: usize) -> Result<Vec<ExcitationTerm>> {
    if n_electrons >= n_spin_orbitals {
        return Err(Error::InvalidInput(format!(
            "{n_electrons} electrons leave no virtual orbital among {n_spin_orbitals}"
        )));
    }
    let occ: Vec<usize> = (0..n_electrons).collect();
    let virt: Vec<usize> = (n_electrons..n_spin_orbitals).collect();
    let mut terms = Vec::new();
    for &i in &occ {
        for &a in &virt {
            if EVEN(i) == EVEN(a) {
                terms.push(ExcitationTerm::single(i, a, 1.0)?);
            }
        }
    }
    let ups = |p: usize, q: usize| usize::from(EVEN(p)) + usize::from(EVEN(q));
    for (x, &i) in occ.iter().enumerate() {
        for &j in &occ[x + 1..] {
            for (y, &a) in virt.iter().enumerate() {
                for &b in &virt[y + 1..] {
                    if ups(i, j) == ups(a, b) {
                        terms.push(ExcitationTerm::double(i, j, a, b, 1.0)?);
                    }
                }
            }
        }
    }
    Ok(terms)
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidInput(format!("epsilon {epsilon} outside (0, 1)")));
    }
    Ok(())
}

/// `round(1.12 log2(1/eps) + 18 n + 10.6)`
pub fn t_count_nonunitary(n_body: usize, epsilon: f64) -> u64 {
    (1.12 * (1.0 / epsilon).log2() + 18.0 * n_body as f64 + 10.6).round() as u64
}

/// `round(2^(2n-1) (5.3 + 0.56 log2(1/eps)))`
pub fn t_count_uccsd(n_body: usize, epsilon: f64) -> u64 {
    let strings = 2f64.powi(2 * n_body as i32 - 1);
    (strings * (5.3 + 0.56 * (1.0 / epsilon).log2())).round() as u64
}

/// Two-qubit gate count of the non-unitary blocks, taken from the census of
/// the circuits the builder produces on `n_system` system qubits.
pub fn cnot_count_nonunitary(terms: &[ExcitationTerm], n_system: usize) -> Result<u64> {
    let mut total = 0;
    for (k, term) in terms.iter().enumerate() {
        let n = term.n_body();
        let layout = BlockLayout::contiguous(n_system, n_system, n);
        let block = build_excitation_block(
            n_system + 2 * n + 1,
            term,
            &amplitude_to_angle(term.amplitude()),
            &layout,
            k,
        )?;
        total += gate_census(&block, true).cnot_equivalent() as u64;
    }
    Ok(total)
}

/// CNOT-ladder cost of exponentiating every Pauli string of each term.
pub fn cnot_count_uccsd(terms: &[ExcitationTerm]) -> u64 {
    terms
        .iter()
        .map(|t| {
            let n = t.n_body();
            let weight = 2 * n + t.jw_structure().z_string.len();
            (1u64 << (2 * n - 1)) * 2 * (weight as u64 - 1)
        })
        .sum()
}

pub fn report(query: &ResourceQuery) -> Result<ResourceReport> {
    check_epsilon(query.epsilon)?;
    let terms = match &query.excitations {
        ExcitationSet::AllSinglesDoubles => enumerate_excitations(query.n_spin_orbitals, query.n_electrons)?,
        ExcitationSet::Explicit(terms) => terms.clone(),
    };
    if let Some(t) = terms.iter().find(|t| t.max_index() >= query.n_spin_orbitals) {
        return Err(Error::InvalidInput(format!(
            "excitation index {} outside {} spin-orbitals",
            t.max_index(),
            query.n_spin_orbitals
        )));
    }
    let count_body = |n: usize| terms.iter().filter(|t| t.n_body() == n).count();
    let cnot_nonunitary = cnot_count_nonunitary(&terms, query.n_spin_orbitals)?;
    let cnot_uccsd = cnot_count_uccsd(&terms);
    let t_nonunitary = terms
        .iter()
        .map(|t| t_count_nonunitary(t.n_body(), query.epsilon))
        .sum();
    let t_uccsd = terms.iter().map(|t| t_count_uccsd(t.n_body(), query.epsilon)).sum();
    let ratio = |a: u64, b: u64| if b == 0 { f64::NAN } else { a as f64 / b as f64 };
    Ok(ResourceReport {
        label: query.label.clone(),
        n_spin_orbitals: query.n_spin_orbitals,
        n_electrons: query.n_electrons,
        epsilon: query.epsilon,
        n_singles: count_body(1),
        n_doubles: count_body(2),
        cnot_nonunitary,
        t_nonunitary,
        cnot_uccsd,
        t_uccsd,
        cnot_ratio: ratio(cnot_nonunitary, cnot_uccsd),
        t_ratio: ratio(t_nonunitary, t_uccsd),
    })
}

/// Comma-separated table, one row per report.
pub fn reports_to_csv(reports: &[ResourceReport]) -> String {
    let mut out = String::from(
        "molecule,n_spin_orbitals,n_electrons,epsilon,n_singles,n_doubles,n_excitations,\
cnot_nonunitary,t_nonunitary,cnot_uccsd,t_uccsd,cnot_ratio,t_ratio\n",
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{:.6},{:.6}",
            r.label,
            r.n_spin_orbitals,
            r.n_electrons,
            r.epsilon,
            r.n_singles,
            r.n_doubles,
            r.n_excitations(),
            r.cnot_nonunitary,
            r.t_nonunitary,
            r.cnot_uccsd,
            r.t_uccsd,
            r.cnot_ratio,
            r.t_ratio
        );
    }
    out
}
