//! Circuit construction for non-unitary coupled-cluster state preparation.
//!
//! Each excitation `T = a+_{c0} a+_{c1} ... a_{a0} a_{a1} ...` with amplitude
//! `alpha` becomes a block that, when every measurement returns 0, maps the
//! system state `psi` to `(I + alpha T) psi` up to normalization:
//!
//! * an amplitude ancilla is prepared in `cos(theta/2)|0> +- sin(theta/2)|1>`
//!   with `tan^2(theta/2) = |alpha|` and later measured after `RY(-theta)`;
//! * one ancilla per ladder operator runs the single-operator primitive
//!   (H, controlled-S-dagger, X, controlled-S, phase, H) with the X and the
//!   phase controlled by the amplitude ancilla;
//! * the Jordan–Wigner parity string becomes controlled-Z gates from the
//!   amplitude ancilla, and its overall sign is folded into the ancilla phase.

use serde::{Deserialize, Serialize};

use crate::chem::CCAmplitudes;
use crate::circuit::{CircuitIR, GateKind, MeasureOp};
use crate::error::{Error, Result};
use crate::fermion::{jw_transform, FermionProduct};
use crate::pauli::PauliTermSum;

/// Default magnitude below which amplitudes are dropped from a plan.
pub const DEFAULT_DROP_THRESHOLD: f64 = 1e-8;

/// An n-body excitation `a+_{c0} ... a+_{c(n-1)} a_{a0} ... a_{a(n-1)}` with amplitude.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExcitationTerm {
    creations: Vec<usize>,
    annihilations: Vec<usize>,
    amplitude: f64,
}

/// Qubit-level shape of an excitation under Jordan–Wigner:
/// `T = sign * (product of |1><0| on creations and |0><1| on annihilations)
///      * (product of Z on z_string)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JwStructure {
    pub sign: i8,
    pub z_string: Vec<usize>,
}

fn strictly_increasing(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

impl ExcitationTerm {
    pub fn new(creations: Vec<usize>, annihilations: Vec<usize>, amplitude: f64) -> Result<Self> {
        if creations.is_empty() || creations.len() != annihilations.len() {
            return Err(Error::InvalidExcitation(format!(
                "need matching non-empty index lists, got {} creations and {} annihilations",
                creations.len(),
                annihilations.len()
            )));
        }
        if !strictly_increasing(&creations) || !strictly_increasing(&annihilations) {
            return Err(Error::InvalidExcitation(format!(
                "indices must be strictly increasing: {creations:?} <- {annihilations:?}"
            )));
        }
        if creations.iter().any(|c| annihilations.contains(c)) {
            return Err(Error::InvalidExcitation(format!(
                "creation and annihilation indices overlap: {creations:?} <- {annihilations:?}"
            )));
        }
        if !amplitude.is_finite() {
            return Err(Error::InvalidExcitation(format!("non-finite amplitude {amplitude}")));
        }
        Ok(ExcitationTerm {
            creations,
            annihilations,
            amplitude,
        })
    }

    /// `a+_a a_i`
    pub fn single(i: usize, a: usize, amplitude: f64) -> Result<Self> {
        ExcitationTerm::new(vec![a], vec![i], amplitude)
    }

    /// `a+_a a+_b a_i a_j`
    pub fn double(i: usize, j: usize, a: usize, b: usize, amplitude: f64) -> Result<Self> {
        ExcitationTerm::new(vec![a, b], vec![i, j], amplitude)
    }

    pub fn creations(&self) -> &[usize] {
        &self.creations
    }

    pub fn annihilations(&self) -> &[usize] {
        &self.annihilations
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn with_amplitude(&self, amplitude: f64) -> Self {
        ExcitationTerm {
            amplitude,
            ..self.clone()
        }
    }

    pub fn n_body(&self) -> usize {
        self.creations.len()
    }

    pub fn max_index(&self) -> usize {
        self.creations
            .iter()
            .chain(&self.annihilations)
            .copied()
            .max()
            .expect("non-empty")
    }

    /// The operator with unit coefficient.
    pub fn fermion_product(&self) -> FermionProduct {
        FermionProduct::excitation(&self.creations, &self.annihilations)
    }

    /// Jordan–Wigner image of the operator (unit coefficient) on `n` qubits.
    pub fn jw_image(&self, n: usize) -> Result<PauliTermSum> {
        jw_transform(&self.fermion_product(), n)
    }

    /// Sign and parity string of the Jordan–Wigner image.
    ///
    /// Each `a(+)_p` is `Z_0..Z_{p-1}` times a ladder on `p`. Moving every
    /// parity string to the right contributes one sign per inversion of the
    /// index sequence; qubit `j` then carries `Z^{c_j}` with `c_j` the number
    /// of factors with index above `j`. On a creation qubit the trailing Z is
    /// absorbed (`|1><0| Z = |1><0|`), on an annihilation qubit it yields -1.
    pub fn jw_structure(&self) -> JwStructure {
        let seq: Vec<usize> = self.creations.iter().chain(&self.annihilations).copied().collect();
        let mut negative = false;
        for (k, &p) in seq.iter().enumerate() {
            for &q in &seq[k + 1..] {
                negative ^= q < p;
            }
        }
        let count_above = |j: usize| seq.iter().filter(|&&p| p > j).count();
        for &j in &self.annihilations {
            negative ^= count_above(j) % 2 == 1;
        }
        let z_string = (0..self.max_index())
            .filter(|j| !seq.contains(j) && count_above(*j) % 2 == 1)
            .collect();
        JwStructure {
            sign: if negative { -1 } else { 1 },
            z_string,
        }
    }

    /// Ordering key: lower body count first, then annihilations, then creations.
    pub(crate) fn order_key(&self) -> (usize, &[usize], &[usize]) {
        (self.n_body(), &self.annihilations, &self.creations)
    }
}

/// Phase of the amplitude ancilla's `|1>` component.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignPhase {
    Zero,
    Pi,
}

impl SignPhase {
    pub fn radians(self) -> f64 {
        match self {
            SignPhase::Zero => 0.0,
            SignPhase::Pi => std::f64::consts::PI,
        }
    }
}

/// Amplitude-ancilla preparation `RY(theta)` followed by phase `sign_phase`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleSpec {
    pub theta: f64,
    pub sign_phase: SignPhase,
}

impl AngleSpec {
    /// The amplitude this angle injects: `+-tan^2(theta/2)`.
    pub fn alpha(&self) -> f64 {
        let magnitude = (self.theta / 2.0).tan().powi(2);
        match self.sign_phase {
            SignPhase::Zero => magnitude,
            SignPhase::Pi => -magnitude,
        }
    }
}

/// `theta = 2 atan(sqrt|alpha|)`, so that `tan^2(theta/2) = |alpha|`.
pub fn amplitude_to_angle(alpha: f64) -> AngleSpec {
    AngleSpec {
        theta: 2.0 * alpha.abs().sqrt().atan(),
        sign_phase: if alpha < 0.0 { SignPhase::Pi } else { SignPhase::Zero },
    }
}

/// Single-operator primitive on a circuit of `n_qubits` qubits.
///
/// The ancilla ends in an H-basis measurement whose outcome 0 applies
/// `(X - iY)/2 = |1><0|` to the target when `select_creation` (final phase
/// S-dagger), and `(X + iY)/2 = |0><1|` otherwise (final phase S). Outcome 1
/// applies the other operator. When the ancilla lies above the target, the
/// qubits below the ancilla form the fragment's system register.
pub fn build_fermionic_primitive(
    n_qubits: usize,
    target: usize,
    ancilla: usize,
    select_creation: bool,
) -> Result<CircuitIR> {
    if target == ancilla {
        return Err(Error::Layout(format!(
            "primitive target and ancilla are both qubit {target}"
        )));
    }
    let n_system = if target < ancilla { ancilla.min(n_qubits) } else { 0 };
    let mut c = CircuitIR::new(n_qubits, n_system)?;
    c.gate(GateKind::H, ancilla)?;
    c.controlled(GateKind::CSdg, ancilla, target)?;
    c.gate(GateKind::X, target)?;
    c.controlled(GateKind::CS, ancilla, target)?;
    c.gate(if select_creation { GateKind::Sdg } else { GateKind::S }, ancilla)?;
    c.gate(GateKind::H, ancilla)?;
    let label = if select_creation { "cre" } else { "ann" };
    c.measure(MeasureOp::new(ancilla, None, label))?;
    Ok(c)
}

/// Ancilla assignment for one excitation block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockLayout {
    pub n_system: usize,
    pub amplitude: usize,
    /// One ancilla per creation operator, in the term's order.
    pub creation_ancillas: Vec<usize>,
    /// One ancilla per annihilation operator, in the term's order.
    pub annihilation_ancillas: Vec<usize>,
}

impl BlockLayout {
    /// `2n+1` consecutive ancillas starting at `first`.
    pub fn contiguous(n_system: usize, first: usize, n_body: usize) -> Self {
        BlockLayout {
            n_system,
            amplitude: first,
            creation_ancillas: (first + 1..first + 1 + n_body).collect(),
            annihilation_ancillas: (first + 1 + n_body..first + 1 + 2 * n_body).collect(),
        }
    }

    pub fn ancillas(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.amplitude)
            .chain(self.creation_ancillas.iter().copied())
            .chain(self.annihilation_ancillas.iter().copied())
    }

    fn validate(&self, term: &ExcitationTerm, n_qubits: usize) -> Result<()> {
        let n = term.n_body();
        if self.creation_ancillas.len() != n || self.annihilation_ancillas.len() != n {
            return Err(Error::Layout(format!(
                "{n}-body term needs {} ancillas, layout has {}",
                2 * n + 1,
                1 + self.creation_ancillas.len() + self.annihilation_ancillas.len()
            )));
        }
        if term.max_index() >= self.n_system {
            return Err(Error::Layout(format!(
                "term touches qubit {} outside the {}-qubit system",
                term.max_index(),
                self.n_system
            )));
        }
        let mut seen = vec![false; n_qubits];
        for q in self.ancillas() {
            if q < self.n_system || q >= n_qubits {
                return Err(Error::Layout(format!(
                    "ancilla {q} outside [{}, {n_qubits})",
                    self.n_system
                )));
            }
            if std::mem::replace(&mut seen[q], true) {
                return Err(Error::Layout(format!("ancilla {q} assigned twice")));
            }
        }
        Ok(())
    }
}

/// Two-qubit gate count of a block in CNOTs: every ladder operator costs six
/// controlled-S gates' worth (two each) plus one CNOT; each parity qubit one CZ.
pub fn block_cnot_count(term: &ExcitationTerm) -> usize {
    14 * term.n_body() + term.jw_structure().z_string.len()
}

/// One post-selected block applying `I + alpha T`. Measurement labels are
/// prefixed with `b{block}`.
pub fn build_excitation_block(
    n_qubits: usize,
    term: &ExcitationTerm,
    angle: &AngleSpec,
    layout: &BlockLayout,
    block: usize,
) -> Result<CircuitIR> {
    layout.validate(term, n_qubits)?;
    let jw = term.jw_structure();
    let ctrl = layout.amplitude;
    let pairs: Vec<(usize, usize, bool)> = term
        .creations()
        .iter()
        .zip(&layout.creation_ancillas)
        .map(|(&t, &a)| (t, a, true))
        .chain(
            term.annihilations()
                .iter()
                .zip(&layout.annihilation_ancillas)
                .map(|(&t, &a)| (t, a, false)),
        )
        .collect();

    let mut c = CircuitIR::new(n_qubits, layout.n_system)?;
    c.gate(GateKind::RY(angle.theta), ctrl)?;
    if (angle.sign_phase == SignPhase::Pi) != (jw.sign < 0) {
        c.gate(GateKind::Z, ctrl)?;
    }
    for &(_, anc, _) in &pairs {
        c.gate(GateKind::H, anc)?;
    }
    for &(target, anc, _) in &pairs {
        c.controlled(GateKind::CSdg, anc, target)?;
    }
    for &(target, _, _) in &pairs {
        c.controlled(GateKind::CNOT, ctrl, target)?;
    }
    for &z in &jw.z_string {
        c.controlled(GateKind::CZ, ctrl, z)?;
    }
    for &(target, anc, _) in &pairs {
        c.controlled(GateKind::CS, anc, target)?;
    }
    for &(_, anc, creation) in &pairs {
        let phase = if creation { GateKind::CSdg } else { GateKind::CS };
        c.controlled(phase, ctrl, anc)?;
    }
    for &(_, anc, _) in &pairs {
        c.gate(GateKind::H, anc)?;
    }
    for &(target, anc, creation) in &pairs {
        let kind = if creation { "cre" } else { "ann" };
        c.measure(MeasureOp::new(anc, None, format!("b{block}.{kind}{target}")))?;
    }
    c.measure(MeasureOp::new(ctrl, Some(-angle.theta), format!("b{block}.amp")))?;
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlannedBlock {
    pub term: ExcitationTerm,
    pub angle: AngleSpec,
}

/// Ordered excitation blocks on top of a reference determinant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatePrepPlan {
    pub n_system_qubits: usize,
    pub reference_occupation: u64,
    pub blocks: Vec<PlannedBlock>,
    pub drop_threshold: f64,
}

impl StatePrepPlan {
    /// Keeps terms with `|amplitude| >= drop_threshold`, sorted singles
    /// first, then by annihilation and creation indices.
    pub fn from_terms(
        n_system_qubits: usize,
        reference_occupation: u64,
        terms: impl IntoIterator<Item = ExcitationTerm>,
        drop_threshold: f64,
    ) -> Result<Self> {
        if n_system_qubits > 64 {
            return Err(Error::DimensionLimit {
                n_qubits: n_system_qubits,
                limit: 64,
                what: "state-preparation plan",
            });
        }
        if n_system_qubits < 64 && reference_occupation >> n_system_qubits != 0 {
            return Err(Error::Layout(format!(
                "reference occupation {reference_occupation:#b} exceeds {n_system_qubits} qubits"
            )));
        }
        let mut terms: Vec<ExcitationTerm> = terms
            .into_iter()
            .filter(|t| t.amplitude().abs() >= drop_threshold)
            .collect();
        if let Some(t) = terms.iter().find(|t| t.max_index() >= n_system_qubits) {
            return Err(Error::Layout(format!(
                "term index {} outside the {n_system_qubits}-qubit system",
                t.max_index()
            )));
        }
        terms.sort_by(|a, b| a.order_key().cmp(&b.order_key()));
        let blocks = terms
            .into_iter()
            .map(|term| PlannedBlock {
                angle: amplitude_to_angle(term.amplitude()),
                term,
            })
            .collect();
        Ok(StatePrepPlan {
            n_system_qubits,
            reference_occupation,
            blocks,
            drop_threshold,
        })
    }

    /// The planned excitations with their amplitudes, in block order.
    pub fn terms(&self) -> impl Iterator<Item = &ExcitationTerm> {
        self.blocks.iter().map(|b| &b.term)
    }

    pub fn max_body(&self) -> usize {
        self.terms().map(ExcitationTerm::n_body).max().unwrap_or(0)
    }

    /// Ancillas needed by [`assemble_circuit`].
    pub fn n_ancillas(&self, reuse: bool) -> usize {
        if reuse {
            if self.blocks.is_empty() {
                0
            } else {
                2 * self.max_body() + 1
            }
        } else {
            self.terms().map(|t| 2 * t.n_body() + 1).sum()
        }
    }
}

/// One block per single `a+_a a_i` and per unique double `a+_a a+_b a_i a_j`
/// (`i<j`, `a<b`), referenced to the lowest `n_electrons` spin-orbitals.
pub fn plan_state_prep(amps: &CCAmplitudes, drop_threshold: f64) -> Result<StatePrepPlan> {
    let singles = amps.singles.iter().map(|s| ExcitationTerm::single(s.i, s.a, s.t));
    let doubles = amps
        .doubles
        .iter()
        .map(|d| ExcitationTerm::double(d.i, d.j, d.a, d.b, d.t));
    let terms = singles.chain(doubles).collect::<Result<Vec<_>>>()?;
    let reference = crate::chem::lowest_occupation(amps.n_electrons);
    StatePrepPlan::from_terms(amps.n_spin_orbitals, reference, terms, drop_threshold)
}

/// Full circuit: X gates prepare the reference, then the blocks in order.
/// With `reuse_ancillas` all blocks share `2 n_max + 1` ancillas, reset
/// between blocks; otherwise every block gets fresh ancillas.
pub fn assemble_circuit(plan: &StatePrepPlan, reuse_ancillas: bool) -> Result<CircuitIR> {
    let n_system = plan.n_system_qubits;
    let n_qubits = n_system + plan.n_ancillas(reuse_ancillas);
    let mut circ = CircuitIR::new(n_qubits, n_system)?;
    if reuse_ancillas && !plan.blocks.is_empty() {
        circ.add_ancilla("amp", n_system)?;
        for j in 0..2 * plan.max_body() {
            circ.add_ancilla(format!("f{j}"), n_system + 1 + j)?;
        }
    }
    for q in 0..n_system {
        if plan.reference_occupation >> q & 1 == 1 {
            circ.gate(GateKind::X, q)?;
        }
    }
    let mut next_fresh = n_system;
    for (k, block) in plan.blocks.iter().enumerate() {
        let n = block.term.n_body();
        let layout = if reuse_ancillas {
            for q in n_system..n_qubits {
                if circ.is_measured(q) {
                    circ.reset(q)?;
                }
            }
            BlockLayout::contiguous(n_system, n_system, n)
        } else {
            let layout = BlockLayout::contiguous(n_system, next_fresh, n);
            next_fresh += 2 * n + 1;
            circ.add_ancilla(format!("b{k}.amp"), layout.amplitude)?;
            for (j, q) in layout.ancillas().skip(1).enumerate() {
                circ.add_ancilla(format!("b{k}.f{j}"), q)?;
            }
            layout
        };
        let frag = build_excitation_block(n_qubits, &block.term, &block.angle, &layout, k)?;
        circ.append(&frag)?;
    }
    Ok(circ)
}
