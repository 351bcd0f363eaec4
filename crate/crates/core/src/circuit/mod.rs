//! Gate-level circuits with mid-circuit measurements.
//!
//! Measurements carry the outcome that counts as success and an optional
//! `RY` pre-rotation that selects the measurement basis: measuring with
//! pre-rotation `RY(-2 b)` projects outcome 0 onto `cos b |0> + sin b |1>`.
//! A measured qubit may only be touched again after an explicit reset.

mod census;
mod format;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use census::{gate_census, GateCensus};
pub use format::{from_json, from_text, to_json, to_text};

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum GateKind {
    H,
    X,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    /// `exp(-i angle Y / 2)`
    RY(f64),
    /// `diag(1, e^{i angle})`
    Phase(f64),
    CNOT,
    CZ,
    CS,
    CSdg,
    CRY(f64),
}

impl GateKind {
    pub fn is_controlled(self) -> bool {
        matches!(
            self,
            GateKind::CNOT | GateKind::CZ | GateKind::CS | GateKind::CSdg | GateKind::CRY(_)
        )
    }

    pub fn angle(self) -> Option<f64> {
        match self {
            GateKind::RY(a) | GateKind::Phase(a) | GateKind::CRY(a) => Some(a),
            _ => None,
        }
    }

    /// Lower-case mnemonic used by the text format.
    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Z => "z",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::RY(_) => "ry",
            GateKind::Phase(_) => "phase",
            GateKind::CNOT => "cnot",
            GateKind::CZ => "cz",
            GateKind::CS => "cs",
            GateKind::CSdg => "csdg",
            GateKind::CRY(_) => "cry",
        }
    }

    /// Inverse of [`GateKind::name`]; angle-carrying kinds take `angle`.
    pub fn from_name(name: &str, angle: Option<f64>) -> Option<Self> {
        let kind = match (name, angle) {
            ("h", None) => GateKind::H,
            ("x", None) => GateKind::X,
            ("z", None) => GateKind::Z,
            ("s", None) => GateKind::S,
            ("sdg", None) => GateKind::Sdg,
            ("t", None) => GateKind::T,
            ("tdg", None) => GateKind::Tdg,
            ("ry", Some(a)) => GateKind::RY(a),
            ("phase", Some(a)) => GateKind::Phase(a),
            ("cnot", None) => GateKind::CNOT,
            ("cz", None) => GateKind::CZ,
            ("cs", None) => GateKind::CS,
            ("csdg", None) => GateKind::CSdg,
            ("cry", Some(a)) => GateKind::CRY(a),
            _ => return None,
        };
        Some(kind)
    }

    pub(crate) fn takes_angle(name: &str) -> bool {
        matches!(name, "ry" | "phase" | "cry")
    }

    pub(crate) fn takes_control(name: &str) -> bool {
        matches!(name, "cnot" | "cz" | "cs" | "csdg" | "cry")
    }
}

/// A one- or two-qubit gate; controlled kinds act on `target` when `control` is |1>.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub target: usize,
    pub control: Option<usize>,
}

impl Gate {
    pub fn single(kind: GateKind, target: usize) -> Self {
        Gate {
            kind,
            target,
            control: None,
        }
    }

    pub fn controlled(kind: GateKind, control: usize, target: usize) -> Self {
        Gate {
            kind,
            target,
            control: Some(control),
        }
    }

    pub fn qubits(&self) -> impl Iterator<Item = usize> {
        std::iter::once(self.target).chain(self.control)
    }

    fn validate(&self, n_qubits: usize) -> Result<()> {
        if self.kind.is_controlled() != self.control.is_some() {
            return Err(Error::InvalidCircuit(format!(
                "gate {} requires {} control",
                self.kind.name(),
                if self.kind.is_controlled() { "a" } else { "no" }
            )));
        }
        for q in self.qubits() {
            if q >= n_qubits {
                return Err(Error::IndexOutOfRange {
                    index: q,
                    bound: n_qubits,
                    what: "qubits",
                });
            }
        }
        if self.control == Some(self.target) {
            return Err(Error::InvalidCircuit(format!(
                "gate {} uses qubit {} as both control and target",
                self.kind.name(),
                self.target
            )));
        }
        if let Some(a) = self.kind.angle() {
            if !a.is_finite() {
                return Err(Error::InvalidCircuit(format!(
                    "non-finite angle in {}",
                    self.kind.name()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureOp {
    pub qubit: usize,
    /// `RY` angle applied just before the computational-basis measurement.
    pub pre_rotation: Option<f64>,
    pub desired_outcome: u8,
    pub label: String,
}

impl MeasureOp {
    pub fn new(qubit: usize, pre_rotation: Option<f64>, label: impl Into<String>) -> Self {
        MeasureOp {
            qubit,
            pre_rotation,
            desired_outcome: 0,
            label: label.into(),
        }
    }

    /// Group name of the measurement: the label text before the first '.'.
    pub fn block(&self) -> &str {
        self.label.split('.').next().unwrap_or("")
    }
}

fn check_label(label: &str) -> Result<()> {
    if label.is_empty() || label.chars().any(char::is_whitespace) {
        return Err(Error::InvalidCircuit(format!(
            "label '{label}' must be non-empty without whitespace"
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Step {
    Gate(Gate),
    Measure(MeasureOp),
    /// Returns a measured qubit to |0> so it can be reused.
    Reset(usize),
}

/// An ordered circuit on `n_qubits` qubits; qubits `0..n_system` hold the
/// system register, the rest are ancillas.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CircuitIR {
    n_qubits: usize,
    n_system: usize,
    steps: Vec<Step>,
    ancilla_map: BTreeMap<String, usize>,
    #[serde(skip)]
    measured: Vec<bool>,
}

impl CircuitIR {
    pub fn new(n_qubits: usize, n_system: usize) -> Result<Self> {
        if n_system > n_qubits {
            return Err(Error::InvalidCircuit(format!(
                "{n_system} system qubits exceed {n_qubits} total"
            )));
        }
        Ok(CircuitIR {
            n_qubits,
            n_system,
            steps: Vec::new(),
            ancilla_map: BTreeMap::new(),
            measured: vec![false; n_qubits],
        })
    }

    /// Rebuilds a circuit from its parts, checking every invariant.
    pub fn from_parts(
        n_qubits: usize,
        n_system: usize,
        steps: Vec<Step>,
        ancilla_map: BTreeMap<String, usize>,
    ) -> Result<Self> {
        let mut circ = CircuitIR::new(n_qubits, n_system)?;
        for (label, q) in ancilla_map {
            circ.add_ancilla(label, q)?;
        }
        for step in steps {
            circ.push(step)?;
        }
        Ok(circ)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_system(&self) -> usize {
        self.n_system
    }

    pub fn n_ancillas(&self) -> usize {
        self.n_qubits - self.n_system
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn ancilla_map(&self) -> &BTreeMap<String, usize> {
        &self.ancilla_map
    }

    pub fn measurements(&self) -> impl Iterator<Item = &MeasureOp> {
        self.steps.iter().filter_map(|s| match s {
            Step::Measure(m) => Some(m),
            _ => None,
        })
    }

    pub fn add_ancilla(&mut self, label: impl Into<String>, qubit: usize) -> Result<()> {
        let label = label.into();
        check_label(&label)?;
        if qubit < self.n_system || qubit >= self.n_qubits {
            return Err(Error::Layout(format!(
                "ancilla '{label}' on qubit {qubit} outside [{}, {})",
                self.n_system, self.n_qubits
            )));
        }
        if let Some(&old) = self.ancilla_map.get(&label) {
            if old != qubit {
                return Err(Error::Layout(format!("ancilla '{label}' already on qubit {old}")));
            }
        }
        self.ancilla_map.insert(label, qubit);
        Ok(())
    }

    fn check_live(&self, q: usize) -> Result<()> {
        if self.measured[q] {
            return Err(Error::InvalidCircuit(format!(
                "qubit {q} used after measurement without a reset"
            )));
        }
        Ok(())
    }

    pub fn push(&mut self, step: Step) -> Result<()> {
        match &step {
            Step::Gate(g) => {
                g.validate(self.n_qubits)?;
                for q in g.qubits() {
                    self.check_live(q)?;
                }
            }
            Step::Measure(m) => {
                self.check_index(m.qubit)?;
                self.check_live(m.qubit)?;
                check_label(&m.label)?;
                if m.desired_outcome > 1 {
                    return Err(Error::InvalidCircuit(format!(
                        "desired outcome {} is not a bit",
                        m.desired_outcome
                    )));
                }
                if m.pre_rotation.is_some_and(|a| !a.is_finite()) {
                    return Err(Error::InvalidCircuit(format!(
                        "non-finite pre-rotation on '{}'",
                        m.label
                    )));
                }
                self.measured[m.qubit] = true;
            }
            Step::Reset(q) => {
                self.check_index(*q)?;
                if !self.measured[*q] {
                    return Err(Error::InvalidCircuit(format!(
                        "reset of qubit {q}, which is not in a measured state"
                    )));
                }
                self.measured[*q] = false;
            }
        }
        self.steps.push(step);
        Ok(())
    }

    fn check_index(&self, q: usize) -> Result<()> {
        if q >= self.n_qubits {
            return Err(Error::IndexOutOfRange {
                index: q,
                bound: self.n_qubits,
                what: "qubits",
            });
        }
        Ok(())
    }

    pub fn gate(&mut self, kind: GateKind, target: usize) -> Result<()> {
        self.push(Step::Gate(Gate::single(kind, target)))
    }

    pub fn controlled(&mut self, kind: GateKind, control: usize, target: usize) -> Result<()> {
        self.push(Step::Gate(Gate::controlled(kind, control, target)))
    }

    pub fn measure(&mut self, op: MeasureOp) -> Result<()> {
        self.push(Step::Measure(op))
    }

    pub fn reset(&mut self, qubit: usize) -> Result<()> {
        self.push(Step::Reset(qubit))
    }

    /// True if `qubit` has been measured and not reset since.
    pub fn is_measured(&self, qubit: usize) -> bool {
        self.measured.get(qubit).copied().unwrap_or(false)
    }

    /// Appends every step of `other`; both circuits must have the same shape.
    pub fn append(&mut self, other: &CircuitIR) -> Result<()> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::QubitCountMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        for (label, &q) in &other.ancilla_map {
            self.add_ancilla(label.clone(), q)?;
        }
        for step in &other.steps {
            self.push(step.clone())?;
        }
        Ok(())
    }

    pub fn concat(&self, other: &CircuitIR) -> Result<CircuitIR> {
        let mut out = self.clone();
        out.append(other)?;
        Ok(out)
    }
}

impl<'de> Deserialize<'de> for CircuitIR {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            n_qubits: usize,
            n_system: usize,
            steps: Vec<Step>,
            ancilla_map: BTreeMap<String, usize>,
        }
        let raw = Raw::deserialize(deserializer)?;
        CircuitIR::from_parts(raw.n_qubits, raw.n_system, raw.steps, raw.ancilla_map).map_err(serde::de::Error::custom)
    }
}

/// Controlled-S (or its adjoint) as `T, CNOT, Tdg, CNOT, T` on a circuit of
/// `n_qubits` qubits.
pub fn decompose_controlled_s(n_qubits: usize, control: usize, target: usize, dagger: bool) -> Result<CircuitIR> {
    if control == target {
        return Err(Error::InvalidCircuit(format!(
            "controlled-S needs distinct qubits, got {control} twice"
        )));
    }
    let (t, tdg) = if dagger {
        (GateKind::Tdg, GateKind::T)
    } else {
        (GateKind::T, GateKind::Tdg)
    };
    let mut frag = CircuitIR::new(n_qubits, 0)?;
    frag.gate(t, control)?;
    frag.controlled(GateKind::CNOT, control, target)?;
    frag.gate(tdg, target)?;
    frag.controlled(GateKind::CNOT, control, target)?;
    frag.gate(t, target)?;
    Ok(frag)
}

/// Replaces every CS/CSdg gate by its two-CNOT decomposition.
pub fn expand_controlled_s(circ: &CircuitIR) -> Result<CircuitIR> {
    let mut out = CircuitIR::new(circ.n_qubits, circ.n_system)?;
    for (label, &q) in &circ.ancilla_map {
        out.add_ancilla(label.clone(), q)?;
    }
    for step in &circ.steps {
        match step {
            Step::Gate(Gate {
                kind: kind @ (GateKind::CS | GateKind::CSdg),
                target,
                control: Some(control),
            }) => {
                let frag = decompose_controlled_s(circ.n_qubits, *control, *target, *kind == GateKind::CSdg)?;
                for s in frag.steps {
                    out.push(s)?;
                }
            }
            other => out.push(other.clone())?,
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_gates() {
        let mut c = CircuitIR::new(2, 2).unwrap();
        assert!(c.gate(GateKind::H, 2).is_err());
        assert!(c.controlled(GateKind::CNOT, 1, 1).is_err());
        assert!(c.push(Step::Gate(Gate::single(GateKind::CNOT, 0))).is_err());
        assert!(c.push(Step::Gate(Gate::controlled(GateKind::H, 0, 1))).is_err());
        assert!(c.gate(GateKind::RY(f64::NAN), 0).is_err());
        assert!(c.steps().is_empty());
    }

    #[test]
    fn measured_qubit_needs_reset() {
        let mut c = CircuitIR::new(2, 1).unwrap();
        c.gate(GateKind::H, 1).unwrap();
        c.measure(MeasureOp::new(1, None, "m")).unwrap();
        assert!(c.gate(GateKind::X, 1).is_err());
        assert!(c.controlled(GateKind::CNOT, 1, 0).is_err());
        assert!(c.measure(MeasureOp::new(1, None, "again")).is_err());
        c.reset(1).unwrap();
        c.gate(GateKind::X, 1).unwrap();
        assert!(c.reset(0).is_err());
    }

    #[test]
    fn measure_validation() {
        let mut c = CircuitIR::new(1, 0).unwrap();
        let mut m = MeasureOp::new(0, None, "a b");
        assert!(c.measure(m.clone()).is_err());
        m.label = "ok".into();
        m.desired_outcome = 2;
        assert!(c.measure(m).is_err());
    }

    #[test]
    fn ancilla_map_checks() {
        let mut c = CircuitIR::new(3, 2).unwrap();
        assert!(c.add_ancilla("a", 1).is_err());
        c.add_ancilla("a", 2).unwrap();
        assert!(c.add_ancilla("a", 2).is_ok());
        let mut d = CircuitIR::new(4, 2).unwrap();
        d.add_ancilla("a", 3).unwrap();
        assert!(d.add_ancilla("a", 2).is_err());
    }

    #[test]
    fn append_requires_same_width() {
        let mut a = CircuitIR::new(2, 2).unwrap();
        let b = CircuitIR::new(3, 2).unwrap();
        assert!(matches!(a.append(&b), Err(Error::QubitCountMismatch { .. })));
    }

    #[test]
    fn append_respects_measurement_state() {
        let mut a = CircuitIR::new(1, 0).unwrap();
        a.measure(MeasureOp::new(0, None, "m")).unwrap();
        let mut b = CircuitIR::new(1, 0).unwrap();
        b.gate(GateKind::X, 0).unwrap();
        assert!(a.concat(&b).is_err());
    }

    #[test]
    fn controlled_s_fragment_shape() {
        let f = decompose_controlled_s(2, 0, 1, false).unwrap();
        let kinds: Vec<_> = f
            .steps()
            .iter()
            .map(|s| match s {
                Step::Gate(g) => g.kind,
                _ => panic!(),
            })
            .collect();
        assert_eq!(
            kinds,
            [GateKind::T, GateKind::CNOT, GateKind::Tdg, GateKind::CNOT, GateKind::T]
        );
        assert!(decompose_controlled_s(2, 1, 1, true).is_err());
    }

    #[test]
    fn block_prefix() {
        assert_eq!(MeasureOp::new(0, None, "b3.amp").block(), "b3");
        assert_eq!(MeasureOp::new(0, None, "solo").block(), "solo");
    }
}
