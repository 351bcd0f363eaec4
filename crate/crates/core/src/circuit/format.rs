//! Circuit serialization.
//!
//! The text format is line oriented:
//!
//! ```text
//! qubits <n_qubits> <n_system>
//! ancilla <label> <qubit>
//! <gate> <target> [<control>] [<angle>]
//! measure <qubit> <pre-rotation angle | -> <desired outcome> <label>
//! reset <qubit>
//! ```
//!
//! Angles are written in shortest round-trip form, so export followed by
//! import reproduces the circuit bit for bit. `#` starts a comment.

use std::fmt::Write as _;

use super::{CircuitIR, Gate, GateKind, MeasureOp, Step};
use crate::error::{Error, Result};

pub fn to_text(circ: &CircuitIR) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "qubits {} {}", circ.n_qubits(), circ.n_system());
    for (label, q) in circ.ancilla_map() {
        let _ = writeln!(out, "ancilla {label} {q}");
    }
    for step in circ.steps() {
        match step {
            Step::Gate(g) => {
                let _ = write!(out, "{} {}", g.kind.name(), g.target);
                if let Some(c) = g.control {
                    let _ = write!(out, " {c}");
                }
                if let Some(a) = g.kind.angle() {
                    let _ = write!(out, " {a:?}");
                }
                out.push('\n');
            }
            Step::Measure(m) => {
                let angle = m.pre_rotation.map_or_else(|| "-".to_string(), |a| format!("{a:?}"));
                let _ = writeln!(out, "measure {} {} {} {}", m.qubit, angle, m.desired_outcome, m.label);
            }
            Step::Reset(q) => {
                let _ = writeln!(out, "reset {q}");
            }
        }
    }
    out
}

fn field<T: std::str::FromStr>(fields: &[&str], k: usize, line: usize, what: &str) -> Result<T> {
    let raw = fields
        .get(k)
        .ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    raw.parse()
        .map_err(|_| Error::parse(line, format!("bad {what} '{raw}'")))
}

pub fn from_text(text: &str) -> Result<CircuitIR> {
    let mut circ: Option<CircuitIR> = None;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let keyword = fields[0];
        let Some(c) = circ.as_mut() else {
            if keyword != "qubits" || fields.len() != 3 {
                return Err(Error::parse(line, "expected header 'qubits <n_qubits> <n_system>'"));
            }
            let n_qubits = field(&fields, 1, line, "qubit count")?;
            let n_system = field(&fields, 2, line, "system qubit count")?;
            circ = Some(CircuitIR::new(n_qubits, n_system).map_err(|e| Error::parse(line, e.to_string()))?);
            continue;
        };
        let arity = |expected: usize| -> Result<()> {
            if fields.len() != expected {
                return Err(Error::parse(
                    line,
                    format!("'{keyword}' takes {} fields, found {}", expected - 1, fields.len() - 1),
                ));
            }
            Ok(())
        };
        let result = match keyword {
            "ancilla" => {
                arity(3)?;
                c.add_ancilla(fields[1], field(&fields, 2, line, "qubit")?)
            }
            "measure" => {
                arity(5)?;
                let pre_rotation = match fields[2] {
                    "-" => None,
                    _ => Some(field(&fields, 2, line, "pre-rotation")?),
                };
                c.measure(MeasureOp {
                    qubit: field(&fields, 1, line, "qubit")?,
                    pre_rotation,
                    desired_outcome: field(&fields, 3, line, "desired outcome")?,
                    label: fields[4].to_string(),
                })
            }
            "reset" => {
                arity(2)?;
                c.reset(field(&fields, 1, line, "qubit")?)
            }
            "qubits" => return Err(Error::parse(line, "duplicate header")),
            name => {
                let has_control = GateKind::takes_control(name);
                let has_angle = GateKind::takes_angle(name);
                arity(2 + usize::from(has_control) + usize::from(has_angle))?;
                let target = field(&fields, 1, line, "target")?;
                let control = if has_control {
                    Some(field(&fields, 2, line, "control")?)
                } else {
                    None
                };
                let angle = if has_angle {
                    Some(field(&fields, fields.len() - 1, line, "angle")?)
                } else {
                    None
                };
                let kind = GateKind::from_name(name, angle)
                    .ok_or_else(|| Error::parse(line, format!("unknown gate '{name}'")))?;
                c.push(Step::Gate(Gate { kind, target, control }))
            }
        };
        result.map_err(|e| match e {
            Error::Parse { .. } => e,
            other => Error::parse(line, other.to_string()),
        })?;
    }
    circ.ok_or_else(|| Error::parse(1, "empty circuit file"))
}

pub fn to_json(circ: &CircuitIR) -> String {
    serde_json::to_string_pretty(circ).expect("circuit serializes")
}

pub fn from_json(text: &str) -> Result<CircuitIR> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })
}
