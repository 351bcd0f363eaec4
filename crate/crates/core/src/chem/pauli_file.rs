//! Plain-text Pauli Hamiltonians: one `coefficient WORD` term per line.
//!
//! `#` starts a comment. A comment of the form `# n_electrons = N` sets the
//! electron count of the reference state (default 0). Coefficients are real
//! (`-0.5`), imaginary (`0.5i`) or complex (`0.1+0.2i`). The first character
//! of a word acts on qubit 0.

use std::fmt::Write as _;

use num_complex::Complex64;

use super::hamiltonian::{HamiltonianSpec, HERMITIAN_TOL};
use crate::error::{Error, Result};
use crate::pauli::{PauliString, PauliTermSum};

fn parse_real(s: &str) -> Option<f64> {
    match s {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ => s.parse().ok(),
    }
}

pub(crate) fn parse_coefficient(token: &str) -> Option<Complex64> {
    if let Ok(re) = token.parse::<f64>() {
        return Some(Complex64::new(re, 0.0));
    }
    let body = token.strip_suffix(['i', 'j'])?;
    if let Some(im) = parse_real(body) {
        return Some(Complex64::new(0.0, im));
    }
    // split "re+imi" at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'))?;
    let re = body[..split].parse::<f64>().ok()?;
    let im = parse_real(&body[split..])?;
    Some(Complex64::new(re, im))
}

fn electron_directive(comment: &str) -> Option<&str> {
    let rest = comment.trim().strip_prefix("n_electrons")?;
    let rest = rest.trim_start().strip_prefix(['=', ':'])?;
    Some(rest.trim())
}

pub fn parse_pauli_hamiltonian(text: &str) -> Result<HamiltonianSpec> {
    let mut terms: Vec<(PauliString, Complex64)> = Vec::new();
    let mut n_qubits: Option<usize> = None;
    let mut n_electrons = 0usize;
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let (body, comment) = match raw.split_once('#') {
            Some((b, c)) => (b, Some(c)),
            None => (raw, None),
        };
        if let Some(value) = comment.and_then(electron_directive) {
            n_electrons = value
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad electron count '{value}'")))?;
        }
        let body = body.trim();
        if body.is_empty() {
            continue;
        }
        let mut fields = body.split_whitespace();
        let (Some(coeff), Some(word), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::parse(line_no, "expected 'coefficient WORD'"));
        };
        let coeff =
            parse_coefficient(coeff).ok_or_else(|| Error::parse(line_no, format!("bad coefficient '{coeff}'")))?;
        if word.is_empty() || !word.chars().all(|c| matches!(c, 'I' | 'X' | 'Y' | 'Z')) {
            return Err(Error::parse(line_no, format!("malformed Pauli word '{word}'")));
        }
        let p: PauliString = word.parse().map_err(|e: Error| Error::parse(line_no, e.to_string()))?;
        match n_qubits {
            None => n_qubits = Some(p.n_qubits()),
            Some(len) if len != p.n_qubits() => {
                return Err(Error::parse(
                    line_no,
                    format!("word '{word}' has {} qubits, expected {len}", p.n_qubits()),
                ))
            }
            _ => {}
        }
        terms.push((p, coeff));
    }
    let n_qubits = n_qubits.ok_or_else(|| Error::parse(1, "no Hamiltonian terms"))?;
    let sum = PauliTermSum::from_terms(n_qubits, terms)?;
    sum.require_hermitian(HERMITIAN_TOL)?;
    HamiltonianSpec::new(sum, n_electrons)
}

pub fn write_pauli_hamiltonian(spec: &HamiltonianSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# n_electrons = {}", spec.n_electrons);
    for (p, c) in spec.qubit_hamiltonian.iter() {
        if c.im == 0.0 {
            let _ = writeln!(out, "{:?} {}", c.re, p);
        } else {
            let _ = writeln!(out, "{:?}{:+?}i {}", c.re, c.im, p);
        }
    }
    out
}
