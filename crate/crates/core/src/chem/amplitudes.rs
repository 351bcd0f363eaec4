//! Coupled-cluster amplitude files.
//!
//! JSON document:
//!
//! ```json
//! {
//!   "n_spin_orbitals": 4,
//!   "n_electrons": 2,
//!   "cc_reference_energy": -1.1372,
//!   "singles": [[0, 2, 0.0]],
//!   "doubles": [[0, 1, 2, 3, 0.1136]]
//! }
//! ```
//!
//! Indices are 0-based spin-orbitals. A single `[i, a, t]` multiplies
//! `a+_a a_i`; a double `[i, j, a, b, t]` multiplies `a+_a a+_b a_i a_j`.
//! Doubles are stored with `i < j` and `a < b`; each index swap flips the sign.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingleAmplitude {
    pub i: usize,
    pub a: usize,
    pub t: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DoubleAmplitude {
    pub i: usize,
    pub j: usize,
    pub a: usize,
    pub b: usize,
    pub t: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CCAmplitudes {
    pub n_spin_orbitals: usize,
    pub n_electrons: usize,
    pub singles: Vec<SingleAmplitude>,
    pub doubles: Vec<DoubleAmplitude>,
    pub cc_reference_energy: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAmplitudes {
    n_spin_orbitals: usize,
    n_electrons: usize,
    #[serde(default)]
    cc_reference_energy: Option<f64>,
    #[serde(default)]
    singles: Vec<(usize, usize, f64)>,
    #[serde(default)]
    doubles: Vec<(usize, usize, usize, usize, f64)>,
}

#[derive(Serialize)]
struct RawOut {
    n_spin_orbitals: usize,
    n_electrons: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    cc_reference_energy: Option<f64>,
    singles: Vec<(usize, usize, f64)>,
    doubles: Vec<(usize, usize, usize, usize, f64)>,
}

impl CCAmplitudes {
    pub fn empty(n_spin_orbitals: usize, n_electrons: usize) -> Self {
        CCAmplitudes {
            n_spin_orbitals,
            n_electrons,
            singles: Vec::new(),
            doubles: Vec::new(),
            cc_reference_energy: None,
        }
    }

    pub fn to_json(&self) -> String {
        let out = RawOut {
            n_spin_orbitals: self.n_spin_orbitals,
            n_electrons: self.n_electrons,
            cc_reference_energy: self.cc_reference_energy,
            singles: self.singles.iter().map(|s| (s.i, s.a, s.t)).collect(),
            doubles: self.doubles.iter().map(|d| (d.i, d.j, d.a, d.b, d.t)).collect(),
        };
        serde_json::to_string_pretty(&out).expect("amplitudes serialize")
    }
}

fn bad(record: String, message: impl Into<String>) -> Error {
    Error::InvalidRecord {
        record,
        message: message.into(),
    }
}

fn check_occ(record: &str, index: usize, n_electrons: usize) -> Result<()> {
    if index >= n_electrons {
        return Err(bad(
            record.to_string(),
            format!("occupied index {index} is not below n_electrons={n_electrons}"),
        ));
    }
    Ok(())
}

fn check_virt(record: &str, index: usize, n_electrons: usize, n_so: usize) -> Result<()> {
    if index < n_electrons || index >= n_so {
        return Err(bad(
            record.to_string(),
            format!("virtual index {index} outside [{n_electrons}, {n_so})"),
        ));
    }
    Ok(())
}

pub fn parse_amplitudes(text: &str) -> Result<CCAmplitudes> {
    let raw: RawAmplitudes = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let (n_so, n_e) = (raw.n_spin_orbitals, raw.n_electrons);
    if n_e > n_so {
        return Err(bad(
            "header".into(),
            format!("n_electrons={n_e} exceeds n_spin_orbitals={n_so}"),
        ));
    }

    let mut singles = Vec::with_capacity(raw.singles.len());
    let mut seen = BTreeSet::new();
    for (k, &(i, a, t)) in raw.singles.iter().enumerate() {
        let record = format!("singles[{k}] = [{i}, {a}, {t}]");
        check_occ(&record, i, n_e)?;
        check_virt(&record, a, n_e, n_so)?;
        if !seen.insert((i, a)) {
            return Err(bad(record, "duplicate single"));
        }
        singles.push(SingleAmplitude { i, a, t });
    }

    let mut doubles = Vec::with_capacity(raw.doubles.len());
    let mut seen = BTreeSet::new();
    for (k, &(i, j, a, b, t)) in raw.doubles.iter().enumerate() {
        let record = format!("doubles[{k}] = [{i}, {j}, {a}, {b}, {t}]");
        for occ in [i, j] {
            check_occ(&record, occ, n_e)?;
        }
        for virt in [a, b] {
            check_virt(&record, virt, n_e, n_so)?;
        }
        if i == j || a == b {
            return Err(bad(record, "repeated index in double excitation"));
        }
        let mut t = t;
        let (i, j) = if i > j {
            t = -t;
            (j, i)
        } else {
            (i, j)
        };
        let (a, b) = if a > b {
            t = -t;
            (b, a)
        } else {
            (a, b)
        };
        if !seen.insert((i, j, a, b)) {
            return Err(bad(record, "duplicate double"));
        }
        doubles.push(DoubleAmplitude { i, j, a, b, t });
    }

    Ok(CCAmplitudes {
        n_spin_orbitals: n_so,
        n_electrons: n_e,
        singles,
        doubles,
        cc_reference_energy: raw.cc_reference_energy,
    })
}
