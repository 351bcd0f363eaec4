//! FCIDUMP integral files.
//!
//! Accepted subset: a `&FCI ... &END` (or `/`) namelist carrying `NORB`,
//! `NELEC` and optionally `MS2`, `ORBSYM`, `ISYM`, followed by records
//! `value i j k l` with 1-based orbital indices. `i j 0 0` is a one-body
//! integral, `0 0 0 0` the core energy and `i 0 0 0` an orbital energy
//! (accepted and ignored). Fortran `D` exponents are accepted.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const CONFLICT_TOL: f64 = 1e-10;

/// One- and two-electron integrals over spatial orbitals, in Hartree.
///
/// Two-electron integrals use chemists' notation `(pq|rs)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MolecularIntegrals {
    pub n_spatial_orbitals: usize,
    pub n_electrons: usize,
    pub ms2: i64,
    pub core_energy: f64,
    one_body: Vec<f64>,
    two_body: Vec<f64>,
}

impl MolecularIntegrals {
    pub fn zeros(n_spatial_orbitals: usize, n_electrons: usize) -> Self {
        let n = n_spatial_orbitals;
        MolecularIntegrals {
            n_spatial_orbitals,
            n_electrons,
            ms2: 0,
            core_energy: 0.0,
            one_body: vec![0.0; n * n],
            two_body: vec![0.0; n * n * n * n],
        }
    }

    fn idx2(&self, p: usize, q: usize) -> usize {
        p * self.n_spatial_orbitals + q
    }

    fn idx4(&self, p: usize, q: usize, r: usize, s: usize) -> usize {
        let n = self.n_spatial_orbitals;
        ((p * n + q) * n + r) * n + s
    }

    pub fn h(&self, p: usize, q: usize) -> f64 {
        self.one_body[self.idx2(p, q)]
    }

    /// `(pq|rs)`
    pub fn g(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.two_body[self.idx4(p, q, r, s)]
    }

    /// Sets `h[p][q]` and `h[q][p]`.
    pub fn set_h(&mut self, p: usize, q: usize, value: f64) {
        let (a, b) = (self.idx2(p, q), self.idx2(q, p));
        self.one_body[a] = value;
        self.one_body[b] = value;
    }

    /// Sets all eight real-orbital images of `(pq|rs)`.
    pub fn set_g(&mut self, p: usize, q: usize, r: usize, s: usize, value: f64) {
        for (a, b, c, d) in eightfold(p, q, r, s) {
            let k = self.idx4(a, b, c, d);
            self.two_body[k] = value;
        }
    }

    /// Largest violation of the one-body and eight-fold two-body symmetries.
    pub fn symmetry_error(&self) -> f64 {
        let n = self.n_spatial_orbitals;
        let mut err: f64 = 0.0;
        for p in 0..n {
            for q in 0..n {
                err = err.max((self.h(p, q) - self.h(q, p)).abs());
                for r in 0..n {
                    for s in 0..n {
                        let v = self.g(p, q, r, s);
                        for (a, b, c, d) in eightfold(p, q, r, s) {
                            err = err.max((v - self.g(a, b, c, d)).abs());
                        }
                    }
                }
            }
        }
        err
    }
}

fn eightfold(p: usize, q: usize, r: usize, s: usize) -> [(usize, usize, usize, usize); 8] {
    [
        (p, q, r, s),
        (q, p, r, s),
        (p, q, s, r),
        (q, p, s, r),
        (r, s, p, q),
        (s, r, p, q),
        (r, s, q, p),
        (s, r, q, p),
    ]
}

fn parse_float(token: &str) -> Option<f64> {
    token.replace(['D', 'd'], "E").parse::<f64>().ok()
}

struct Header {
    norb: usize,
    nelec: usize,
    ms2: i64,
}

fn parse_header(text: &str) -> Result<(Header, usize)> {
    let mut lines = text.lines().enumerate();
    let mut body = String::new();
    let mut started = false;
    let mut end_line = None;
    for (n, raw) in lines.by_ref() {
        let line = raw.trim();
        if !started {
            if line.is_empty() {
                continue;
            }
            let Some(rest) = strip_prefix_ci(line, "&FCI") else {
                return Err(Error::parse(n + 1, "expected '&FCI' namelist header"));
            };
            started = true;
            if let Some((before, true)) = split_terminator(rest) {
                body.push_str(before);
                end_line = Some(n + 1);
                break;
            }
            body.push_str(rest);
            body.push(',');
            continue;
        }
        if let Some((before, true)) = split_terminator(line) {
            body.push_str(before);
            end_line = Some(n + 1);
            break;
        }
        body.push_str(line);
        body.push(',');
    }
    let Some(end_line) = end_line else {
        return Err(Error::parse(
            text.lines().count().max(1),
            "namelist header not terminated by '&END' or '/'",
        ));
    };

    let mut fields: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut current: Option<String> = None;
    for token in body.split([',', ' ', '\t']).filter(|t| !t.is_empty()) {
        if let Some((key, value)) = token.split_once('=') {
            let key = key.trim().to_ascii_uppercase();
            let entry = fields.entry(key.clone()).or_default();
            if !value.is_empty() {
                entry.push(value.to_string());
            }
            current = Some(key);
        } else if let Some(key) = &current {
            fields.get_mut(key).expect("key inserted").push(token.to_string());
        } else {
            return Err(Error::parse(1, format!("unexpected token '{token}' in header")));
        }
    }

    let scalar = |key: &str| -> Result<Option<i64>> {
        match fields.get(key) {
            None => Ok(None),
            Some(v) if v.len() == 1 => v[0]
                .parse::<i64>()
                .map(Some)
                .map_err(|_| Error::parse(1, format!("{key} is not an integer: '{}'", v[0]))),
            Some(v) => Err(Error::parse(1, format!("{key} expects one value, got {}", v.len()))),
        }
    };
    let norb = scalar("NORB")?.ok_or_else(|| Error::parse(1, "header is missing NORB"))?;
    let nelec = scalar("NELEC")?.ok_or_else(|| Error::parse(1, "header is missing NELEC"))?;
    let ms2 = scalar("MS2")?.unwrap_or(0);
    if norb <= 0 || nelec < 0 {
        return Err(Error::parse(1, "NORB must be positive and NELEC non-negative"));
    }
    Ok((
        Header {
            norb: norb as usize,
            nelec: nelec as usize,
            ms2,
        },
        end_line,
    ))
}

fn strip_prefix_ci<'a>(line: &'a str, prefix: &str) -> Option<&'a str> {
    if line.len() >= prefix.len() && line[..prefix.len()].eq_ignore_ascii_case(prefix) {
        Some(&line[prefix.len()..])
    } else {
        None
    }
}

/// Splits off the namelist terminator, if present on this line.
fn split_terminator(line: &str) -> Option<(&str, bool)> {
    let upper = line.to_ascii_uppercase();
    if let Some(pos) = upper.find("&END") {
        return Some((&line[..pos], true));
    }
    let trimmed = line.trim_end();
    if let Some(before) = trimmed.strip_suffix('/') {
        return Some((before, true));
    }
    None
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Slot {
    One(usize),
    Two(usize),
    Core,
}

pub fn parse_fcidump(text: &str) -> Result<MolecularIntegrals> {
    let (header, header_end) = parse_header(text)?;
    let norb = header.norb;
    let mut ints = MolecularIntegrals::zeros(norb, header.nelec);
    ints.ms2 = header.ms2;

    // canonical slot -> (value, line) for conflict detection
    let mut seen: BTreeMap<Slot, (f64, usize)> = BTreeMap::new();

    for (n, raw) in text.lines().enumerate().skip(header_end) {
        let line_no = n + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 5 {
            return Err(Error::parse(
                line_no,
                format!("expected 'value i j k l', got {} fields", tokens.len()),
            ));
        }
        let value = parse_float(tokens[0])
            .ok_or_else(|| Error::parse(line_no, format!("non-numeric value '{}'", tokens[0])))?;
        let mut idx = [0usize; 4];
        for (slot, tok) in idx.iter_mut().zip(&tokens[1..]) {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::parse(line_no, format!("non-integer index '{tok}'")))?;
            if v > norb {
                return Err(Error::parse(line_no, format!("orbital index {v} exceeds NORB={norb}")));
            }
            *slot = v;
        }
        let [i, j, k, l] = idx;
        let slot = match (i, j, k, l) {
            (0, 0, 0, 0) => {
                ints.core_energy = value;
                Slot::Core
            }
            (i, 0, 0, 0) if i > 0 => continue,
            (i, j, 0, 0) if i > 0 && j > 0 => {
                let (p, q) = (i - 1, j - 1);
                ints.set_h(p, q, value);
                Slot::One(ints.idx2(p.min(q), p.max(q)))
            }
            (i, j, k, l) if i > 0 && j > 0 && k > 0 && l > 0 => {
                let (p, q, r, s) = (i - 1, j - 1, k - 1, l - 1);
                ints.set_g(p, q, r, s, value);
                let canon = eightfold(p, q, r, s)
                    .into_iter()
                    .map(|(a, b, c, d)| ints.idx4(a, b, c, d))
                    .min()
                    .expect("eight images");
                Slot::Two(canon)
            }
            _ => {
                return Err(Error::parse(
                    line_no,
                    format!("unsupported index pattern {i} {j} {k} {l}"),
                ))
            }
        };
        if let Some(&(prev, prev_line)) = seen.get(&slot) {
            if (prev - value).abs() > CONFLICT_TOL {
                return Err(Error::parse(
                    line_no,
                    format!("conflicts with line {prev_line} ({prev} vs {value})"),
                ));
            }
        }
        seen.insert(slot, (value, line_no));
    }
    Ok(ints)
}

/// Writes the unique integrals back out, one record per symmetry class.
pub fn write_fcidump(ints: &MolecularIntegrals) -> String {
    let n = ints.n_spatial_orbitals;
    let mut out = String::new();
    let _ = writeln!(out, " &FCI NORB={},NELEC={},MS2={},", n, ints.n_electrons, ints.ms2);
    let _ = writeln!(out, "  ORBSYM={}", "1,".repeat(n));
    let _ = writeln!(out, "  ISYM=1,");
    let _ = writeln!(out, " &END");
    for p in 0..n {
        for q in 0..=p {
            for r in 0..n {
                for s in 0..=r {
                    if p * (p + 1) / 2 + q < r * (r + 1) / 2 + s {
                        continue;
                    }
                    let v = ints.g(p, q, r, s);
                    if v != 0.0 {
                        let _ = writeln!(out, "{:?} {} {} {} {}", v, p + 1, q + 1, r + 1, s + 1);
                    }
                }
            }
        }
    }
    for p in 0..n {
        for q in 0..=p {
            let v = ints.h(p, q);
            if v != 0.0 {
                let _ = writeln!(out, "{:?} {} {} 0 0", v, p + 1, q + 1);
            }
        }
    }
    let _ = writeln!(out, "{:?} 0 0 0 0", ints.core_energy);
    out
}
