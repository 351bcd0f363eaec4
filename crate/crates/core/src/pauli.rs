//! Pauli strings and weighted sums of Pauli strings.
//!
//! Qubit `q` is bit `q` of a computational-basis index (qubit 0 is the least
//! significant bit). Strings are stored as X/Z bitmasks, so a register holds at
//! most [`MAX_QUBITS`] qubits. In text form the leftmost character is qubit 0.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 64;

/// Coefficients below this magnitude are removed from a [`PauliTermSum`].
pub const DROP_TOL: f64 = 1e-12;

/// Largest register [`PauliTermSum::to_dense_matrix`] will expand by default.
pub const DENSE_LIMIT: usize = 12;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    /// The 2x2 matrix in the {|0>, |1>} basis.
    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::I => [[l, o], [o, l]],
            Pauli::X => [[o, l], [l, o]],
            Pauli::Y => [[o, -i], [i, o]],
            Pauli::Z => [[l, o], [o, -l]],
        }
    }
}

/// A power of the imaginary unit.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub enum Phase {
    #[default]
    One,
    I,
    MinusOne,
    MinusI,
}

impl Phase {
    pub fn from_power(k: u32) -> Self {
        match k % 4 {
            0 => Phase::One,
            1 => Phase::I,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn power(self) -> u32 {
        match self {
            Phase::One => 0,
            Phase::I => 1,
            Phase::MinusOne => 2,
            Phase::MinusI => 3,
        }
    }

    pub fn to_complex(self) -> Complex64 {
        match self {
            Phase::One => Complex64::new(1.0, 0.0),
            Phase::I => Complex64::new(0.0, 1.0),
            Phase::MinusOne => Complex64::new(-1.0, 0.0),
            Phase::MinusI => Complex64::new(0.0, -1.0),
        }
    }

    pub fn conj(self) -> Self {
        Phase::from_power(4 - self.power())
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;
    // i^a * i^b = i^(a+b)
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Phase) -> Phase {
        Phase::from_power(self.power() + rhs.power())
    }
}

/// A tensor product of single-qubit Paulis times a phase in {1, i, -1, -i}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PauliString {
    n_qubits: usize,
    x: u64,
    z: u64,
    phase: Phase,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        assert!(n_qubits <= MAX_QUBITS, "at most {MAX_QUBITS} qubits");
        PauliString {
            n_qubits,
            x: 0,
            z: 0,
            phase: Phase::One,
        }
    }

    pub fn from_ops(ops: &[Pauli]) -> Self {
        let mut s = PauliString::identity(ops.len());
        for (q, &p) in ops.iter().enumerate() {
            s.set(q, p);
        }
        s
    }

    /// `p` on qubit `q`, identity elsewhere.
    pub fn single(n_qubits: usize, q: usize, p: Pauli) -> Result<Self> {
        if q >= n_qubits {
            return Err(Error::IndexOutOfRange {
                index: q,
                bound: n_qubits,
                what: "qubits",
            });
        }
        let mut s = PauliString::identity(n_qubits);
        s.set(q, p);
        Ok(s)
    }

    fn set(&mut self, q: usize, p: Pauli) {
        let bit = 1u64 << q;
        let (x, z) = p.bits();
        self.x = if x { self.x | bit } else { self.x & !bit };
        self.z = if z { self.z | bit } else { self.z & !bit };
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x >> q & 1 == 1, self.z >> q & 1 == 1)
    }

    pub fn ops(&self) -> Vec<Pauli> {
        (0..self.n_qubits).map(|q| self.get(q)).collect()
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Splits into the phase-free string and its phase.
    pub fn normalized(&self) -> (PauliString, Phase) {
        (self.clone().with_phase(Phase::One), self.phase)
    }

    pub fn adjoint(&self) -> PauliString {
        self.clone().with_phase(self.phase.conj())
    }

    /// Operator product `self * rhs`.
    ///
    /// Writing each factor as `i^(x z) X^x Z^z`, moving `Z^z1` past `X^x2`
    /// contributes `(-1)^(z1 x2)`; the result is re-expressed in the same form.
    pub fn mul(&self, rhs: &PauliString) -> Result<PauliString> {
        if self.n_qubits != rhs.n_qubits {
            return Err(Error::QubitCountMismatch {
                left: self.n_qubits,
                right: rhs.n_qubits,
            });
        }
        let x = self.x ^ rhs.x;
        let z = self.z ^ rhs.z;
        let power = (self.x & self.z).count_ones()
            + (rhs.x & rhs.z).count_ones()
            + 2 * (self.z & rhs.x).count_ones()
            + 3 * (x & z).count_ones();
        Ok(PauliString {
            n_qubits: self.n_qubits,
            x,
            z,
            phase: self.phase * rhs.phase * Phase::from_power(power),
        })
    }

    /// Action on a basis state: `P|k> = factor * |k'>`.
    pub fn apply_to_basis(&self, k: u64) -> (u64, Complex64) {
        let y_count = (self.x & self.z).count_ones();
        let sign = if (k & self.z).count_ones() % 2 == 1 { 2 } else { 0 };
        let phase = self.phase * Phase::from_power(y_count + sign);
        (k ^ self.x, phase.to_complex())
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()).is_multiple_of(2)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            Phase::One => "",
            Phase::I => "i",
            Phase::MinusOne => "-",
            Phase::MinusI => "-i",
        };
        f.write_str(prefix)?;
        for q in 0..self.n_qubits {
            write!(f, "{}", self.get(q).symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (phase, word) = if let Some(rest) = s.strip_prefix("-i") {
            (Phase::MinusI, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (Phase::MinusOne, rest)
        } else if let Some(rest) = s.strip_prefix('i') {
            (Phase::I, rest)
        } else {
            (Phase::One, s.strip_prefix('+').unwrap_or(s))
        };
        if word.is_empty() || word.len() > MAX_QUBITS {
            return Err(Error::InvalidInput(format!("bad Pauli word '{s}'")));
        }
        let ops = word
            .chars()
            .map(|c| {
                Pauli::from_symbol(c).ok_or_else(|| Error::InvalidInput(format!("bad Pauli symbol '{c}' in '{s}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliString::from_ops(&ops).with_phase(phase))
    }
}

/// A weighted sum of phase-free Pauli strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliTermSum {
    n_qubits: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl PauliTermSum {
    pub fn zero(n_qubits: usize) -> Self {
        assert!(n_qubits <= MAX_QUBITS, "at most {MAX_QUBITS} qubits");
        PauliTermSum {
            n_qubits,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n_qubits: usize, coeff: impl Into<Complex64>) -> Self {
        let mut s = PauliTermSum::zero(n_qubits);
        s.add_term(PauliString::identity(n_qubits), coeff.into());
        s
    }

    pub fn from_terms<I>(n_qubits: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PauliString, Complex64)>,
    {
        let mut s = PauliTermSum::zero(n_qubits);
        for (p, c) in terms {
            if p.n_qubits() != n_qubits {
                return Err(Error::QubitCountMismatch {
                    left: n_qubits,
                    right: p.n_qubits(),
                });
            }
            s.accumulate(p, c);
        }
        s.prune();
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    /// Coefficient of `p` (its phase folded in); zero if absent.
    pub fn coefficient(&self, p: &PauliString) -> Complex64 {
        let (key, phase) = p.normalized();
        self.terms
            .get(&key)
            .map(|c| c * phase.to_complex().conj())
            .unwrap_or_default()
    }

    /// Adds without pruning; callers must `prune` afterwards.
    pub(crate) fn accumulate(&mut self, p: PauliString, coeff: Complex64) {
        let (key, phase) = p.normalized();
        *self.terms.entry(key).or_default() += coeff * phase.to_complex();
    }

    pub(crate) fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() >= DROP_TOL);
    }

    pub fn add_term(&mut self, p: PauliString, coeff: Complex64) {
        assert_eq!(p.n_qubits(), self.n_qubits, "qubit count mismatch");
        let (key, phase) = p.normalized();
        let c = self.terms.entry(key.clone()).or_default();
        *c += coeff * phase.to_complex();
        if c.norm() < DROP_TOL {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = PauliTermSum::zero(self.n_qubits);
        for (p, c) in &self.terms {
            out.terms.insert(p.clone(), c * factor);
        }
        out.prune();
        out
    }

    pub fn plus(&self, rhs: &PauliTermSum) -> Result<Self> {
        self.check_same(rhs)?;
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.accumulate(p.clone(), *c);
        }
        out.prune();
        Ok(out)
    }

    pub fn minus(&self, rhs: &PauliTermSum) -> Result<Self> {
        self.plus(&rhs.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Distributive product `self * rhs`.
    pub fn multiply(&self, rhs: &PauliTermSum) -> Result<Self> {
        self.check_same(rhs)?;
        let mut out = PauliTermSum::zero(self.n_qubits);
        for (p, a) in &self.terms {
            for (q, b) in &rhs.terms {
                out.accumulate(p.mul(q)?, a * b);
            }
        }
        out.prune();
        Ok(out)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = PauliTermSum::zero(self.n_qubits);
        for (p, c) in &self.terms {
            out.terms.insert(p.clone(), c.conj());
        }
        out
    }

    /// Largest imaginary part among the coefficients. Phase-free Pauli strings
    /// are Hermitian, so the sum is Hermitian iff this vanishes.
    pub fn max_imaginary(&self) -> f64 {
        self.terms.values().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_imaginary() <= tol
    }

    pub fn require_hermitian(&self, tol: f64) -> Result<()> {
        let max_imag = self.max_imaginary();
        if max_imag > tol {
            return Err(Error::NonHermitian { max_imag });
        }
        Ok(())
    }

    /// Largest coefficient magnitude of `self - rhs`.
    pub fn distance(&self, rhs: &PauliTermSum) -> Result<f64> {
        let diff = self.minus(rhs)?;
        Ok(diff.terms.values().map(|c| c.norm()).fold(0.0, f64::max))
    }

    pub fn to_dense_matrix(&self) -> Result<DMatrix<Complex64>> {
        self.to_dense_matrix_with_limit(DENSE_LIMIT)
    }

    /// Explicit Kronecker expansion, `M = sum_P c_P (P_{n-1} x ... x P_0)`.
    pub fn to_dense_matrix_with_limit(&self, limit: usize) -> Result<DMatrix<Complex64>> {
        if self.n_qubits > limit {
            return Err(Error::DimensionLimit {
                n_qubits: self.n_qubits,
                limit,
                what: "dense matrix expansion",
            });
        }
        let dim = 1usize << self.n_qubits;
        let mut out = DMatrix::<Complex64>::zeros(dim, dim);
        for (p, c) in &self.terms {
            let mut m = DMatrix::<Complex64>::from_element(1, 1, Complex64::new(1.0, 0.0));
            for q in (0..self.n_qubits).rev() {
                let s = p.get(q).matrix();
                let small = DMatrix::from_fn(2, 2, |r, col| s[r][col]);
                m = m.kronecker(&small);
            }
            out += m * *c;
        }
        Ok(out)
    }

    /// `out = self |amps>` without materializing the matrix.
    pub fn apply(&self, amps: &[Complex64]) -> Result<Vec<Complex64>> {
        let dim = 1usize << self.n_qubits;
        if amps.len() != dim {
            return Err(Error::InvalidInput(format!(
                "state has {} amplitudes, operator acts on {} qubits",
                amps.len(),
                self.n_qubits
            )));
        }
        let mut out = vec![Complex64::default(); dim];
        for (p, c) in &self.terms {
            for (k, a) in amps.iter().enumerate() {
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let (k2, f) = p.apply_to_basis(k as u64);
                out[k2 as usize] += c * f * a;
            }
        }
        Ok(out)
    }

    fn check_same(&self, rhs: &PauliTermSum) -> Result<()> {
        if self.n_qubits != rhs.n_qubits {
            return Err(Error::QubitCountMismatch {
                left: self.n_qubits,
                right: rhs.n_qubits,
            });
        }
        Ok(())
    }
}

impl fmt::Display for PauliTermSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (p, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}{:+}i)·{}", c.re, c.im, p)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn single_qubit_table() {
        // XY = iZ, YZ = iX, ZX = iY and the reversed orders carry -i
        let cases = [
            ("X", "Y", "iZ"),
            ("Y", "Z", "iX"),
            ("Z", "X", "iY"),
            ("Y", "X", "-iZ"),
            ("Z", "Y", "-iX"),
            ("X", "Z", "-iY"),
            ("X", "X", "I"),
            ("Y", "Y", "I"),
            ("Z", "Z", "I"),
        ];
        for (a, b, want) in cases {
            assert_eq!(ps(a).mul(&ps(b)).unwrap(), ps(want), "{a}*{b}");
        }
    }

    #[test]
    fn string_product_matches_kronecker() {
        let a = ps("XYZI");
        let b = ps("-iYYXZ");
        let prod = a.mul(&b).unwrap();
        let one = |p: PauliString| {
            PauliTermSum::from_terms(4, [(p, c(1.0, 0.0))])
                .unwrap()
                .to_dense_matrix()
                .unwrap()
        };
        let diff = one(a) * one(b) - one(prod);
        assert!(diff.iter().all(|z| z.norm() < 1e-14));
    }

    #[test]
    fn display_round_trip() {
        for s in ["XYZI", "-iZZX", "iI", "-Y"] {
            assert_eq!(ps(s).to_string(), s);
        }
        assert!("XQ".parse::<PauliString>().is_err());
        assert!("".parse::<PauliString>().is_err());
    }

    #[test]
    fn sum_folds_phase_and_prunes() {
        let mut s = PauliTermSum::zero(1);
        s.add_term(ps("iX"), c(2.0, 0.0));
        assert_eq!(s.coefficient(&ps("X")), c(0.0, 2.0));
        assert_eq!(s.coefficient(&ps("iX")), c(2.0, 0.0));
        s.add_term(ps("X"), c(0.0, -2.0));
        assert!(s.is_empty());
    }

    #[test]
    fn sigma_plus_squares_to_zero() {
        let s = PauliTermSum::from_terms(1, [(ps("X"), c(0.5, 0.0)), (ps("Y"), c(0.0, 0.5))]).unwrap();
        assert!(s.multiply(&s).unwrap().is_empty());
    }

    #[test]
    fn dense_small_cases() {
        let z = PauliTermSum::from_terms(1, [(ps("Z"), c(1.0, 0.0))]).unwrap();
        let m = z.to_dense_matrix().unwrap();
        assert_eq!(m[(0, 0)], c(1.0, 0.0));
        assert_eq!(m[(1, 1)], c(-1.0, 0.0));

        let proj = PauliTermSum::from_terms(1, [(ps("I"), c(0.5, 0.0)), (ps("Z"), c(0.5, 0.0))]).unwrap();
        let m = proj.to_dense_matrix().unwrap();
        assert_eq!(m[(0, 0)], c(1.0, 0.0));
        assert_eq!(m[(1, 1)], c(0.0, 0.0));
        assert_eq!(m[(0, 1)], c(0.0, 0.0));
    }

    #[test]
    fn dense_limit_enforced() {
        let s = PauliTermSum::identity(13, 1.0);
        assert!(matches!(s.to_dense_matrix(), Err(Error::DimensionLimit { .. })));
    }

    #[test]
    fn qubit_order_is_little_endian() {
        // X on qubit 1 of two maps |00> (index 0) to |q1=1> (index 2)
        let s = PauliTermSum::from_terms(2, [(ps("IX"), c(1.0, 0.0))]).unwrap();
        let m = s.to_dense_matrix().unwrap();
        assert_eq!(m[(2, 0)], c(1.0, 0.0));
        let mut v = vec![c(0.0, 0.0); 4];
        v[0] = c(1.0, 0.0);
        let w = s.apply(&v).unwrap();
        assert_eq!(w[2], c(1.0, 0.0));
    }

    #[test]
    fn mismatch_is_error() {
        let a = PauliTermSum::identity(1, 1.0);
        let b = PauliTermSum::identity(2, 1.0);
        assert!(matches!(a.multiply(&b), Err(Error::QubitCountMismatch { .. })));
    }

    #[test]
    fn hermiticity() {
        let h = PauliTermSum::from_terms(2, [(ps("XY"), c(0.3, 0.0)), (ps("ZZ"), c(-1.0, 0.0))]).unwrap();
        assert!(h.is_hermitian(1e-12));
        let nh = PauliTermSum::from_terms(2, [(ps("XY"), c(0.0, 0.5))]).unwrap();
        assert!(nh.require_hermitian(1e-10).is_err());
    }
}
