//! Fermionic operators and the Jordan–Wigner mapping.
//!
//! Qubit `p` in state |1> means spin-orbital `p` is occupied, so the creation
//! operator maps to `Z_0 ... Z_{p-1} (X_p - iY_p)/2 = Z-string |1><0|`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, PauliTermSum};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FermionFactor {
    pub orbital: usize,
    pub dagger: bool,
}

impl FermionFactor {
    pub fn create(orbital: usize) -> Self {
        FermionFactor { orbital, dagger: true }
    }

    pub fn annihilate(orbital: usize) -> Self {
        FermionFactor { orbital, dagger: false }
    }
}

/// An ordered product of ladder operators; the leftmost factor acts last.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FermionProduct {
    pub factors: Vec<FermionFactor>,
    pub coefficient: Complex64,
}

impl FermionProduct {
    pub fn new(factors: Vec<FermionFactor>, coefficient: impl Into<Complex64>) -> Self {
        FermionProduct {
            factors,
            coefficient: coefficient.into(),
        }
    }

    /// `a+_{c0} a+_{c1} ... a_{a0} a_{a1} ...`
    pub fn excitation(creations: &[usize], annihilations: &[usize]) -> Self {
        let factors = creations
            .iter()
            .map(|&p| FermionFactor::create(p))
            .chain(annihilations.iter().map(|&q| FermionFactor::annihilate(q)))
            .collect();
        FermionProduct::new(factors, 1.0)
    }

    pub fn max_orbital(&self) -> Option<usize> {
        self.factors.iter().map(|f| f.orbital).max()
    }

    pub fn adjoint(&self) -> Self {
        let factors = self
            .factors
            .iter()
            .rev()
            .map(|f| FermionFactor {
                orbital: f.orbital,
                dagger: !f.dagger,
            })
            .collect();
        FermionProduct::new(factors, self.coefficient.conj())
    }
}

fn ladder(p: usize, n: usize, dagger: bool) -> Result<PauliTermSum> {
    if p >= n {
        return Err(Error::IndexOutOfRange {
            index: p,
            bound: n,
            what: "spin-orbitals",
        });
    }
    let mut z_string = PauliString::identity(n);
    for j in 0..p {
        z_string = z_string.mul(&PauliString::single(n, j, Pauli::Z)?)?;
    }
    let x = z_string.mul(&PauliString::single(n, p, Pauli::X)?)?;
    let y = z_string.mul(&PauliString::single(n, p, Pauli::Y)?)?;
    let y_coeff = if dagger { -0.5 } else { 0.5 };
    PauliTermSum::from_terms(n, [(x, Complex64::new(0.5, 0.0)), (y, Complex64::new(0.0, y_coeff))])
}

/// Image of `a+_p` on `n` qubits.
pub fn jw_creation(p: usize, n: usize) -> Result<PauliTermSum> {
    ladder(p, n, true)
}

/// Image of `a_q` on `n` qubits.
pub fn jw_annihilation(q: usize, n: usize) -> Result<PauliTermSum> {
    ladder(q, n, false)
}

/// Image of a ladder-operator product, factors multiplied left to right.
pub fn jw_transform(prod: &FermionProduct, n: usize) -> Result<PauliTermSum> {
    let mut acc = PauliTermSum::identity(n, prod.coefficient);
    for f in &prod.factors {
        let factor = ladder(f.orbital, n, f.dagger)?;
        acc = acc.multiply(&factor)?;
        if acc.is_empty() {
            break;
        }
    }
    Ok(acc)
}

/// `sum_p a+_p a_p = sum_p (I - Z_p)/2`.
pub fn number_operator(n: usize) -> PauliTermSum {
    let mut op = PauliTermSum::identity(n, 0.5 * n as f64);
    for p in 0..n {
        op.add_term(
            PauliString::single(n, p, Pauli::Z).expect("p < n"),
            Complex64::new(-0.5, 0.0),
        );
    }
    op
}
