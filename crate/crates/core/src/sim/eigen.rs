//! Lowest eigenpair by restarted Lanczos iteration with full
//! reorthogonalization, optionally restricted to a fixed particle-number and
//! spin sector.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{StateVector, ORACLE_LIMIT};
use crate::error::{Error, Result};
use crate::pauli::PauliTermSum;

const EVEN_BITS: u64 = 0x5555_5555_5555_5555;

/// Determinants with `n_up` electrons on even (spin-up) qubits and `n_down`
/// on odd (spin-down) qubits.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sector {
    pub n_up: u32,
    pub n_down: u32,
}

impl Sector {
    /// The sector containing the basis state `occupation`.
    pub fn of(occupation: u64) -> Self {
        Sector {
            n_up: (occupation & EVEN_BITS).count_ones(),
            n_down: (occupation & !EVEN_BITS).count_ones(),
        }
    }

    fn contains(&self, k: u64) -> bool {
        Sector::of(k) == *self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenOptions {
    pub sector: Option<Sector>,
    /// Basis state that seeds the start vector (plus a small random part).
    pub start: Option<u64>,
    /// Target residual `||H v - E v||`.
    pub tolerance: f64,
    /// Cap on operator applications; `None` means `10 * 2^n`.
    pub max_matvecs: Option<usize>,
    pub krylov_dim: usize,
    pub seed: u64,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            sector: None,
            start: None,
            tolerance: 1e-8,
            max_matvecs: None,
            krylov_dim: 80,
            seed: 0,
        }
    }
}

impl EigenOptions {
    /// Restricts the search to the sector of `reference` and starts there.
    pub fn for_reference(reference: u64) -> Self {
        EigenOptions {
            sector: Some(Sector::of(reference)),
            start: Some(reference),
            ..EigenOptions::default()
        }
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

fn axpy(y: &mut [Complex64], alpha: Complex64, x: &[Complex64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

struct SectorOperator<'a> {
    op: &'a PauliTermSum,
    basis: Vec<u64>,
    full_dim: usize,
}

impl SectorOperator<'_> {
    fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut full = vec![Complex64::new(0.0, 0.0); self.full_dim];
        for (&k, &a) in self.basis.iter().zip(v) {
            full[k as usize] = a;
        }
        let image = self.op.apply(&full)?;
        Ok(self.basis.iter().map(|&k| image[k as usize]).collect())
    }
}

/// Lowest eigenpair over the whole Hilbert space.
pub fn ground_state(op: &PauliTermSum) -> Result<(f64, StateVector)> {
    ground_state_with(op, &EigenOptions::default())
}

pub fn ground_state_with(op: &PauliTermSum, opts: &EigenOptions) -> Result<(f64, StateVector)> {
    let n = op.n_qubits();
    if n > ORACLE_LIMIT {
        return Err(Error::DimensionLimit {
            n_qubits: n,
            limit: ORACLE_LIMIT,
            what: "ground-state solver",
        });
    }
    op.require_hermitian(1e-10)?;
    let full_dim = 1usize << n;
    let basis: Vec<u64> = (0..full_dim as u64)
        .filter(|&k| opts.sector.is_none_or(|s| s.contains(k)))
        .collect();
    if basis.is_empty() {
        return Err(Error::InvalidInput(format!(
            "sector {:?} is empty on {n} qubits",
            opts.sector
        )));
    }
    let h = SectorOperator { op, basis, full_dim };
    let dim = h.basis.len();
    let max_matvecs = opts.max_matvecs.unwrap_or(10 * full_dim).max(2);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    if let Some(start) = opts.start {
        let scale = 1e-2 / norm(&v);
        v.iter_mut().for_each(|a| *a *= scale);
        if let Some(pos) = h.basis.iter().position(|&k| k == start) {
            v[pos] += Complex64::new(1.0, 0.0);
        }
    }
    let nv = norm(&v);
    v.iter_mut().for_each(|a| *a /= nv);

    let m = opts.krylov_dim.max(2).min(dim);
    let mut matvecs = 0usize;
    let mut residual = f64::INFINITY;
    loop {
        let mut basis_vecs: Vec<Vec<Complex64>> = vec![v.clone()];
        let mut alphas: Vec<f64> = Vec::new();
        let mut betas: Vec<f64> = Vec::new();
        for j in 0..m {
            let mut w = h.apply(&basis_vecs[j])?;
            matvecs += 1;
            let a = dot(&basis_vecs[j], &w).re;
            alphas.push(a);
            for _ in 0..2 {
                for q in &basis_vecs {
                    let proj = dot(q, &w);
                    axpy(&mut w, -proj, q);
                }
            }
            let b = norm(&w);
            if j + 1 == m || b < 1e-12 || matvecs >= max_matvecs {
                break;
            }
            betas.push(b);
            w.iter_mut().for_each(|x| *x /= b);
            basis_vecs.push(w);
        }
        let k = alphas.len();
        let mut t = DMatrix::<f64>::zeros(k, k);
        for i in 0..k {
            t[(i, i)] = alphas[i];
            if i + 1 < k {
                t[(i, i + 1)] = betas[i];
                t[(i + 1, i)] = betas[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let (imin, &energy) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("non-empty tridiagonal");
        let y = eig.eigenvectors.column(imin);
        let mut x = vec![Complex64::new(0.0, 0.0); dim];
        for (i, q) in basis_vecs.iter().take(k).enumerate() {
            axpy(&mut x, Complex64::new(y[i], 0.0), q);
        }
        let nx = norm(&x);
        x.iter_mut().for_each(|a| *a /= nx);

        let mut r = h.apply(&x)?;
        matvecs += 1;
        axpy(&mut r, Complex64::new(-energy, 0.0), &x);
        residual = norm(&r).min(residual);
        if norm(&r) <= opts.tolerance {
            let mut full = vec![Complex64::new(0.0, 0.0); full_dim];
            for (&kb, &a) in h.basis.iter().zip(&x) {
                full[kb as usize] = a;
            }
            return Ok((energy, StateVector::from_amplitudes(full)?));
        }
        if matvecs >= max_matvecs {
            return Err(Error::NoConvergence { matvecs, residual });
        }
        v = x;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliString;

    fn op(terms: &[(&str, f64)]) -> PauliTermSum {
        let n = terms[0].0.len();
        PauliTermSum::from_terms(
            n,
            terms
                .iter()
                .map(|(w, c)| (w.parse::<PauliString>().unwrap(), Complex64::new(*c, 0.0))),
        )
        .unwrap()
    }

    #[test]
    fn single_z() {
        let (e, v) = ground_state(&op(&[("Z", 1.0)])).unwrap();
        assert!((e + 1.0).abs() < 1e-12);
        assert!((v.amplitudes()[1].norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn number_projector() {
        let (e, v) = ground_state(&op(&[("I", 0.5), ("Z", -0.5)])).unwrap();
        assert!(e.abs() < 1e-12);
        assert!((v.amplitudes()[0].norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn matches_dense_diagonalization() {
        let h = op(&[
            ("ZZII", 0.3),
            ("XXII", -0.7),
            ("IYYI", 0.2),
            ("IIXZ", 0.45),
            ("ZIIX", -0.1),
            ("IIIZ", 0.9),
            ("XIXI", 0.33),
        ]);
        let dense = h.to_dense_matrix().unwrap();
        let eig = dense.clone().symmetric_eigen();
        let want = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        let (e, v) = ground_state(&h).unwrap();
        assert!((e - want).abs() < 1e-9, "{e} vs {want}");
        let hv = h.apply(v.amplitudes()).unwrap();
        let res: f64 = hv
            .iter()
            .zip(v.amplitudes())
            .map(|(a, b)| (a - b * e).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(res <= 1e-8);
    }

    #[test]
    fn sector_restriction() {
        // -n_0 - n_1 - n_2: lowest overall fills everything; the one-up sector sits at -1
        let h = op(&[("ZIII", 0.5), ("IZII", 0.5), ("IIZI", 0.5), ("IIII", -1.5)]);
        let (e_all, _) = ground_state(&h).unwrap();
        assert!((e_all + 3.0).abs() < 1e-10);
        let (e, v) = ground_state_with(&h, &EigenOptions::for_reference(0b0001)).unwrap();
        assert!((e + 1.0).abs() < 1e-10);
        assert!(v
            .amplitudes()
            .iter()
            .enumerate()
            .all(|(k, a)| a.norm() < 1e-12 || Sector::of(k as u64) == Sector::of(1)));
        let empty = EigenOptions {
            sector: Some(Sector { n_up: 5, n_down: 0 }),
            ..EigenOptions::default()
        };
        assert!(ground_state_with(&h, &empty).is_err());
    }

    #[test]
    fn iteration_cap_is_reported() {
        let h = op(&[("XXXX", 0.3), ("ZZII", 0.2), ("IYYZ", 0.4), ("XIZY", 0.1)]);
        let opts = EigenOptions {
            max_matvecs: Some(2),
            krylov_dim: 2,
            tolerance: 1e-14,
            ..EigenOptions::default()
        };
        assert!(matches!(ground_state_with(&h, &opts), Err(Error::NoConvergence { .. })));
    }
}
