//! Reference states computed directly from operator algebra, independent of
//! any circuit: `prod_k (I + alpha_k T_k) |reference>`, normalized.

use num_complex::Complex64;

use super::StateVector;
use crate::builder::{ExcitationTerm, StatePrepPlan};
use crate::error::{Error, Result};

/// Largest system the oracle builds.
pub const ORACLE_LIMIT: usize = 16;

/// Applies `I + alpha T` for each term (with its own amplitude), first term
/// first, to the basis state `reference` on `n` qubits.
pub fn oracle_product_state(reference: u64, terms: &[ExcitationTerm], n: usize) -> Result<StateVector> {
    if n > ORACLE_LIMIT {
        return Err(Error::DimensionLimit {
            n_qubits: n,
            limit: ORACLE_LIMIT,
            what: "oracle product state",
        });
    }
    let mut amps = StateVector::basis(n, reference)?.into_amplitudes();
    for term in terms {
        let t = term.jw_image(n)?;
        let image = t.apply(&amps)?;
        for (a, ta) in amps.iter_mut().zip(image) {
            *a += ta * term.amplitude();
        }
    }
    let norm_sqr: f64 = amps.iter().map(Complex64::norm_sqr).sum();
    if norm_sqr <= super::ZERO_BRANCH_TOL {
        return Err(Error::ZeroVector);
    }
    StateVector::from_amplitudes(amps)
}

/// Oracle state for every block of a plan, in plan order.
pub fn oracle_plan_state(plan: &StatePrepPlan) -> Result<StateVector> {
    let terms: Vec<ExcitationTerm> = plan.terms().cloned().collect();
    oracle_product_state(plan.reference_occupation, &terms, plan.n_system_qubits)
}
