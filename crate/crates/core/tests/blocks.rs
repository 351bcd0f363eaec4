mod common;

use common::{branch_operator, random_term};
use nucc_core::builder::{
    amplitude_to_angle, build_excitation_block, build_fermionic_primitive, BlockLayout, ExcitationTerm,
};
use nucc_core::sim::{oracle_product_state, run_postselected};
use nucc_core::{gate_census, StateVector};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn primitive_branches_are_ladder_operators() {
    // raising (X - iY)/2 = |1><0| and lowering (X + iY)/2 = |0><1|, columns are inputs
    let raising = [[c(0.0, 0.0), c(0.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]];
    let lowering = [[c(0.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]];
    for select_creation in [true, false] {
        let circ = build_fermionic_primitive(2, 0, 1, select_creation).unwrap();
        for outcome in [0u8, 1] {
            let m = branch_operator(&circ, 1, &[outcome]);
            let want = if select_creation == (outcome == 0) {
                raising
            } else {
                lowering
            };
            for row in 0..2 {
                for col in 0..2 {
                    assert!(
                        (m[col][row] - want[row][col]).norm() < 1e-12,
                        "creation={select_creation} outcome={outcome}: {m:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn primitive_on_basis_and_plus_inputs() {
    let circ = build_fermionic_primitive(2, 0, 1, true).unwrap();
    let r = run_postselected(&circ, &StateVector::basis(1, 0).unwrap()).unwrap();
    assert!((r.success_probability - 1.0).abs() < 1e-12);
    assert!((r.final_state.amplitudes()[1].norm() - 1.0).abs() < 1e-12);

    assert!(run_postselected(&circ, &StateVector::basis(1, 1).unwrap()).is_err());

    let plus = StateVector::from_amplitudes(vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
    let r = run_postselected(&circ, &plus).unwrap();
    assert!((r.success_probability - 0.5).abs() < 1e-12);
    assert!((r.final_state.amplitudes()[1].norm() - 1.0).abs() < 1e-12);
}

fn block_fidelity(term: &ExcitationTerm, n: usize, psi: &StateVector) -> (f64, f64, f64) {
    let angle = amplitude_to_angle(term.amplitude());
    let layout = BlockLayout::contiguous(n, n, term.n_body());
    let block = build_excitation_block(n + 2 * term.n_body() + 1, term, &angle, &layout, 0).unwrap();
    let run = run_postselected(&block, psi).unwrap();
    // oracle: (I + alpha T) psi from the Jordan–Wigner image
    let t = term.jw_image(n).unwrap();
    let tpsi = t.apply(psi.amplitudes()).unwrap();
    let want: Vec<Complex64> = psi
        .amplitudes()
        .iter()
        .zip(&tpsi)
        .map(|(a, b)| a + b * term.amplitude())
        .collect();
    let norm_sqr: f64 = want.iter().map(|a| a.norm_sqr()).sum();
    let want = StateVector::from_amplitudes(want).unwrap();
    let cos4 = (angle.theta / 2.0).cos().powi(4);
    (
        run.final_state.infidelity(&want).unwrap(),
        run.success_probability,
        cos4 * norm_sqr,
    )
}

#[test]
fn single_excitation_on_reference() {
    let term = ExcitationTerm::single(0, 2, 0.1).unwrap();
    let psi = StateVector::basis(4, 0b0011).unwrap();
    let (infidelity, p, p_oracle) = block_fidelity(&term, 4, &psi);
    assert!(infidelity < 1e-12);
    assert!((p - p_oracle).abs() < 1e-12);
}

#[test]
fn double_excitation_on_reference() {
    let term = ExcitationTerm::double(0, 1, 2, 3, -0.12).unwrap();
    let psi = StateVector::basis(4, 0b0011).unwrap();
    let (infidelity, p, p_oracle) = block_fidelity(&term, 4, &psi);
    assert!(infidelity < 1e-12);
    assert!((p - p_oracle).abs() < 1e-12);
}

#[test]
fn zero_amplitude_block_is_identity() {
    let term = ExcitationTerm::single(1, 3, 0.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let psi = StateVector::random(4, &mut rng).unwrap();
    let (infidelity, p, _) = block_fidelity(&term, 4, &psi);
    assert!(infidelity < 1e-12);
    assert!((p - 1.0).abs() < 1e-12);
}

#[test]
fn block_census_equals_closed_form() {
    for (n, body) in [(4, 1), (6, 2), (8, 3)] {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        for _ in 0..20 {
            let term = random_term(&mut rng, n, body, 0.5);
            let layout = BlockLayout::contiguous(n, n, body);
            let block = build_excitation_block(
                n + 2 * body + 1,
                &term,
                &amplitude_to_angle(term.amplitude()),
                &layout,
                0,
            )
            .unwrap();
            let census = gate_census(&block, true);
            assert_eq!(census.cnot_equivalent(), nucc_core::builder::block_cnot_count(&term));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn blocks_apply_one_plus_alpha_t(seed in any::<u64>(), n in 2usize..=8, body in 1usize..=3) {
        prop_assume!(2 * body <= n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let term = random_term(&mut rng, n, body, 0.5);
        let psi = StateVector::random(n, &mut rng).unwrap();
        let (infidelity, p, p_oracle) = block_fidelity(&term, n, &psi);
        prop_assert!(infidelity <= 1e-10, "infidelity {infidelity:e} for {term:?}");
        prop_assert!((p - p_oracle).abs() <= 1e-10);
    }

    #[test]
    fn oracle_single_block_matches_two_term_formula(alpha in -0.5f64..0.5) {
        let term = ExcitationTerm::double(0, 1, 2, 3, alpha).unwrap();
        let s = oracle_product_state(0b0011, &[term], 4).unwrap();
        let norm = (1.0 + alpha * alpha).sqrt();
        prop_assert!((s.amplitudes()[0b0011].norm() - 1.0 / norm).abs() < 1e-12);
        prop_assert!((s.amplitudes()[0b1100].norm() - alpha.abs() / norm).abs() < 1e-12);
    }
}
