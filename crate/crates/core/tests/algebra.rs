//! Algebraic invariants of Pauli sums, the Jordan–Wigner map and circuit
//! decompositions, checked against explicit dense matrices.

use nalgebra::DMatrix;
use nucc_core::circuit::{decompose_controlled_s, gate_census, CircuitIR, Gate, GateKind, Step};
use nucc_core::fermion::{jw_annihilation, jw_creation, jw_transform, FermionFactor, FermionProduct};
use nucc_core::pauli::{Pauli, PauliString, PauliTermSum};
use nucc_core::StateVector;
use num_complex::Complex64;
use proptest::prelude::*;

fn pauli_strategy(n: usize) -> impl Strategy<Value = PauliString> {
    prop::collection::vec(0u8..4, n).prop_map(|ops| {
        let ops: Vec<Pauli> = ops
            .into_iter()
            .map(|k| [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][k as usize])
            .collect();
        PauliString::from_ops(&ops)
    })
}

fn sum_strategy(n: usize) -> impl Strategy<Value = PauliTermSum> {
    prop::collection::vec((pauli_strategy(n), -1.0f64..1.0, -1.0f64..1.0), 1..6).prop_map(move |terms| {
        PauliTermSum::from_terms(n, terms.into_iter().map(|(p, re, im)| (p, Complex64::new(re, im)))).unwrap()
    })
}

fn max_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #[test]
    fn dense_map_is_a_ring_homomorphism(a in sum_strategy(4), b in sum_strategy(4)) {
        let (ma, mb) = (a.to_dense_matrix().unwrap(), b.to_dense_matrix().unwrap());
        let product = a.multiply(&b).unwrap().to_dense_matrix().unwrap();
        prop_assert!(max_diff(&product, &(&ma * &mb)) <= 1e-12);
        let sum = a.plus(&b).unwrap().to_dense_matrix().unwrap();
        prop_assert!(max_diff(&sum, &(&ma + &mb)) <= 1e-12);
    }

    #[test]
    fn sparse_action_matches_dense(a in sum_strategy(3), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let psi = StateVector::random(3, &mut rng).unwrap();
        let dense = a.to_dense_matrix().unwrap() * nalgebra::DVector::from_column_slice(psi.amplitudes());
        let sparse = a.apply(psi.amplitudes()).unwrap();
        for (x, y) in dense.iter().zip(&sparse) {
            prop_assert!((x - y).norm() <= 1e-12);
        }
    }

    #[test]
    fn stored_strings_carry_unit_phase(a in sum_strategy(3), b in sum_strategy(3)) {
        let p = a.multiply(&b).unwrap();
        for (s, c) in p.iter() {
            prop_assert_eq!(s.phase(), nucc_core::Phase::One);
            prop_assert!(c.norm() >= 1e-12);
        }
    }

    #[test]
    fn census_is_additive(ka in prop::collection::vec(0usize..6, 0..12), kb in prop::collection::vec(0usize..6, 0..12)) {
        let build = |kinds: &[usize]| {
            let mut c = CircuitIR::new(3, 3).unwrap();
            for (i, &k) in kinds.iter().enumerate() {
                let (t, ctl) = (i % 3, (i + 1) % 3);
                match k {
                    0 => c.gate(GateKind::H, t).unwrap(),
                    1 => c.gate(GateKind::T, t).unwrap(),
                    2 => c.controlled(GateKind::CNOT, ctl, t).unwrap(),
                    3 => c.controlled(GateKind::CS, ctl, t).unwrap(),
                    4 => c.controlled(GateKind::CZ, ctl, t).unwrap(),
                    _ => c.gate(GateKind::RY(0.1 * i as f64), t).unwrap(),
                }
            }
            c
        };
        let (a, b) = (build(&ka), build(&kb));
        let ab = a.concat(&b).unwrap();
        for decompose in [false, true] {
            prop_assert_eq!(gate_census(&ab, decompose), gate_census(&a, decompose) + gate_census(&b, decompose));
        }
    }
}

#[test]
fn anticommutation_and_nilpotency() {
    for n in 1..=6 {
        for p in 0..n {
            let twice = FermionProduct::new(vec![FermionFactor::create(p), FermionFactor::create(p)], 1.0);
            assert!(jw_transform(&twice, n).unwrap().is_empty());
            for q in 0..n {
                let ap = jw_annihilation(p, n).unwrap();
                let cq = jw_creation(q, n).unwrap();
                let anti = ap.multiply(&cq).unwrap().plus(&cq.multiply(&ap).unwrap()).unwrap();
                let want = if p == q {
                    PauliTermSum::identity(n, 1.0)
                } else {
                    PauliTermSum::zero(n)
                };
                assert_eq!(anti, want, "p={p} q={q} n={n}");
            }
        }
    }
}

#[test]
fn creation_is_adjoint_of_annihilation() {
    for n in 1..=8 {
        for p in 0..n {
            assert_eq!(jw_creation(p, n).unwrap(), jw_annihilation(p, n).unwrap().adjoint());
        }
    }
}

/// Dense unitary of a gate-only circuit; column k is the image of |k>.
fn circuit_unitary(circ: &CircuitIR) -> DMatrix<Complex64> {
    let dim = 1 << circ.n_qubits();
    let mut u = DMatrix::zeros(dim, dim);
    for k in 0..dim {
        let mut s = StateVector::basis(circ.n_qubits(), k as u64).unwrap();
        for step in circ.steps() {
            match step {
                Step::Gate(g) => s.apply_gate(g).unwrap(),
                other => panic!("unexpected {other:?}"),
            }
        }
        for (r, a) in s.amplitudes().iter().enumerate() {
            u[(r, k)] = *a;
        }
    }
    u
}

#[test]
fn controlled_s_decomposition_is_exact() {
    for dagger in [false, true] {
        let frag = decompose_controlled_s(2, 0, 1, dagger).unwrap();
        let u = circuit_unitary(&frag);
        let phase = if dagger {
            Complex64::new(0.0, -1.0)
        } else {
            Complex64::new(0.0, 1.0)
        };
        let mut want = DMatrix::identity(4, 4);
        want[(3, 3)] = phase;
        assert!(max_diff(&u, &want) < 1e-12, "dagger={dagger}");

        let mut direct = CircuitIR::new(2, 2).unwrap();
        let kind = if dagger { GateKind::CSdg } else { GateKind::CS };
        direct.push(Step::Gate(Gate::controlled(kind, 0, 1))).unwrap();
        assert!(max_diff(&circuit_unitary(&direct), &want) < 1e-12);
    }
    // every control/target placement on three qubits
    for control in 0..3 {
        for target in 0..3 {
            if control == target {
                continue;
            }
            for dagger in [false, true] {
                let frag = decompose_controlled_s(3, control, target, dagger).unwrap();
                let mut direct = CircuitIR::new(3, 3).unwrap();
                let kind = if dagger { GateKind::CSdg } else { GateKind::CS };
                direct.controlled(kind, control, target).unwrap();
                assert!(max_diff(&circuit_unitary(&frag), &circuit_unitary(&direct)) < 1e-12);
            }
        }
    }
}

#[test]
fn random_circuit_matches_kronecker_oracle() {
    use rand::{Rng, SeedableRng};
    let n = 6;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    let mut circ = CircuitIR::new(n, n).unwrap();
    let kinds = [
        GateKind::H,
        GateKind::X,
        GateKind::S,
        GateKind::T,
        GateKind::Tdg,
        GateKind::Z,
    ];
    for _ in 0..60 {
        let t = rng.gen_range(0..n);
        let mut ctl = rng.gen_range(0..n);
        while ctl == t {
            ctl = rng.gen_range(0..n);
        }
        match rng.gen_range(0..4) {
            0 => circ.gate(kinds[rng.gen_range(0..kinds.len())], t).unwrap(),
            1 => circ.gate(GateKind::RY(rng.gen_range(-3.0..3.0)), t).unwrap(),
            2 => circ.controlled(GateKind::CNOT, ctl, t).unwrap(),
            _ => circ
                .controlled(GateKind::CRY(rng.gen_range(-3.0..3.0)), ctl, t)
                .unwrap(),
        }
    }
    let u = circuit_unitary(&circ);
    // oracle: product of Kronecker-expanded gate matrices
    let mut oracle = DMatrix::<Complex64>::identity(1 << n, 1 << n);
    for step in circ.steps() {
        let Step::Gate(g) = step else { unreachable!() };
        oracle = gate_matrix(g, n) * oracle;
    }
    assert!(max_diff(&u, &oracle) < 1e-12);
}

fn one_qubit(kind: GateKind) -> DMatrix<Complex64> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let m = match kind {
        GateKind::H => [c(r, 0.0), c(r, 0.0), c(r, 0.0), c(-r, 0.0)],
        GateKind::X | GateKind::CNOT => [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        GateKind::Z => [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
        GateKind::S => [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)],
        GateKind::T => [
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
        ],
        GateKind::Tdg => [
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4),
        ],
        GateKind::RY(a) | GateKind::CRY(a) => {
            let (s, co) = (a / 2.0).sin_cos();
            [c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0)]
        }
        other => panic!("{other:?}"),
    };
    DMatrix::from_row_slice(2, 2, &m)
}

fn embed(op: &DMatrix<Complex64>, q: usize, n: usize) -> DMatrix<Complex64> {
    let mut out = DMatrix::<Complex64>::identity(1, 1);
    for k in (0..n).rev() {
        let factor = if k == q { op.clone() } else { DMatrix::identity(2, 2) };
        out = out.kronecker(&factor);
    }
    out
}

fn gate_matrix(g: &Gate, n: usize) -> DMatrix<Complex64> {
    let u = one_qubit(g.kind);
    match g.control {
        None => embed(&u, g.target, n),
        Some(c) => {
            let mut p1 = DMatrix::zeros(2, 2);
            p1[(1, 1)] = Complex64::new(1.0, 0.0);
            let mut p0 = DMatrix::zeros(2, 2);
            p0[(0, 0)] = Complex64::new(1.0, 0.0);
            embed(&p0, c, n) + embed(&p1, c, n) * embed(&u, g.target, n)
        }
    }
}
