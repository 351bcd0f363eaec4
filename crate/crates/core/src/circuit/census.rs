use std::iter::Sum;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use super::{CircuitIR, GateKind, Step};

/// Gate counts by class.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCensus {
    pub h: usize,
    pub x: usize,
    pub z: usize,
    /// S and S-dagger.
    pub s: usize,
    /// T and T-dagger.
    pub t: usize,
    pub ry: usize,
    pub phase: usize,
    pub cnot: usize,
    pub cz: usize,
    /// Controlled-S and its adjoint, when not decomposed.
    pub cs: usize,
    pub cry: usize,
    pub measurements: usize,
    pub resets: usize,
}

impl GateCensus {
    /// Two-qubit cost in CNOTs: CZ counts as one, an undecomposed
    /// controlled-S and a controlled rotation as two each.
    pub fn cnot_equivalent(&self) -> usize {
        self.cnot + self.cz + 2 * self.cs + 2 * self.cry
    }

    /// Gates from the T class (T and T-dagger).
    pub fn t_class(&self) -> usize {
        self.t
    }

    /// Arbitrary-angle rotations that need synthesis.
    pub fn rotations(&self) -> usize {
        self.ry + self.phase + self.cry
    }
}

impl Add for GateCensus {
    type Output = GateCensus;

    fn add(mut self, rhs: GateCensus) -> GateCensus {
        self += rhs;
        self
    }
}

impl AddAssign for GateCensus {
    fn add_assign(&mut self, rhs: GateCensus) {
        self.h += rhs.h;
        self.x += rhs.x;
        self.z += rhs.z;
        self.s += rhs.s;
        self.t += rhs.t;
        self.ry += rhs.ry;
        self.phase += rhs.phase;
        self.cnot += rhs.cnot;
        self.cz += rhs.cz;
        self.cs += rhs.cs;
        self.cry += rhs.cry;
        self.measurements += rhs.measurements;
        self.resets += rhs.resets;
    }
}

impl Sum for GateCensus {
    fn sum<I: Iterator<Item = GateCensus>>(iter: I) -> GateCensus {
        iter.fold(GateCensus::default(), Add::add)
    }
}

/// Counts gates by class. With `decompose`, each controlled-S becomes two
/// CNOTs and three T-class gates.
pub fn gate_census(circ: &CircuitIR, decompose: bool) -> GateCensus {
    let mut c = GateCensus::default();
    for step in circ.steps() {
        match step {
            Step::Gate(g) => match g.kind {
                GateKind::H => c.h += 1,
                GateKind::X => c.x += 1,
                GateKind::Z => c.z += 1,
                GateKind::S | GateKind::Sdg => c.s += 1,
                GateKind::T | GateKind::Tdg => c.t += 1,
                GateKind::RY(_) => c.ry += 1,
                GateKind::Phase(_) => c.phase += 1,
                GateKind::CNOT => c.cnot += 1,
                GateKind::CZ => c.cz += 1,
                GateKind::CS | GateKind::CSdg if decompose => {
                    c.cnot += 2;
                    c.t += 3;
                }
                GateKind::CS | GateKind::CSdg => c.cs += 1,
                GateKind::CRY(_) => c.cry += 1,
            },
            Step::Measure(_) => c.measurements += 1,
            Step::Reset(_) => c.resets += 1,
        }
    }
    c
}
