use std::fmt;

use crate::error::{Error, Result};
use crate::f2::{check_gate, WireState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cnot {
    pub control: usize,
    pub target: usize,
}

impl Cnot {
    pub fn new(control: usize, target: usize) -> Self {
        Cnot { control, target }
    }
}

impl fmt::Display for Cnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CNOT({},{})", self.control, self.target)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    Cnot(Cnot),
    /// `diag(e^{−iθ/2}, e^{iθ/2})` on `qubit`.
    Rz {
        qubit: usize,
        angle: f64,
    },
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot(Cnot::new(control, target))
    }
}

/// A CNOT+RZ circuit on `n` wires.
///
/// `output_permutation[w]` is the input variable that wire `w` carries once
/// the circuit has run; it is the identity unless a residual permutation was
/// left unsynthesized.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub n: usize,
    pub gates: Vec<Gate>,
    pub output_permutation: Vec<usize>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Circuit {
            n,
            gates: Vec::new(),
            output_permutation: (0..n).collect(),
        }
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn cnot(&mut self, control: usize, target: usize) {
        self.gates.push(Gate::cnot(control, target));
    }

    pub fn rz(&mut self, qubit: usize, angle: f64) {
        self.gates.push(Gate::Rz { qubit, angle });
    }

    pub fn cnot_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::Cnot(_))).count()
    }

    pub fn rz_count(&self) -> usize {
        self.gates.len() - self.cnot_count()
    }

    pub fn has_identity_output(&self) -> bool {
        self.output_permutation.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Checks wire ranges, distinct CNOT operands and that the output
    /// permutation is a bijection.
    pub fn validate(&self) -> Result<()> {
        for g in &self.gates {
            match *g {
                Gate::Cnot(c) => check_gate(c.control, c.target, self.n)?,
                Gate::Rz { qubit, .. } if qubit >= self.n => {
                    return Err(Error::IndexOutOfRange {
                        index: qubit,
                        len: self.n,
                    })
                }
                Gate::Rz { .. } => {}
            }
        }
        if self.output_permutation.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: self.output_permutation.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &p in &self.output_permutation {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParams(format!(
                    "output permutation {:?} is not a bijection",
                    self.output_permutation
                )));
            }
        }
        Ok(())
    }

    /// Linear part of the circuit: the wire state after all CNOTs.
    pub fn linear_state(&self) -> Result<WireState> {
        let mut state = WireState::identity(self.n);
        for g in &self.gates {
            if let Gate::Cnot(c) = g {
                state.apply_cnot(c.control, c.target)?;
            }
        }
        Ok(state)
    }
}
