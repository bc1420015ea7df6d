use crate::phasepoly::PhasePolynomial;
use crate::synth::{rz_angle, Circuit};

/// Builds every term as an independent phase gadget, in ascending
/// bitstring order: a CNOT chain `w_1→w_2→…→w_k` over the term's wires, one
/// RZ on `w_k`, then the chain mirrored. Costs exactly `2(k−1)` CNOTs per
/// term of weight `k`; neighbouring gadgets are not cancelled.
pub fn ladder_synthesis(poly: &PhasePolynomial, gamma: f64) -> Circuit {
    let mut circuit = Circuit::new(poly.n());
    for (parity, coeff) in poly.terms() {
        let wires: Vec<usize> = parity.ones().collect();
        for w in wires.windows(2) {
            circuit.cnot(w[0], w[1]);
        }
        circuit.rz(*wires.last().unwrap(), rz_angle(coeff, gamma));
        for w in wires.windows(2).rev() {
            circuit.cnot(w[0], w[1]);
        }
    }
    circuit
}
