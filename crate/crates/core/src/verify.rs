//! Ground truth for synthesized circuits: phase-polynomial extraction by
//! replay, and exact diagonals for small `n`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::f2::{Parity, WireState};
use crate::phasepoly::PhasePolynomial;
use crate::synth::{Circuit, Gate};

/// Largest qubit count the diagonal simulators accept.
pub const MAX_ORACLE_QUBITS: usize = 12;

#[derive(Clone, Debug)]
pub struct ExtractionResult {
    /// Phase polynomial in input coordinates.
    pub extracted: PhasePolynomial,
    pub final_state: WireState,
    /// How many RZ gates landed on each parity, ascending bitstring order.
    pub placement_counts: Vec<(Parity, usize)>,
}

impl ExtractionResult {
    /// True if the final wire state is exactly the circuit's declared output
    /// permutation.
    pub fn final_state_matches(&self, circuit: &Circuit) -> bool {
        self.final_state.as_permutation().as_deref() == Some(&circuit.output_permutation[..])
    }
}

/// Replays `circuit` from the identity wire state. Each `RZ(θ)` on wire `q`
/// contributes `−θ/(2γ)` to the parity that `q` holds at that moment.
pub fn extract_phase_polynomial(circuit: &Circuit, gamma: f64) -> Result<ExtractionResult> {
    let n = circuit.n;
    let mut state = WireState::identity(n);
    let mut extracted = PhasePolynomial::new(n);
    let mut counts = std::collections::BTreeMap::<Parity, usize>::new();
    for gate in &circuit.gates {
        match *gate {
            Gate::Cnot(c) => state.apply_cnot(c.control, c.target)?,
            Gate::Rz { qubit, angle } => {
                if gamma == 0.0 {
                    return Err(Error::ZeroGamma);
                }
                if qubit >= n {
                    return Err(Error::IndexOutOfRange { index: qubit, len: n });
                }
                let parity = state.row(qubit).clone();
                *counts.entry(parity.clone()).or_default() += 1;
                extracted.add_term(parity, -angle / (2.0 * gamma))?;
            }
        }
    }
    Ok(ExtractionResult {
        extracted,
        final_state: state,
        placement_counts: counts.into_iter().collect(),
    })
}

fn guard(n: usize) -> Result<()> {
    if n > MAX_ORACLE_QUBITS {
        return Err(Error::TooManyQubits {
            n,
            max: MAX_ORACLE_QUBITS,
        });
    }
    Ok(())
}

#[cfg(feature = "parallel")]
fn tabulate<F>(len: usize, f: F) -> Result<Vec<Complex64>>
where
    F: Fn(usize) -> Result<Complex64> + Sync + Send,
{
    use rayon::prelude::*;
    (0..len).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn tabulate<F>(len: usize, f: F) -> Result<Vec<Complex64>>
where
    F: Fn(usize) -> Result<Complex64>,
{
    (0..len).map(f).collect()
}

/// `e^{iγH}` as its diagonal. Entry `x` is `exp(iγ Σ_s b_s (−1)^⟨s,x⟩)`, with
/// bit `i` of the index being variable `x_i`.
pub fn oracle_diagonal(poly: &PhasePolynomial, gamma: f64) -> Result<Vec<Complex64>> {
    let n = poly.n();
    guard(n)?;
    let terms: Vec<(u64, f64)> = poly.terms().map(|(p, b)| (p.to_u64(), b)).collect();
    tabulate(1 << n, |x| {
        let energy: f64 = terms
            .iter()
            .map(|&(s, b)| if (s & x as u64).count_ones() % 2 == 1 { -b } else { b })
            .sum();
        Ok(Complex64::from_polar(1.0, gamma * energy))
    })
}

/// Simulates a CNOT+RZ circuit basis state by basis state.
///
/// The final bits are relabeled through `output_permutation`; the circuit
/// must then return every basis state to itself, otherwise
/// [`Error::NotDiagonal`] is raised.
pub fn circuit_diagonal(circuit: &Circuit) -> Result<Vec<Complex64>> {
    let n = circuit.n;
    guard(n)?;
    circuit.validate()?;
    tabulate(1 << n, |x| {
        let mut bits = x as u64;
        let mut phase = 0.0;
        for gate in &circuit.gates {
            match *gate {
                Gate::Cnot(c) => {
                    bits ^= ((bits >> c.control) & 1) << c.target;
                }
                Gate::Rz { qubit, angle } => {
                    phase += if (bits >> qubit) & 1 == 1 {
                        angle / 2.0
                    } else {
                        -angle / 2.0
                    };
                }
            }
        }
        let mut logical = 0u64;
        for (wire, &var) in circuit.output_permutation.iter().enumerate() {
            logical |= ((bits >> wire) & 1) << var;
        }
        if logical != x as u64 {
            return Err(Error::NotDiagonal(x));
        }
        Ok(Complex64::from_polar(1.0, phase))
    })
}

/// Largest entrywise deviation after removing a global phase (the first
/// entry of each vector is rotated to the positive real axis).
pub fn diagonal_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    if a.is_empty() {
        return 0.0;
    }
    let ra = Complex64::from_polar(1.0, -a[0].arg());
    let rb = Complex64::from_polar(1.0, -b[0].arg());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x * ra - y * rb).norm())
        .fold(0.0, f64::max)
}

/// Equality up to global phase within `tol`.
pub fn compare_diagonals(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    diagonal_distance(a, b) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::rz_angle;

    fn p(s: &str) -> Parity {
        s.parse().unwrap()
    }

    #[test]
    fn empty_circuit() {
        let r = extract_phase_polynomial(&Circuit::new(3), 0.5).unwrap();
        assert!(r.extracted.is_empty());
        assert!(r.final_state.is_identity());
        let d = circuit_diagonal(&Circuit::new(3)).unwrap();
        let o = oracle_diagonal(&PhasePolynomial::new(3), 0.5).unwrap();
        assert!(o.iter().all(|z| (z - Complex64::new(1.0, 0.0)).norm() < 1e-15));
        assert!(compare_diagonals(&d, &o, 1e-12));
    }

    #[test]
    fn single_gadget_replay() {
        let (gamma, b) = (0.3, 0.7);
        let mut c = Circuit::new(2);
        c.cnot(0, 1);
        c.rz(1, rz_angle(b, gamma));
        c.cnot(0, 1);
        let r = extract_phase_polynomial(&c, gamma).unwrap();
        assert_eq!(r.extracted.len(), 1);
        assert!((r.extracted.coefficient(&p("11")) - b).abs() < 1e-15);
        assert!(r.final_state.is_identity());
        assert!(r.final_state_matches(&c));
    }

    #[test]
    fn zero_gamma_with_rz_rejected() {
        let mut c = Circuit::new(1);
        c.rz(0, 0.1);
        assert!(matches!(extract_phase_polynomial(&c, 0.0), Err(Error::ZeroGamma)));
        assert!(extract_phase_polynomial(&Circuit::new(1), 0.0).is_ok());
    }

    #[test]
    fn oracle_two_variable_values() {
        let (gamma, b) = (0.4, 1.3);
        let poly = PhasePolynomial::from_terms(2, vec![(vec![0, 1], b)]).unwrap();
        let d = oracle_diagonal(&poly, gamma).unwrap();
        let plus = Complex64::from_polar(1.0, gamma * b);
        let minus = Complex64::from_polar(1.0, -gamma * b);
        // Index bits: x = 00, 01 (x_0 = 1), 10 (x_1 = 1), 11.
        for (got, want) in d.iter().zip([plus, minus, minus, plus]) {
            assert!((got - want).norm() < 1e-15);
        }
    }

    #[test]
    fn oracle_factorizes_over_commuting_terms() {
        let gamma = 0.9;
        let both = PhasePolynomial::from_terms(2, vec![(vec![0], 0.3), (vec![1], -1.1)]).unwrap();
        let a = PhasePolynomial::from_terms(2, vec![(vec![0], 0.3)]).unwrap();
        let b = PhasePolynomial::from_terms(2, vec![(vec![1], -1.1)]).unwrap();
        let (d, da, db) = (
            oracle_diagonal(&both, gamma).unwrap(),
            oracle_diagonal(&a, gamma).unwrap(),
            oracle_diagonal(&b, gamma).unwrap(),
        );
        for i in 0..4 {
            assert!((d[i] - da[i] * db[i]).norm() < 1e-14);
        }
    }

    #[test]
    fn size_guard() {
        let big = PhasePolynomial::new(13);
        assert!(matches!(oracle_diagonal(&big, 1.0), Err(Error::TooManyQubits { .. })));
        assert!(circuit_diagonal(&Circuit::new(13)).is_err());
    }

    #[test]
    fn non_diagonal_circuit_detected() {
        let mut c = Circuit::new(2);
        c.cnot(0, 1);
        assert!(matches!(circuit_diagonal(&c), Err(Error::NotDiagonal(_))));
    }

    #[test]
    fn permutation_relabels_output() {
        // Three CNOTs swap the wires; declaring the swap makes it diagonal.
        let mut c = Circuit::new(2);
        c.cnot(0, 1);
        c.cnot(1, 0);
        c.cnot(0, 1);
        assert!(circuit_diagonal(&c).is_err());
        c.output_permutation = vec![1, 0];
        let d = circuit_diagonal(&c).unwrap();
        assert!(d.iter().all(|z| (z - 1.0).norm() < 1e-15));
        let r = extract_phase_polynomial(&c, 1.0).unwrap();
        assert!(r.final_state_matches(&c));
    }
}
