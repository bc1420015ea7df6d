//! Compiles sparse higher-order Ising Hamiltonians into CNOT+RZ circuits.
//!
//! The main path is [`synth::synthesize_diagonal`]: a greedy parity network
//! visits every multi-variable term, RZ rotations are inserted where each
//! term's parity sits on a wire, and greedy Gaussian elimination returns the
//! wires to the standard basis (up to a permutation). Gray-synth and the
//! per-term ladder construction are included as baselines, along with
//! benchmark generators and exact checkers for small instances.

pub mod bench;
pub mod error;
pub mod f2;
pub mod phasepoly;
pub mod problems;
pub mod qasm;
pub mod synth;
pub mod verify;

pub use error::{Error, Result};
pub use f2::{hamming_weight, parity_rewrite_under_cnot, Parity, WireState};
pub use phasepoly::PhasePolynomial;
pub use synth::{synthesize_diagonal, Circuit, Gate, Method, ReturnMethod, SynthOptions, SynthesisReport};
