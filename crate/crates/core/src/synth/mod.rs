//! Synthesis of `e^{iγH}` into CNOT and RZ gates.
//!
//! A parity network builder (greedy or gray-synth) visits every multi-bit
//! parity of `H` on some wire; RZ gates are dropped in where each parity
//! appears; a return journey then brings the wires back to the standard
//! basis, up to a permutation. The ladder baseline builds each term as its
//! own phase gadget instead.

mod circuit;
mod elim;
mod graysynth;
mod greedy;
mod ladder;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use circuit::{Circuit, Cnot, Gate};
pub use elim::{gauss_jordan_elim, greedy_gauss_elim, Elimination};
pub use graysynth::graysynth;
pub use greedy::greedy_parity_network;
pub use ladder::ladder_synthesis;

use crate::error::{Error, Result};
use crate::f2::{Parity, WireState};
use crate::phasepoly::PhasePolynomial;

/// A target parity reached on `wire` right after the first `position`
/// CNOTs of a network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    pub parity: Parity,
    pub wire: usize,
    pub position: usize,
}

/// CNOT-only circuit that visits every requested parity.
#[derive(Clone, Debug)]
pub struct ParityNetwork {
    pub n: usize,
    pub cnots: Vec<Cnot>,
    pub final_state: WireState,
    pub placements: Vec<Placement>,
}

impl ParityNetwork {
    /// Replays the CNOTs and confirms each placement: the logged wire holds
    /// the logged parity at the logged position.
    pub fn check_placements(&self) -> Result<()> {
        let mut by_pos: Vec<&Placement> = self.placements.iter().collect();
        by_pos.sort_by_key(|p| p.position);
        let mut state = WireState::identity(self.n);
        let mut next = by_pos.into_iter().peekable();
        for pos in 0..=self.cnots.len() {
            while let Some(p) = next.next_if(|p| p.position == pos) {
                if state.row(p.wire) != &p.parity {
                    return Err(Error::Unplaced(p.parity.to_string()));
                }
            }
            if let Some(c) = self.cnots.get(pos) {
                state.apply_cnot(c.control, c.target)?;
            }
        }
        if let Some(p) = next.next() {
            return Err(Error::Unplaced(p.parity.to_string()));
        }
        if state != self.final_state {
            return Err(Error::InvalidParams("final state does not match replay".into()));
        }
        Ok(())
    }
}

/// RZ angle for a term with weight `coeff`: `θ = −2γb`, so that
/// `RZ(θ) = diag(e^{−iθ/2}, e^{iθ/2})` contributes `e^{iγb(−1)^x}`.
pub fn rz_angle(coeff: f64, gamma: f64) -> f64 {
    -2.0 * gamma * coeff
}

/// Interleaves RZ gates into a CNOT stream.
///
/// Weight-one terms go first, on their own wire. Every heavier term must be
/// covered by exactly one placement.
pub fn place_rz(
    n: usize,
    cnots: &[Cnot],
    placements: &[Placement],
    poly: &PhasePolynomial,
    gamma: f64,
) -> Result<Circuit> {
    let mut circuit = Circuit::new(n);
    for (p, b) in poly.terms().filter(|(p, _)| p.weight() == 1) {
        circuit.rz(p.first_one().unwrap(), rz_angle(b, gamma));
    }

    let mut sorted: Vec<&Placement> = placements.iter().filter(|pl| pl.parity.weight() >= 2).collect();
    sorted.sort_by_key(|pl| pl.position);
    let mut seen = std::collections::BTreeSet::new();
    for pl in &sorted {
        if !seen.insert(&pl.parity) {
            return Err(Error::InvalidParams(format!("parity {} placed twice", pl.parity)));
        }
        if poly.coefficient(&pl.parity) == 0.0 {
            return Err(Error::InvalidParams(format!(
                "placement for {} which has no term",
                pl.parity
            )));
        }
    }
    if let Some((p, _)) = poly.terms().find(|(p, _)| p.weight() >= 2 && !seen.contains(p)) {
        return Err(Error::Unplaced(p.to_string()));
    }

    let mut next = sorted.into_iter().peekable();
    for pos in 0..=cnots.len() {
        while let Some(pl) = next.next_if(|pl| pl.position == pos) {
            circuit.rz(pl.wire, rz_angle(poly.coefficient(&pl.parity), gamma));
        }
        if let Some(c) = cnots.get(pos) {
            circuit.push(Gate::Cnot(*c));
        }
    }
    if let Some(pl) = next.next() {
        return Err(Error::InvalidParams(format!(
            "placement position {} beyond {} CNOTs",
            pl.position,
            cnots.len()
        )));
    }
    Ok(circuit)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Greedy,
    Graysynth,
    Ladder,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Greedy, Method::Graysynth, Method::Ladder];

    pub fn name(self) -> &'static str {
        match self {
            Method::Greedy => "greedy",
            Method::Graysynth => "graysynth",
            Method::Ladder => "ladder",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown method {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReturnMethod {
    /// Greedy Gaussian elimination with the Gauss-Jordan fallback.
    #[default]
    GreedyElim,
    /// Gauss-Jordan elimination only.
    FallbackElim,
}

impl ReturnMethod {
    pub fn name(self) -> &'static str {
        match self {
            ReturnMethod::GreedyElim => "greedy_elim",
            ReturnMethod::FallbackElim => "fallback_elim",
        }
    }

    fn run(self, state: &WireState) -> Elimination {
        match self {
            ReturnMethod::GreedyElim => greedy_gauss_elim(state),
            ReturnMethod::FallbackElim => gauss_jordan_elim(state),
        }
    }
}

impl fmt::Display for ReturnMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReturnMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [ReturnMethod::GreedyElim, ReturnMethod::FallbackElim]
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown return method {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SynthOptions {
    pub method: Method,
    pub return_method: ReturnMethod,
    /// Synthesize any residual wire permutation as swaps.
    pub force_identity: bool,
}

impl SynthOptions {
    pub fn new(method: Method) -> Self {
        SynthOptions {
            method,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug)]
pub struct SynthesisReport {
    pub circuit: Circuit,
    pub cnot_count: usize,
    pub rz_count: usize,
    /// CNOTs spent building the parity network (all of them for ladder).
    pub network_cnots: usize,
    /// CNOTs spent on the return journey, including forced swaps.
    pub return_cnots: usize,
    pub runtime_ms: f64,
}

/// Compiles `e^{iγH}` for `H = poly`.
pub fn synthesize_diagonal(poly: &PhasePolynomial, gamma: f64, opts: SynthOptions) -> Result<SynthesisReport> {
    let start = Instant::now();
    let n = poly.n();

    if opts.method == Method::Ladder {
        let circuit = ladder_synthesis(poly, gamma);
        let cnot_count = circuit.cnot_count();
        return Ok(SynthesisReport {
            rz_count: circuit.rz_count(),
            cnot_count,
            network_cnots: cnot_count,
            return_cnots: 0,
            circuit,
            runtime_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }

    let targets: Vec<Parity> = poly.parities().filter(|p| p.weight() >= 2).cloned().collect();
    let network = match opts.method {
        Method::Greedy => greedy_parity_network(&targets, n)?,
        Method::Graysynth => graysynth(&targets, n)?,
        Method::Ladder => unreachable!(),
    };
    let mut circuit = place_rz(n, &network.cnots, &network.placements, poly, gamma)?;
    let network_cnots = network.cnots.len();

    let elim = opts.return_method.run(&network.final_state);
    for c in &elim.cnots {
        circuit.push(Gate::Cnot(*c));
    }
    let mut permutation = elim.permutation;
    if opts.force_identity {
        for (a, b) in swaps_to_identity(&mut permutation) {
            circuit.cnot(a, b);
            circuit.cnot(b, a);
            circuit.cnot(a, b);
        }
    }
    circuit.output_permutation = permutation;

    let cnot_count = circuit.cnot_count();
    Ok(SynthesisReport {
        rz_count: circuit.rz_count(),
        cnot_count,
        network_cnots,
        return_cnots: cnot_count - network_cnots,
        circuit,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Transpositions that sort `perm` (wire `w` carries `perm[w]`) into the
/// identity; `perm` is left sorted.
fn swaps_to_identity(perm: &mut [usize]) -> Vec<(usize, usize)> {
    let mut swaps = Vec::new();
    for w in 0..perm.len() {
        while perm[w] != w {
            let v = perm[w];
            perm.swap(w, v);
            swaps.push((w, v));
        }
    }
    swaps
}
