//! Greedy parity network synthesis.
//!
//! Targets are kept in the coordinates of the current wire basis. Each step
//! takes the lightest remaining target (ties broken by the smallest
//! bitstring), adds its lowest set wire into its next-lowest set wire, and
//! rewrites every target for the new basis. A target of weight one sits on
//! a wire and is done.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::f2::{Parity, WireState};
use crate::synth::{Cnot, ParityNetwork, Placement};

pub fn greedy_parity_network(targets: &[Parity], n: usize) -> Result<ParityNetwork> {
    let unique: BTreeSet<&Parity> = targets.iter().collect();
    for p in &unique {
        if p.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.len(),
            });
        }
        if p.weight() < 2 {
            return Err(Error::WeightTooLow {
                parity: p.to_string(),
                weight: p.weight(),
                min: 2,
            });
        }
    }

    // (current coordinates, original parity)
    let mut remaining: Vec<(Parity, &Parity)> = unique.into_iter().map(|p| (p.clone(), p)).collect();
    let mut state = WireState::identity(n);
    let mut cnots = Vec::new();
    let mut placements = Vec::with_capacity(remaining.len());

    while !remaining.is_empty() {
        let y = remaining
            .iter()
            .map(|(c, _)| c)
            .min_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| a.cmp(b)))
            .unwrap();
        let mut ones = y.ones();
        let control = ones.next().unwrap();
        let target = ones.next().unwrap();

        cnots.push(Cnot::new(control, target));
        state.apply_cnot_unchecked(control, target);
        debug_assert!(state.is_lower_triangular());

        remaining.retain_mut(|(coords, original)| {
            coords.rewrite_under_cnot(control, target);
            if coords.weight() == 1 {
                let wire = coords.first_one().unwrap();
                debug_assert_eq!(state.row(wire), *original);
                placements.push(Placement {
                    parity: (*original).clone(),
                    wire,
                    position: cnots.len(),
                });
                false
            } else {
                true
            }
        });
    }

    Ok(ParityNetwork {
        n,
        cnots,
        final_state: state,
        placements,
    })
}
