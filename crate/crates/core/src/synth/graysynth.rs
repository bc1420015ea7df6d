//! Gray-synth: cofactor-partition parity network synthesis.
//!
//! Used as a comparison baseline. It works on a stack of frames, each a
//! subset of the remaining targets, a set of columns not yet split on, and
//! an optional target wire. A frame with a target wire first absorbs every
//! column shared by all of its targets into that wire, then splits on the
//! column that best separates its targets.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::f2::{Parity, WireState};
use crate::synth::{Cnot, ParityNetwork, Placement};

struct Frame {
    members: Vec<usize>,
    columns: Vec<usize>,
    target: Option<usize>,
}

pub fn graysynth(targets: &[Parity], n: usize) -> Result<ParityNetwork> {
    let originals: Vec<&Parity> = targets.iter().collect::<BTreeSet<_>>().into_iter().collect();
    for p in &originals {
        if p.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.len(),
            });
        }
        if p.is_zero() {
            return Err(Error::WeightTooLow {
                parity: p.to_string(),
                weight: 0,
                min: 1,
            });
        }
    }

    let mut coords: Vec<Parity> = originals.iter().map(|&p| p.clone()).collect();
    let mut alive = vec![true; coords.len()];
    let mut state = WireState::identity(n);
    let mut cnots: Vec<Cnot> = Vec::new();
    let mut placements = Vec::with_capacity(coords.len());

    let place_reached =
        |coords: &[Parity], alive: &mut [bool], state: &WireState, position: usize, placements: &mut Vec<Placement>| {
            for (k, c) in coords.iter().enumerate() {
                if alive[k] && c.weight() == 1 {
                    let wire = c.first_one().unwrap();
                    debug_assert_eq!(state.row(wire), originals[k]);
                    alive[k] = false;
                    placements.push(Placement {
                        parity: originals[k].clone(),
                        wire,
                        position,
                    });
                }
            }
        };
    place_reached(&coords, &mut alive, &state, 0, &mut placements);

    let mut stack = vec![Frame {
        members: (0..coords.len()).filter(|&k| alive[k]).collect(),
        columns: (0..n).collect(),
        target: None,
    }];

    while let Some(mut frame) = stack.pop() {
        frame.members.retain(|&k| alive[k]);
        if frame.members.is_empty() {
            continue;
        }

        if let Some(t) = frame.target {
            while let Some(j) = (0..n).find(|&j| j != t && frame.members.iter().all(|&k| coords[k].get(j))) {
                cnots.push(Cnot::new(j, t));
                state.apply_cnot_unchecked(j, t);
                for (k, c) in coords.iter_mut().enumerate() {
                    if alive[k] {
                        c.rewrite_under_cnot(j, t);
                    }
                }
                place_reached(&coords, &mut alive, &state, cnots.len(), &mut placements);
                frame.members.retain(|&k| alive[k]);
                if frame.members.is_empty() {
                    break;
                }
            }
        }

        if frame.members.is_empty() {
            continue;
        }
        if frame.columns.is_empty() {
            // Members left with no column to split on: restart the frame
            // over every column that still distinguishes or carries them.
            let columns: Vec<usize> = (0..n)
                .filter(|&j| Some(j) != frame.target && frame.members.iter().any(|&k| coords[k].get(j)))
                .collect();
            debug_assert!(!columns.is_empty());
            stack.push(Frame {
                members: frame.members,
                columns,
                target: frame.target,
            });
            continue;
        }

        let (pos, &split) = frame
            .columns
            .iter()
            .enumerate()
            .max_by(|(_, &a), (_, &b)| {
                let score = |j: usize| {
                    let ones = frame.members.iter().filter(|&&k| coords[k].get(j)).count();
                    ones.max(frame.members.len() - ones)
                };
                // max_by keeps the last maximum; reverse the column order so
                // the smallest column wins ties.
                score(a).cmp(&score(b)).then_with(|| b.cmp(&a))
            })
            .unwrap();
        let mut rest = frame.columns.clone();
        rest.remove(pos);
        let (ones, zeros): (Vec<usize>, Vec<usize>) = frame.members.iter().partition(|&&k| coords[k].get(split));

        stack.push(Frame {
            members: zeros,
            columns: rest.clone(),
            target: frame.target,
        });
        stack.push(Frame {
            members: ones,
            columns: rest,
            target: frame.target.or(Some(split)),
        });
    }

    if let Some(k) = alive.iter().position(|&a| a) {
        return Err(Error::Unplaced(originals[k].to_string()));
    }

    Ok(ParityNetwork {
        n,
        cnots,
        final_state: state,
        placements,
    })
}
