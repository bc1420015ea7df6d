//! Return journey: reducing a wire state to a permutation with row
//! additions (each one a CNOT).

use crate::f2::{Parity, WireState};
use crate::synth::Cnot;

/// Row operations that reduce a wire state to a permutation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    pub cnots: Vec<Cnot>,
    /// `permutation[w]` is the variable left on wire `w`.
    pub permutation: Vec<usize>,
    /// Gates contributed by the Gauss-Jordan fallback.
    pub fallback_cnots: usize,
}

/// Greedy Gaussian elimination.
///
/// Each step scores every row pair `i < j` by `max(|A_i|, |A_j|) − |A_i ⊕ A_j|`
/// and applies the best pair (first in `(i, j)` order on ties), adding the
/// lighter row into the heavier one; on equal weights the lower index is
/// the control.
///
/// When no pair has a positive score the greedy loop is stuck. From that
/// state with total weight `W`, Gauss-Jordan row operations are applied
/// until the total weight drops below `W` (or the matrix is a permutation),
/// then greedy steps resume. Stuck states therefore have strictly
/// decreasing total weight and the loop terminates on every invertible
/// input.
pub fn greedy_gauss_elim(a: &WireState) -> Elimination {
    let mut rows: Vec<Parity> = a.rows().to_vec();
    let n = rows.len();
    let mut weights: Vec<usize> = rows.iter().map(Parity::weight).collect();
    let mut cnots = Vec::new();
    let mut fallback_cnots = 0;

    let apply = |rows: &mut Vec<Parity>, weights: &mut Vec<usize>, c: usize, t: usize| {
        let src = rows[c].clone();
        rows[t].xor_assign(&src);
        weights[t] = rows[t].weight();
    };

    while weights.iter().any(|&w| w > 1) {
        let mut best: Option<(isize, usize, usize)> = None;
        for i in 0..n {
            for j in i + 1..n {
                let score = weights[i].max(weights[j]) as isize - rows[i].xor_weight(&rows[j]) as isize;
                if best.is_none_or(|(s, _, _)| score > s) {
                    best = Some((score, i, j));
                }
            }
        }
        let (score, l, m) = best.expect("a row of weight > 1 implies n >= 2");

        if score > 0 {
            let (c, t) = if weights[l] <= weights[m] { (l, m) } else { (m, l) };
            apply(&mut rows, &mut weights, c, t);
            cnots.push(Cnot::new(c, t));
            continue;
        }

        let stuck_weight: usize = weights.iter().sum();
        for op in gauss_jordan_ops(&rows) {
            apply(&mut rows, &mut weights, op.control, op.target);
            cnots.push(op);
            fallback_cnots += 1;
            if weights.iter().sum::<usize>() < stuck_weight {
                break;
            }
        }
    }

    Elimination {
        cnots,
        permutation: permutation_of(&rows),
        fallback_cnots,
    }
}

/// Deterministic Gauss-Jordan elimination to a permutation matrix, with no
/// greedy steps.
pub fn gauss_jordan_elim(a: &WireState) -> Elimination {
    let mut rows: Vec<Parity> = a.rows().to_vec();
    let cnots = gauss_jordan_ops(&rows);
    for op in &cnots {
        let src = rows[op.control].clone();
        rows[op.target].xor_assign(&src);
    }
    Elimination {
        fallback_cnots: cnots.len(),
        cnots,
        permutation: permutation_of(&rows),
    }
}

/// Column-by-column elimination. For column `c` the pivot is the lightest
/// unused row with a one there (lowest index on ties); it is then added to
/// every other row that has a one in column `c`.
fn gauss_jordan_ops(rows: &[Parity]) -> Vec<Cnot> {
    let mut rows = rows.to_vec();
    let n = rows.len();
    let mut used = vec![false; n];
    let mut ops = Vec::new();
    for col in 0..n {
        let pivot = (0..n)
            .filter(|&r| !used[r] && rows[r].get(col))
            .min_by_key(|&r| (rows[r].weight(), r))
            .expect("invertible matrix has a pivot in every column");
        used[pivot] = true;
        let src = rows[pivot].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot && row.get(col) {
                row.xor_assign(&src);
                ops.push(Cnot::new(pivot, r));
            }
        }
    }
    ops
}

fn permutation_of(rows: &[Parity]) -> Vec<usize> {
    rows.iter()
        .map(|r| {
            debug_assert_eq!(r.weight(), 1);
            r.first_one().unwrap()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(rows: &[&str]) -> WireState {
        WireState::from_rows(rows.iter().map(|r| r.parse().unwrap()).collect()).unwrap()
    }

    fn replay(a: &WireState, e: &Elimination) -> WireState {
        let mut s = a.clone();
        for c in &e.cnots {
            s.apply_cnot(c.control, c.target).unwrap();
        }
        s
    }

    #[test]
    fn identity_needs_nothing() {
        let e = greedy_gauss_elim(&WireState::identity(4));
        assert!(e.cnots.is_empty());
        assert_eq!(e.permutation, vec![0, 1, 2, 3]);
    }

    #[test]
    fn single_row_addition() {
        let e = greedy_gauss_elim(&state(&["10", "11"]));
        assert_eq!(e.cnots, vec![Cnot::new(0, 1)]);
        assert_eq!(e.permutation, vec![0, 1]);
        assert_eq!(e.fallback_cnots, 0);
    }

    #[test]
    fn swap_is_reported_not_synthesized() {
        let e = greedy_gauss_elim(&state(&["01", "10"]));
        assert!(e.cnots.is_empty());
        assert_eq!(e.permutation, vec![1, 0]);
    }

    #[test]
    fn lighter_row_controls() {
        // (0,1) scores 3 − |001| = 2; row 1 is lighter.
        let e = greedy_gauss_elim(&state(&["111", "110", "010"]));
        assert_eq!(e.cnots[0], Cnot::new(1, 0));
        // (0,1) scores 0, (1,2) scores 2 − |100| = 1; row 2 is lighter.
        let b = state(&["110", "101", "001"]);
        assert_eq!(greedy_gauss_elim(&b).cnots[0], Cnot::new(2, 1));
    }

    #[test]
    fn equal_weights_lower_index_controls() {
        // (0,1): weights 3 and 3, XOR 1001, score 1, first best pair.
        let a = state(&["1110", "0111", "0010", "0001"]);
        let e = greedy_gauss_elim(&a);
        assert_eq!(e.cnots[0], Cnot::new(0, 1));
        assert_eq!(replay(&a, &e).as_permutation().unwrap(), e.permutation);
    }

    #[test]
    fn stuck_state_uses_fallback() {
        // Every pair scores ≤ 0 here.
        let a = state(&["1110", "1001", "0101", "0011"]);
        let e = greedy_gauss_elim(&a);
        assert!(e.fallback_cnots > 0);
        let end = replay(&a, &e);
        assert!(end.is_permutation());
        assert_eq!(end.as_permutation().unwrap(), e.permutation);
    }

    #[test]
    fn gauss_jordan_reaches_permutation() {
        let a = state(&["1110", "1001", "0101", "0011"]);
        let e = gauss_jordan_elim(&a);
        let end = replay(&a, &e);
        assert_eq!(end.as_permutation().unwrap(), e.permutation);
        assert!(gauss_jordan_elim(&WireState::identity(3)).cnots.is_empty());
    }
}
