//! Benchmark problem families: random parity sets, complete low-order
//! problems, and graph coloring on connected caveman graphs.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use itertools::Itertools;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::f2::Parity;
use crate::phasepoly::{PhasePolynomial, ZERO_TOL};

/// Seeded generator shared by every randomized family.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `min(m, 2^n − 1)` distinct nonzero parities drawn uniformly without
/// replacement, with coefficients uniform in `[−π, π)`.
pub fn gen_random(n: usize, m: usize, seed: u64) -> Result<PhasePolynomial> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParams(format!(
            "random family needs n >= 1 and terms >= 1 (got n={n}, terms={m})"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let parities: Vec<Parity> = if n < 63 && m as u64 >= (1u64 << n) - 1 {
        (1..1u64 << n).map(|v| Parity::from_u64(n, v)).collect()
    } else if n <= 30 {
        let total = (1usize << n) - 1;
        rand::seq::index::sample(&mut rng, total, m)
            .into_iter()
            .map(|i| Parity::from_u64(n, i as u64 + 1))
            .collect()
    } else {
        // Rejection sampling of uniform vectors; the space dwarfs m here.
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(m);
        while out.len() < m {
            let mut p = Parity::zeros(n);
            for i in 0..n {
                if rng.gen::<bool>() {
                    p.set(i, true);
                }
            }
            if !p.is_zero() && seen.insert(p.clone()) {
                out.push(p);
            }
        }
        out
    };

    let mut poly = PhasePolynomial::new(n);
    for p in parities {
        let coeff = loop {
            let c = rng.gen_range(-PI..PI);
            if c.abs() > ZERO_TOL {
                break c;
            }
        };
        poly.add_term(p, coeff)?;
    }
    Ok(poly)
}

/// Every parity of weight `1..=k` with coefficient 1.
pub fn gen_full(n: usize, k: usize) -> Result<PhasePolynomial> {
    if k == 0 || k > n {
        return Err(Error::InvalidParams(format!(
            "full family needs 1 <= k <= n (got n={n}, k={k})"
        )));
    }
    let mut poly = PhasePolynomial::new(n);
    for weight in 1..=k {
        for set in (0..n).combinations(weight) {
            poly.add_term(Parity::from_indices(n, set)?, 1.0)?;
        }
    }
    Ok(poly)
}

/// A ring of near-cliques. Node `c * clique_size + i` is node `i` of clique
/// `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CavemanGraph {
    pub num_cliques: usize,
    pub clique_size: usize,
    /// Unordered edges stored as `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl CavemanGraph {
    pub fn num_nodes(&self) -> usize {
        self.num_cliques * self.clique_size
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_nodes();
        if n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !std::mem::replace(&mut seen[v], true) {
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Builds `num_cliques` copies of `K_{clique_size}`, drops edges `(0,1)` and
/// `(2,3)` inside each, and links node 1 of clique `c` to node 0 of clique
/// `c + 1` (cyclically).
pub fn gen_caveman_graph(num_cliques: usize, clique_size: usize) -> Result<CavemanGraph> {
    if num_cliques < 3 || clique_size < 4 {
        return Err(Error::InvalidParams(format!(
            "caveman graph needs cliques >= 3 and clique size >= 4 (got {num_cliques}, {clique_size})"
        )));
    }
    let node = |c: usize, i: usize| c * clique_size + i;
    let mut edges = Vec::new();
    for c in 0..num_cliques {
        for (i, j) in (0..clique_size).tuple_combinations() {
            if (i, j) == (0, 1) || (i, j) == (2, 3) {
                continue;
            }
            edges.push((node(c, i), node(c, j)));
        }
        let (u, v) = (node(c, 1), node((c + 1) % num_cliques, 0));
        edges.push((u.min(v), u.max(v)));
    }
    edges.sort_unstable();
    Ok(CavemanGraph {
        num_cliques,
        clique_size,
        edges,
    })
}

/// Bits needed to write a color index below `colors`.
pub fn color_bits(colors: usize) -> usize {
    (usize::BITS - (colors.max(2) - 1).leading_zeros()) as usize
}

/// Penalty Hamiltonian for coloring a graph with `colors` colors, each node
/// encoded by `ceil(log2 colors)` qubits (qubit `u*b + i` is bit `i` of node
/// `u`'s color code).
///
/// Each edge adds the indicator that its endpoints share a code; each node
/// adds the indicator of every unused code `≥ colors`. The constant parts
/// of the indicators are dropped; [`coloring_offset`] returns them.
pub fn encode_coloring(num_nodes: usize, edges: &[(usize, usize)], colors: usize) -> Result<PhasePolynomial> {
    if colors < 2 {
        return Err(Error::InvalidParams(format!("need at least 2 colors, got {colors}")));
    }
    let b = color_bits(colors);
    let n = num_nodes * b;
    let scale = 0.5f64.powi(b as i32);
    let mut poly = PhasePolynomial::new(n);
    let subsets = || (1u32..1 << b).map(|t| (0..b).filter(move |&i| t >> i & 1 == 1));

    for &(u, v) in edges {
        if u >= num_nodes || v >= num_nodes || u == v {
            return Err(Error::InvalidParams(format!("bad edge ({u}, {v})")));
        }
        // Π_i (1 + Z_{u_i} Z_{v_i}) / 2
        for t in subsets() {
            let idx = t.flat_map(|i| [u * b + i, v * b + i]);
            poly.add_term(Parity::from_indices(n, idx)?, scale)?;
        }
    }
    for u in 0..num_nodes {
        for code in colors..1 << b {
            // Π_i (1 + (−1)^{c_i} Z_{u_i}) / 2
            for t in subsets() {
                let bits: Vec<usize> = t.collect();
                let sign = if bits.iter().filter(|&&i| code >> i & 1 == 1).count() % 2 == 1 {
                    -1.0
                } else {
                    1.0
                };
                let idx = bits.iter().map(|&i| u * b + i);
                poly.add_term(Parity::from_indices(n, idx)?, sign * scale)?;
            }
        }
    }
    Ok(poly)
}

/// Constant dropped by [`encode_coloring`]: adding it to the energy gives
/// the number of violated constraints.
pub fn coloring_offset(num_nodes: usize, num_edges: usize, colors: usize) -> f64 {
    let b = color_bits(colors);
    let invalid = (1usize << b) - colors;
    (num_edges + num_nodes * invalid) as f64 * 0.5f64.powi(b as i32)
}

/// Coloring penalty for a caveman graph with `clique_size − 1` colors.
pub fn gen_coloring_polynomial(g: &CavemanGraph) -> Result<PhasePolynomial> {
    if g.clique_size < 4 {
        return Err(Error::InvalidParams("clique size must be at least 4".into()));
    }
    encode_coloring(g.num_nodes(), &g.edges, g.clique_size - 1)
}
