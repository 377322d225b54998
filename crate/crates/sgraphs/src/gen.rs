//! Deterministic random S-graph generation for property and acceptance
//! tests.
//!
//! The generator produces valid, connected S-graphs with a mix of internal
//! and boundary vertices, loops, parallel edges, monogons (degree-1
//! vertices) and arbitrary corner degrees. It can optionally constrain the
//! internal vertex degrees to divide a given `n`, as required by the
//! algebra layers.
//!
//! Randomness comes from a small embedded SplitMix64 generator so the core
//! crate stays dependency-free and results are reproducible from the seed.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{SGraph, VertexKind};

/// A tiny deterministic PRNG (SplitMix64).
#[derive(Clone, Debug)]
pub struct Rng {
    state: u64,
}

impl Rng {
    /// Creates a generator from a seed.
    pub fn new(seed: u64) -> Rng {
        Rng {
            state: seed.wrapping_add(0x9e3779b97f4a7c15),
        }
    }

    /// Next raw 64-bit value.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` (`bound > 0`).
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }

    /// Uniform value in `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }

    /// Uniform pick from a slice.
    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        &xs[self.below(xs.len())]
    }
}

/// Parameters for random S-graph generation.
#[derive(Clone, Copy, Debug)]
pub struct GenParams {
    /// Maximum number of edges (at least 1).
    pub max_edges: usize,
    /// Permit boundary vertices.
    pub allow_boundary: bool,
    /// If set, every internal vertex degree divides this `n`.
    pub compatible_with: Option<u32>,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            max_edges: 6,
            allow_boundary: true,
            compatible_with: None,
        }
    }
}

/// Generates a random valid connected S-graph.
pub fn random_sgraph(rng: &mut Rng, params: &GenParams) -> SGraph {
    loop {
        if let Some(g) = try_generate(rng, params) {
            let rep = g.validate();
            debug_assert!(rep.is_valid(), "generator produced invalid graph: {rep}");
            if rep.is_valid() && g.is_connected() {
                return g;
            }
        }
    }
}

fn try_generate(rng: &mut Rng, params: &GenParams) -> Option<SGraph> {
    let n_edges = rng.range(1, params.max_edges.max(1));
    // Vertex counts: enough to attach a spanning tree, small enough to
    // force loops and parallels now and then.
    let max_v = (n_edges + 1).min(5);
    let nv = rng.range(1, max_v);
    let mut kinds = Vec::with_capacity(nv);
    for _ in 0..nv {
        let boundary = params.allow_boundary && rng.below(3) == 0;
        kinds.push(if boundary {
            VertexKind::Boundary
        } else {
            VertexKind::Internal
        });
    }
    // With degree constraints, internal vertex valency must not exceed n
    // (each corner degree is >= 1).
    let max_internal_valency = params.compatible_with.map(|n| n as usize);

    // Endpoint pairs: spanning tree first, extra edges random.
    let mut valency = vec![0usize; nv];
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(n_edges);
    let room = |v: usize, valency: &[usize], kinds: &[VertexKind], extra: usize| -> bool {
        match (kinds[v], max_internal_valency) {
            (VertexKind::Internal, Some(m)) => valency[v] + extra <= m,
            _ => true,
        }
    };
    for v in 1..nv {
        // Attach v to a random earlier vertex with room.
        let mut tries = 0;
        let u = loop {
            let u = rng.below(v);
            if room(u, &valency, &kinds, 1) {
                break u;
            }
            tries += 1;
            if tries > 32 {
                return None;
            }
        };
        if !room(v, &valency, &kinds, 1) {
            return None;
        }
        pairs.push((u, v));
        valency[u] += 1;
        valency[v] += 1;
    }
    while pairs.len() < n_edges {
        let mut tries = 0;
        let (u, v) = loop {
            let u = rng.below(nv);
            let v = rng.below(nv);
            let extra_u = if u == v { 2 } else { 1 };
            if room(u, &valency, &kinds, extra_u) && (u == v || room(v, &valency, &kinds, 1)) {
                break (u, v);
            }
            tries += 1;
            if tries > 64 {
                return None;
            }
        };
        pairs.push((u, v));
        valency[u] += 1;
        valency[v] += 1;
    }

    // Halfedges: 2 per edge; random insertion position in each vertex order.
    let nh = 2 * pairs.len();
    let mut tau = Vec::with_capacity(nh);
    let mut sigma = Vec::with_capacity(nh);
    let mut order: Vec<Vec<u32>> = vec![Vec::new(); nv];
    for (k, &(u, v)) in pairs.iter().enumerate() {
        let h1 = (2 * k) as u32;
        let h2 = (2 * k + 1) as u32;
        tau.push(h2);
        tau.push(h1);
        sigma.push(u as u32);
        sigma.push(v as u32);
        let pu = rng.below(order[u].len() + 1);
        order[u].insert(pu, h1);
        let pv = rng.below(order[v].len() + 1);
        order[v].insert(pv, h2);
    }

    // Corner degrees.
    let mut corners: Vec<Vec<u32>> = Vec::with_capacity(nv);
    for v in 0..nv {
        let r = order[v].len();
        if r == 0 {
            return None;
        }
        match kinds[v] {
            VertexKind::Boundary => {
                corners.push((1..r).map(|_| rng.range(1, 3) as u32).collect());
            }
            VertexKind::Internal => {
                let deg = match params.compatible_with {
                    Some(n) => {
                        let divisors: Vec<u32> =
                            (1..=n).filter(|d| n % d == 0 && *d as usize >= r).collect();
                        if divisors.is_empty() {
                            return None;
                        }
                        *rng.pick(&divisors)
                    }
                    None => rng.range(r, r + 4) as u32,
                };
                // Distribute deg into r positive parts.
                let mut parts = vec![1u32; r];
                let mut left = deg - r as u32;
                while left > 0 {
                    parts[rng.below(r)] += 1;
                    left -= 1;
                }
                corners.push(parts);
            }
        }
    }

    Some(SGraph::from_parts(kinds, tau, sigma, order, corners))
}
