//! Forward and backward flips of S-graphs and exchange-graph enumeration.
//!
//! # The flip rule
//!
//! A flip at an edge `e` moves the endpoints of the dual arc one step
//! clockwise (forward) or counterclockwise (backward) inside the two dual
//! polygons containing them. On the S-graph this becomes an *angular
//! rotation*: place the halfedges at a vertex of degree `m` at their
//! angular positions (successive positions differ by the corner degree;
//! positions live in `ℤ/m` at internal vertices and in `ℤ` at boundary
//! vertices). A flip moves each halfedge of `e` by one unit — clockwise
//! (position − 1) for a forward flip, counterclockwise (position + 1) for a
//! backward flip:
//!
//! * if the target position is free, only the adjacent corner degrees
//!   change (one grows by 1, the other shrinks by 1);
//! * if another halfedge occupies the target position, that halfedge is
//!   **expelled** to the other endpoint of `e`, landing exactly at the
//!   position the other halfedge of `e` just vacated (so it acquires a
//!   corner of degree 1 against `e`).
//!
//! **Monogon case**: if exactly one endpoint of `e` is an internal vertex
//! of degree 1, the flip applies *two* rotation units at the opposite
//! endpoint, and expelled halfedges wrap around to the same vertex, landing
//! at the position just vacated by `e`'s halfedge (the square of the braid
//! twist). The degree-1 endpoint is unchanged. If both endpoints have
//! degree 1, the graph is unchanged and only the grading shift is recorded.
//!
//! Per-vertex degrees are invariant under flips (cone angles are surface
//! invariants), the edge count never changes, and forward and backward
//! flips at the same edge are mutually inverse.
//!
//! # Grading convention
//!
//! The flipped edge's grading shifts by `+1` under a forward flip and `−1`
//! under a backward flip; this is the shift recorded in
//! [`FlipRecord::grading_shift`] and consumed by the tilting layer.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{EdgeId, GraphError, HalfedgeId, SGraph, VertexDegree, VertexId, VertexKind};

/// Direction of a flip.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FlipDirection {
    /// Endpoints of the dual arc move clockwise.
    Forward,
    /// Endpoints of the dual arc move counterclockwise.
    Backward,
}

impl FlipDirection {
    /// The inverse direction.
    pub fn inverse(self) -> FlipDirection {
        match self {
            FlipDirection::Forward => FlipDirection::Backward,
            FlipDirection::Backward => FlipDirection::Forward,
        }
    }

    fn delta(self) -> i64 {
        match self {
            FlipDirection::Forward => -1,
            FlipDirection::Backward => 1,
        }
    }
}

impl fmt::Display for FlipDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlipDirection::Forward => write!(f, "forward"),
            FlipDirection::Backward => write!(f, "backward"),
        }
    }
}

/// An error from the flip engine.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FlipError {
    /// Underlying graph problem (unknown edge, invalid graph, ...).
    Graph(GraphError),
    /// The edge is external (a single halfedge) and cannot be flipped.
    ExternalEdge(EdgeId),
}

impl fmt::Display for FlipError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlipError::Graph(g) => write!(f, "{g}"),
            FlipError::ExternalEdge(e) => write!(f, "cannot flip external edge {e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for FlipError {}

impl From<GraphError> for FlipError {
    fn from(e: GraphError) -> FlipError {
        FlipError::Graph(e)
    }
}

/// The result of a flip: input, output, and bookkeeping.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FlipRecord {
    /// The graph before the flip.
    pub input: SGraph,
    /// The flipped edge.
    pub edge: EdgeId,
    /// The flip direction.
    pub direction: FlipDirection,
    /// The graph after the flip (same halfedge ids).
    pub output: SGraph,
    /// Halfedges expelled to the other endpoint (0, 1 or 2 entries).
    pub moved: Vec<HalfedgeId>,
    /// Grading shift of the flipped edge: `+1` forward, `−1` backward.
    pub grading_shift: i8,
}

/// Scratch state for one vertex during a flip: halfedges with angular
/// positions.
struct VertexSlots {
    v: VertexId,
    /// Vertex degree for internal vertices (modulus of the positions).
    modulus: Option<i64>,
    slots: BTreeMap<HalfedgeId, i64>,
}

impl VertexSlots {
    fn read(g: &SGraph, v: VertexId) -> VertexSlots {
        let ord = g.order_at(v);
        let cs = g.corners_at(v);
        let mut slots = BTreeMap::new();
        let mut pos = 0i64;
        for (k, &h) in ord.iter().enumerate() {
            slots.insert(h, pos);
            if k < cs.len() {
                pos += cs[k] as i64;
            }
        }
        let modulus = match g.kind(v) {
            VertexKind::Internal => Some(g.internal_degree(v) as i64),
            VertexKind::Boundary => None,
        };
        VertexSlots { v, modulus, slots }
    }

    fn norm(&self, p: i64) -> i64 {
        match self.modulus {
            Some(m) => p.rem_euclid(m),
            None => p,
        }
    }

    /// The halfedge currently at position `p`, if any.
    fn occupant(&self, p: i64) -> Option<HalfedgeId> {
        let p = self.norm(p);
        self.slots
            .iter()
            .find(|&(_, &q)| self.norm(q) == p)
            .map(|(&h, _)| h)
    }

    /// Writes the vertex's order and corner degrees back into the graph.
    fn write(&self, g: &mut WorkGraph) {
        let mut items: Vec<(i64, HalfedgeId)> =
            self.slots.iter().map(|(&h, &p)| (self.norm(p), h)).collect();
        items.sort();
        debug_assert!(
            items.windows(2).all(|w| w[0].0 != w[1].0),
            "position collision at {}",
            self.v
        );
        let order: Vec<u32> = items.iter().map(|&(_, h)| h.0).collect();
        let corners: Vec<u32> = match self.modulus {
            Some(m) => {
                if items.len() == 1 {
                    alloc::vec![m as u32]
                } else {
                    (0..items.len())
                        .map(|k| {
                            let a = items[k].0;
                            let b = items[(k + 1) % items.len()].0;
                            (b - a).rem_euclid(m) as u32
                        })
                        .collect()
                }
            }
            None => items.windows(2).map(|w| (w[1].0 - w[0].0) as u32).collect(),
        };
        for &(_, h) in &items {
            g.sigma[h.idx()] = self.v.0;
        }
        g.order[self.v.idx()] = order;
        g.corners[self.v.idx()] = corners;
    }
}

/// Mutable copy of the graph parts a flip touches.
struct WorkGraph {
    kinds: Vec<VertexKind>,
    tau: Vec<u32>,
    sigma: Vec<u32>,
    order: Vec<Vec<u32>>,
    corners: Vec<Vec<u32>>,
}

impl WorkGraph {
    fn read(g: &SGraph) -> WorkGraph {
        WorkGraph {
            kinds: g.vertices().map(|v| g.kind(v)).collect(),
            tau: g.halfedges().map(|h| g.tau(h).0).collect(),
            sigma: g.halfedges().map(|h| g.vertex_of(h).0).collect(),
            order: g.vertices().map(|v| g.order_at(v).iter().map(|h| h.0).collect()).collect(),
            corners: g.vertices().map(|v| g.corners_at(v).to_vec()).collect(),
        }
    }

    fn finish(self) -> SGraph {
        SGraph::from_parts(self.kinds, self.tau, self.sigma, self.order, self.corners)
    }
}

/// Performs a forward flip at `e`.
pub fn forward_flip(g: &SGraph, e: EdgeId) -> Result<FlipRecord, FlipError> {
    flip(g, e, FlipDirection::Forward)
}

/// Performs a backward flip at `e`.
pub fn backward_flip(g: &SGraph, e: EdgeId) -> Result<FlipRecord, FlipError> {
    flip(g, e, FlipDirection::Backward)
}

/// Performs a flip at `e` in the given direction.
pub fn flip(g: &SGraph, e: EdgeId, direction: FlipDirection) -> Result<FlipRecord, FlipError> {
    g.check_edge(e)?;
    let (p, q) = match g.edge_halfedges(e) {
        (p, Some(q)) => (p, q),
        (_, None) => return Err(FlipError::ExternalEdge(e)),
    };
    let shift = match direction {
        FlipDirection::Forward => 1,
        FlipDirection::Backward => -1,
    };
    let vp = g.vertex_of(p);
    let vq = g.vertex_of(q);
    let deg1 = |v: VertexId| g.vertex_degree(v) == Ok(VertexDegree::Finite(1));
    let output = match (deg1(vp), deg1(vq)) {
        (true, true) => {
            // Both ends are monogons: the graph is unchanged.
            return Ok(FlipRecord {
                input: g.clone(),
                edge: e,
                direction,
                output: g.clone(),
                moved: Vec::new(),
                grading_shift: shift,
            });
        }
        (true, false) => monogon_flip(g, q, direction),
        (false, true) => monogon_flip(g, p, direction),
        (false, false) => usual_flip(g, p, q, direction),
    };
    let moved = output.moved;
    let out = output.graph;
    debug_assert!(out.validate().is_valid(), "flip produced invalid graph");
    Ok(FlipRecord {
        input: g.clone(),
        edge: e,
        direction,
        output: out,
        moved,
        grading_shift: shift,
    })
}

struct FlipOutput {
    graph: SGraph,
    moved: Vec<HalfedgeId>,
}

/// The usual flip: both endpoints rotate one unit; expelled halfedges cross
/// to the other endpoint.
fn usual_flip(g: &SGraph, p: HalfedgeId, q: HalfedgeId, dir: FlipDirection) -> FlipOutput {
    let delta = dir.delta();
    let vp = g.vertex_of(p);
    let vq = g.vertex_of(q);
    let mut work = WorkGraph::read(g);

    let mut states: BTreeMap<VertexId, VertexSlots> = BTreeMap::new();
    states.insert(vp, VertexSlots::read(g, vp));
    states.entry(vq).or_insert_with(|| VertexSlots::read(g, vq));

    // All decisions are taken on the original snapshot.
    let orig_pos = |h: HalfedgeId, states: &BTreeMap<VertexId, VertexSlots>| -> i64 {
        states[&g.vertex_of(h)].slots[&h]
    };
    let mut moved = Vec::new();
    let mut expulsions: Vec<(HalfedgeId, VertexId, i64)> = Vec::new();
    for (h, other) in [(p, q), (q, p)] {
        let x = g.vertex_of(h);
        let target = orig_pos(h, &states) + delta;
        if let Some(s) = states[&x].occupant(target) {
            if s != p && s != q {
                // Expelled: lands at the position the other halfedge of the
                // flipped edge vacates.
                let dest_v = g.vertex_of(other);
                let dest_pos = orig_pos(other, &states);
                expulsions.push((s, dest_v, dest_pos));
                moved.push(s);
            }
        }
    }
    // Apply: move the flipped edge's halfedges, then relocate expelled ones.
    let new_p = orig_pos(p, &states) + delta;
    let new_q = orig_pos(q, &states) + delta;
    for (h, np) in [(p, new_p), (q, new_q)] {
        let x = g.vertex_of(h);
        states.get_mut(&x).unwrap().slots.insert(h, np);
    }
    for &(s, dest_v, dest_pos) in &expulsions {
        let src = g.vertex_of(s);
        states.get_mut(&src).unwrap().slots.remove(&s);
        states.get_mut(&dest_v).unwrap().slots.insert(s, dest_pos);
    }
    for state in states.values() {
        state.write(&mut work);
    }
    FlipOutput {
        graph: work.finish(),
        moved,
    }
}

/// The monogon flip: two sequential rotation units at the non-monogon
/// endpoint `e_v`; expelled halfedges wrap around to the same vertex,
/// landing at the position `e_v` just vacated.
fn monogon_flip(g: &SGraph, e_v: HalfedgeId, dir: FlipDirection) -> FlipOutput {
    let delta = dir.delta();
    let v = g.vertex_of(e_v);
    let mut work = WorkGraph::read(g);
    let mut state = VertexSlots::read(g, v);
    let mut moved = Vec::new();
    for _ in 0..2 {
        let pos = state.slots[&e_v];
        let target = pos + delta;
        if let Some(s) = state.occupant(target) {
            if s != e_v {
                state.slots.insert(s, pos);
                moved.push(s);
            }
        }
        state.slots.insert(e_v, target);
    }
    state.write(&mut work);
    FlipOutput {
        graph: work.finish(),
        moved,
    }
}

/// A depth-bounded exchange graph: nodes are canonical forms of S-graphs,
/// edges are forward flips labeled by the flipped edge id.
#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    /// Nodes sorted by canonical form; each carries a representative graph
    /// and its BFS depth from the root.
    pub nodes: Vec<ExchangeNode>,
    /// Directed edges `(from, to, flipped edge)` into [`ExchangeGraph::nodes`].
    pub edges: Vec<(usize, usize, EdgeId)>,
    /// Number of flippable (two-halfedge) edges of the root graph.
    pub m: usize,
    /// True when the frontier was nonempty at the depth limit.
    pub truncated: bool,
}

/// A node of the exchange graph.
#[derive(Clone, Debug)]
pub struct ExchangeNode {
    /// Canonical form of the S-graph (dedup key).
    pub canon: Vec<u8>,
    /// A representative graph with this canonical form.
    pub graph: SGraph,
    /// BFS depth from the root.
    pub depth: usize,
}

impl ExchangeGraph {
    /// Out-degree of a node.
    pub fn out_degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|&&(f, _, _)| f == node).count()
    }

    /// In-degree of a node.
    pub fn in_degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|&&(_, t, _)| t == node).count()
    }
}

/// Enumerates the exchange graph by breadth-first search over forward
/// flips up to `max_depth`, deduplicating nodes by canonical form.
pub fn exchange_graph(g: &SGraph, max_depth: usize) -> Result<ExchangeGraph, FlipError> {
    let root_canon = g.canonical_form()?;
    let flippable: Vec<EdgeId> = g
        .edges()
        .into_iter()
        .filter(|&e| !g.is_external(e))
        .collect();
    let m = flippable.len();
    let mut nodes: Vec<ExchangeNode> = alloc::vec![ExchangeNode {
        canon: root_canon.clone(),
        graph: g.clone(),
        depth: 0,
    }];
    let mut index: BTreeMap<Vec<u8>, usize> = BTreeMap::from([(root_canon, 0)]);
    let mut edges: Vec<(usize, usize, EdgeId)> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    let mut truncated = false;
    while let Some(cur) = queue.pop_front() {
        let depth = nodes[cur].depth;
        if depth == max_depth {
            truncated = true;
            continue;
        }
        let cur_graph = nodes[cur].graph.clone();
        for e in cur_graph.edges() {
            if cur_graph.is_external(e) {
                continue;
            }
            let rec = forward_flip(&cur_graph, e)?;
            let canon = rec.output.canonical_form()?;
            let to = match index.get(&canon) {
                Some(&i) => i,
                None => {
                    let i = nodes.len();
                    nodes.push(ExchangeNode {
                        canon: canon.clone(),
                        graph: rec.output,
                        depth: depth + 1,
                    });
                    index.insert(canon, i);
                    queue.push_back(i);
                    i
                }
            };
            edges.push((cur, to, e));
        }
    }
    // Canonical output ordering: sort nodes by canonical form, remap edges.
    let mut perm: Vec<usize> = (0..nodes.len()).collect();
    perm.sort_by(|&a, &b| nodes[a].canon.cmp(&nodes[b].canon));
    let mut inv = alloc::vec![0usize; nodes.len()];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    let mut sorted_nodes = Vec::with_capacity(nodes.len());
    for &old in &perm {
        sorted_nodes.push(nodes[old].clone());
    }
    for e in &mut edges {
        e.0 = inv[e.0];
        e.1 = inv[e.1];
    }
    edges.sort_by_key(|&(f, t, e)| (f, t, e.0 .0));
    Ok(ExchangeGraph {
        nodes: sorted_nodes,
        edges,
        m,
        truncated,
    })
}
