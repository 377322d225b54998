//! The S-graph data model: ribbon structure with ordered halfedges and
//! corner degrees, plus validation, extension, orientability, canonical
//! forms and surface invariants.
//!
//! # Data model
//!
//! An S-graph is stored as a *combinatorial map*: a set of halfedges with an
//! involution `tau` (pairing halfedges into edges; a fixed point is an
//! *external* edge with a single halfedge), an incidence map `sigma` sending
//! each halfedge to its vertex, and per-vertex orderings. Internal vertices
//! carry a **cyclic** order, boundary vertices a **total** order. Each pair
//! of successive halfedges `(h, succ h)` carries a positive *corner degree*
//! `d(h, succ h)`; at a 1-valent internal vertex the single "corner" is the
//! full turn `(h, h)` and its degree is the vertex degree.
//!
//! The *extended* corner degree `d(h1, h2)` between arbitrary halfedges at
//! the same vertex is the sum of successive corner degrees walking
//! counterclockwise from `h1` to `h2`, with `d(h, h) = 0`; at boundary
//! vertices it is defined only when `h1` does not come after `h2` in the
//! total order.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Identifier of a vertex: an index into the graph's vertex table.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub u32);

/// Identifier of a halfedge: an index into the graph's halfedge tables.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HalfedgeId(pub u32);

/// Identifier of an edge: the smallest halfedge id in its `tau`-orbit.
///
/// Edge ids are stable under flips (flips move halfedges between vertices
/// but never renumber them).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId(pub HalfedgeId);

impl VertexId {
    /// The id as a `usize` index.
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl HalfedgeId {
    /// The id as a `usize` index.
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for HalfedgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0 .0)
    }
}

/// Kind of a vertex: internal (finite degree, cyclic halfedge order) or
/// boundary (infinite degree, total halfedge order).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VertexKind {
    /// An internal vertex; its degree is the sum of its corner degrees.
    Internal,
    /// A boundary vertex; its degree is infinite.
    Boundary,
}

/// Degree of a vertex: a positive integer for internal vertices, infinity
/// for boundary vertices.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VertexDegree {
    /// Finite degree (internal vertex): sum of corner degrees.
    Finite(u32),
    /// Infinite degree (boundary vertex).
    Infinite,
}

impl fmt::Display for VertexDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexDegree::Finite(d) => write!(f, "{d}"),
            VertexDegree::Infinite => write!(f, "inf"),
        }
    }
}

/// An error from a graph operation with an unsatisfied precondition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GraphError {
    /// A vertex id out of range.
    UnknownVertex(VertexId),
    /// A halfedge id out of range.
    UnknownHalfedge(HalfedgeId),
    /// An edge id that is not the canonical halfedge of an edge.
    UnknownEdge(EdgeId),
    /// The operation requires a connected graph.
    Disconnected,
    /// The operation requires a valid graph; the report lists violations.
    Invalid(ValidationReport),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::UnknownVertex(v) => write!(f, "unknown vertex {v}"),
            GraphError::UnknownHalfedge(h) => write!(f, "unknown halfedge {h}"),
            GraphError::UnknownEdge(e) => write!(f, "unknown edge {e}"),
            GraphError::Disconnected => write!(f, "graph is not connected"),
            GraphError::Invalid(r) => write!(f, "invalid S-graph: {r}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for GraphError {}

/// Result of [`SGraph::validate`]: the list of violated invariants.
///
/// An empty report means the graph is a valid S-graph.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ValidationReport {
    /// Human-readable description of each violated invariant.
    pub violations: Vec<String>,
}

impl ValidationReport {
    /// True iff no invariant is violated.
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            write!(f, "valid")
        } else {
            for (i, v) in self.violations.iter().enumerate() {
                if i > 0 {
                    write!(f, "; ")?;
                }
                write!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

/// An S-graph: halfedges with involution, incidence, per-vertex orders and
/// corner degrees. See the module documentation for the conventions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SGraph {
    kinds: Vec<VertexKind>,
    tau: Vec<u32>,
    sigma: Vec<u32>,
    /// Per vertex: incident halfedges in cyclic (internal) or total
    /// (boundary) order.
    order: Vec<Vec<u32>>,
    /// Per vertex: corner degrees aligned with `order`. Internal vertex of
    /// valency `r`: `r` entries, `corners[k] = d(order[k], order[(k+1)%r])`
    /// (for `r == 1` the single entry is the full turn `d(h,h)`, i.e. the
    /// vertex degree). Boundary vertex of valency `r`: `r - 1` entries.
    corners: Vec<Vec<u32>>,
}

impl SGraph {
    /// Builds an S-graph from raw parts without validation.
    ///
    /// Call [`SGraph::validate`] afterwards; most operations assume a valid
    /// graph. `tau`, `sigma` are indexed by halfedge id; `order` and
    /// `corners` by vertex id, with the layout documented on the fields.
    pub fn from_parts(
        kinds: Vec<VertexKind>,
        tau: Vec<u32>,
        sigma: Vec<u32>,
        order: Vec<Vec<u32>>,
        corners: Vec<Vec<u32>>,
    ) -> SGraph {
        SGraph {
            kinds,
            tau,
            sigma,
            order,
            corners,
        }
    }

    /// Number of vertices.
    pub fn n_vertices(&self) -> usize {
        self.kinds.len()
    }

    /// Number of halfedges.
    pub fn n_halfedges(&self) -> usize {
        self.tau.len()
    }

    /// All vertex ids.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.kinds.len() as u32).map(VertexId)
    }

    /// All halfedge ids.
    pub fn halfedges(&self) -> impl Iterator<Item = HalfedgeId> + '_ {
        (0..self.tau.len() as u32).map(HalfedgeId)
    }

    /// Kind of a vertex.
    pub fn kind(&self, v: VertexId) -> VertexKind {
        self.kinds[v.idx()]
    }

    /// True iff the vertex is internal.
    pub fn is_internal(&self, v: VertexId) -> bool {
        self.kind(v) == VertexKind::Internal
    }

    /// The partner of a halfedge under the involution (itself for an
    /// external edge).
    pub fn tau(&self, h: HalfedgeId) -> HalfedgeId {
        HalfedgeId(self.tau[h.idx()])
    }

    /// The vertex a halfedge is attached to.
    pub fn vertex_of(&self, h: HalfedgeId) -> VertexId {
        VertexId(self.sigma[h.idx()])
    }

    /// The ordered halfedges at a vertex (cyclic if internal, total if
    /// boundary).
    pub fn order_at(&self, v: VertexId) -> Vec<HalfedgeId> {
        self.order[v.idx()].iter().map(|&h| HalfedgeId(h)).collect()
    }

    /// The corner degrees at a vertex, aligned with [`SGraph::order_at`].
    pub fn corners_at(&self, v: VertexId) -> &[u32] {
        &self.corners[v.idx()]
    }

    /// Valency (number of incident halfedges) of a vertex.
    pub fn valency(&self, v: VertexId) -> usize {
        self.order[v.idx()].len()
    }

    /// Position of a halfedge in its vertex's order.
    pub fn pos_in_order(&self, h: HalfedgeId) -> usize {
        let v = self.vertex_of(h);
        self.order[v.idx()]
            .iter()
            .position(|&x| x == h.0)
            .expect("halfedge missing from its vertex order")
    }

    /// The canonical edge id of the edge containing a halfedge.
    pub fn edge_of(&self, h: HalfedgeId) -> EdgeId {
        EdgeId(h.min(self.tau(h)))
    }

    /// True iff the edge is external (a single `tau`-fixed halfedge).
    pub fn is_external(&self, e: EdgeId) -> bool {
        self.tau(e.0) == e.0
    }

    /// All edges, sorted by canonical id.
    pub fn edges(&self) -> Vec<EdgeId> {
        let mut out = Vec::new();
        for h in self.halfedges() {
            if h <= self.tau(h) {
                out.push(EdgeId(h));
            }
        }
        out
    }

    /// The halfedges of an edge: `(h, Some(tau h))` for an internal edge,
    /// `(h, None)` for an external one.
    pub fn edge_halfedges(&self, e: EdgeId) -> (HalfedgeId, Option<HalfedgeId>) {
        let t = self.tau(e.0);
        if t == e.0 {
            (e.0, None)
        } else {
            (e.0, Some(t))
        }
    }

    /// Checks that an edge id is canonical (smallest halfedge of its orbit).
    pub fn check_edge(&self, e: EdgeId) -> Result<(), GraphError> {
        if e.0.idx() >= self.n_halfedges() || self.edge_of(e.0) != e {
            return Err(GraphError::UnknownEdge(e));
        }
        Ok(())
    }

    /// The successor of `h` in its vertex order: cyclic at internal
    /// vertices (so a 1-valent internal vertex has `succ(h) = h`), `None`
    /// for the last halfedge at a boundary vertex.
    pub fn succ(&self, h: HalfedgeId) -> Option<HalfedgeId> {
        let v = self.vertex_of(h);
        let ord = &self.order[v.idx()];
        let p = self.pos_in_order(h);
        match self.kind(v) {
            VertexKind::Internal => Some(HalfedgeId(ord[(p + 1) % ord.len()])),
            VertexKind::Boundary => ord.get(p + 1).map(|&x| HalfedgeId(x)),
        }
    }

    /// The predecessor of `h` in its vertex order (mirror of
    /// [`SGraph::succ`]).
    pub fn pred(&self, h: HalfedgeId) -> Option<HalfedgeId> {
        let v = self.vertex_of(h);
        let ord = &self.order[v.idx()];
        let p = self.pos_in_order(h);
        match self.kind(v) {
            VertexKind::Internal => Some(HalfedgeId(ord[(p + ord.len() - 1) % ord.len()])),
            VertexKind::Boundary => p.checked_sub(1).map(|q| HalfedgeId(ord[q])),
        }
    }

    /// The corner degree `d(h, succ h)`, if `h` has a successor.
    pub fn corner_to_succ(&self, h: HalfedgeId) -> Option<u32> {
        let v = self.vertex_of(h);
        let p = self.pos_in_order(h);
        let cs = &self.corners[v.idx()];
        match self.kind(v) {
            VertexKind::Internal => Some(cs[p]),
            VertexKind::Boundary => cs.get(p).copied(),
        }
    }

    /// The degree of a vertex: sum of corner degrees if internal, infinity
    /// if boundary.
    pub fn vertex_degree(&self, v: VertexId) -> Result<VertexDegree, GraphError> {
        if v.idx() >= self.n_vertices() {
            return Err(GraphError::UnknownVertex(v));
        }
        Ok(match self.kind(v) {
            VertexKind::Internal => VertexDegree::Finite(self.corners[v.idx()].iter().sum()),
            VertexKind::Boundary => VertexDegree::Infinite,
        })
    }

    /// The finite degree of an internal vertex (panics on boundary
    /// vertices; use [`SGraph::vertex_degree`] when the kind is unknown).
    pub fn internal_degree(&self, v: VertexId) -> u32 {
        match self.vertex_degree(v).expect("vertex in range") {
            VertexDegree::Finite(d) => d,
            VertexDegree::Infinite => panic!("internal_degree of boundary vertex"),
        }
    }

    /// Extended corner degree `d(h1, h2)` between halfedges at the same
    /// vertex: sum of corner degrees walking counterclockwise from `h1` to
    /// `h2`, with `d(h, h) = 0`.
    ///
    /// Returns `None` if the halfedges sit at different vertices or, at a
    /// boundary vertex, if `h1` comes after `h2` in the total order (the
    /// extended degree is undefined there).
    pub fn d_ext(&self, h1: HalfedgeId, h2: HalfedgeId) -> Option<u32> {
        let v = self.vertex_of(h1);
        if self.vertex_of(h2) != v {
            return None;
        }
        if h1 == h2 {
            return Some(0);
        }
        let p1 = self.pos_in_order(h1);
        let p2 = self.pos_in_order(h2);
        let cs = &self.corners[v.idx()];
        match self.kind(v) {
            VertexKind::Internal => {
                let r = self.order[v.idx()].len();
                let mut d = 0;
                let mut p = p1;
                while p != p2 {
                    d += cs[p];
                    p = (p + 1) % r;
                }
                Some(d)
            }
            VertexKind::Boundary => {
                if p1 > p2 {
                    None
                } else {
                    Some(cs[p1..p2].iter().sum())
                }
            }
        }
    }

    /// Checks every S-graph axiom and reports all violations.
    ///
    /// Never panics; an empty report means the graph is valid.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let nh = self.n_halfedges();
        let nv = self.n_vertices();
        if self.sigma.len() != nh {
            rep.violations
                .push(format!("sigma has {} entries, expected {nh}", self.sigma.len()));
            return rep;
        }
        if self.order.len() != nv || self.corners.len() != nv {
            rep.violations.push(format!(
                "order/corners have {}/{} entries, expected {nv}",
                self.order.len(),
                self.corners.len()
            ));
            return rep;
        }
        for h in 0..nh {
            let t = self.tau[h] as usize;
            if t >= nh {
                rep.violations
                    .push(format!("tau(h{h}) = h{t} out of range"));
            } else if self.tau[t] as usize != h {
                rep.violations
                    .push(format!("tau is not an involution at h{h}"));
            }
            if self.sigma[h] as usize >= nv {
                rep.violations
                    .push(format!("sigma(h{h}) = v{} out of range", self.sigma[h]));
            }
        }
        if !rep.violations.is_empty() {
            return rep;
        }
        // Each halfedge appears exactly once in its vertex's order and
        // nowhere else.
        let mut seen = vec![0u32; nh];
        for v in 0..nv {
            for &h in &self.order[v] {
                let h = h as usize;
                if h >= nh {
                    rep.violations
                        .push(format!("order at v{v} mentions unknown h{h}"));
                    return rep;
                }
                seen[h] += 1;
                if self.sigma[h] as usize != v {
                    rep.violations.push(format!(
                        "h{h} listed at v{v} but sigma(h{h}) = v{}",
                        self.sigma[h]
                    ));
                }
            }
        }
        for (h, &count) in seen.iter().enumerate() {
            if count != 1 {
                rep.violations.push(format!(
                    "h{h} appears {count} times across vertex orders, expected once"
                ));
            }
        }
        for v in 0..nv {
            let r = self.order[v].len();
            if r == 0 {
                rep.violations
                    .push(format!("v{v} has no incident halfedges"));
                continue;
            }
            let expect = match self.kinds[v] {
                VertexKind::Internal => r,
                VertexKind::Boundary => r - 1,
            };
            if self.corners[v].len() != expect {
                rep.violations.push(format!(
                    "v{v} has {} corner degrees, expected {expect}",
                    self.corners[v].len()
                ));
                continue;
            }
            for (k, &d) in self.corners[v].iter().enumerate() {
                if d == 0 {
                    rep.violations.push(format!(
                        "corner degree must be positive: corner {k} at v{v} is 0"
                    ));
                }
            }
            if self.kinds[v] == VertexKind::Internal {
                let deg: u32 = self.corners[v].iter().sum();
                if deg < 1 {
                    rep.violations
                        .push(format!("internal v{v} has degree {deg} < 1 (weight < -1)"));
                }
            }
        }
        rep
    }

    /// True iff the graph is connected (every halfedge reachable from every
    /// other via the involution and vertex orders, and every vertex carries
    /// a halfedge).
    pub fn is_connected(&self) -> bool {
        let nh = self.n_halfedges();
        if nh == 0 {
            return self.n_vertices() <= 1;
        }
        if self.order.iter().any(|o| o.is_empty()) {
            return false;
        }
        let mut seen = vec![false; nh];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(HalfedgeId(0));
        let mut count = 1;
        while let Some(h) = queue.pop_front() {
            let mut push = |x: HalfedgeId, seen: &mut Vec<bool>, queue: &mut VecDeque<HalfedgeId>| {
                if !seen[x.idx()] {
                    seen[x.idx()] = true;
                    count += 1;
                    queue.push_back(x);
                }
            };
            push(self.tau(h), &mut seen, &mut queue);
            if let Some(s) = self.succ(h) {
                push(s, &mut seen, &mut queue);
            }
            if let Some(p) = self.pred(h) {
                push(p, &mut seen, &mut queue);
            }
        }
        count == nh
    }

    /// Lexicographically minimal BFS code over all root halfedges.
    ///
    /// Two valid connected S-graphs have equal canonical forms iff they are
    /// isomorphic as graphs with orders and corner degrees (relabeling of
    /// vertex and halfedge ids). Ties between roots are broken by the
    /// deterministic traversal order (involution, successor, predecessor).
    pub fn canonical_form(&self) -> Result<Vec<u8>, GraphError> {
        let rep = self.validate();
        if !rep.is_valid() {
            return Err(GraphError::Invalid(rep));
        }
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let mut best: Option<Vec<u32>> = None;
        for root in self.halfedges() {
            let code = self.bfs_code(root);
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
        let code = best.unwrap_or_default();
        let mut bytes = Vec::with_capacity(code.len() * 4);
        for w in code {
            bytes.extend_from_slice(&w.to_be_bytes());
        }
        Ok(bytes)
    }

    /// BFS encoding rooted at `root`: for each halfedge in discovery order,
    /// emit `(kind, total-order position + 1 or 0, corner degree to
    /// successor or 0, label of tau, label of successor, label of
    /// predecessor)`, assigning labels on first sight.
    fn bfs_code(&self, root: HalfedgeId) -> Vec<u32> {
        const NONE: u32 = u32::MAX;
        let nh = self.n_halfedges();
        let mut label = vec![NONE; nh];
        let mut next_label = 0u32;
        let mut queue = VecDeque::new();
        let mut discover = |h: HalfedgeId, label: &mut Vec<u32>, queue: &mut VecDeque<HalfedgeId>| {
            if label[h.idx()] == NONE {
                label[h.idx()] = next_label;
                next_label += 1;
                queue.push_back(h);
            }
            label[h.idx()]
        };
        discover(root, &mut label, &mut queue);
        let mut code = Vec::with_capacity(nh * 6);
        while let Some(h) = queue.pop_front() {
            let v = self.vertex_of(h);
            let (kind, posinfo) = match self.kind(v) {
                VertexKind::Internal => (0, 0),
                VertexKind::Boundary => (1, self.pos_in_order(h) as u32 + 1),
            };
            let corner = self.corner_to_succ(h).unwrap_or(0);
            let t = discover(self.tau(h), &mut label, &mut queue);
            let s = match self.succ(h) {
                Some(s) => discover(s, &mut label, &mut queue),
                None => NONE,
            };
            let p = match self.pred(h) {
                Some(p) => discover(p, &mut label, &mut queue),
                None => NONE,
            };
            code.extend_from_slice(&[kind, posinfo, corner, t, s, p]);
        }
        code
    }
}

/// An S-graph together with one virtual external halfedge appended at the
/// end of every boundary vertex's total order.
///
/// The virtual halfedges are external (`tau`-fixed). The closing corner
/// degree from the previously-last halfedge to the virtual one is set to 1;
/// it carries no information (boundary vertices have infinite degree) and
/// is stripped again by [`ExtendedSGraph::strip_virtual`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtendedSGraph {
    /// The extended graph, including the virtual halfedges.
    pub graph: SGraph,
    /// The virtual halfedge appended at each boundary vertex, in vertex
    /// order.
    pub virtuals: Vec<HalfedgeId>,
}

impl ExtendedSGraph {
    /// Removes the virtual halfedges, recovering the original S-graph.
    pub fn strip_virtual(&self) -> SGraph {
        let g = &self.graph;
        let nh = g.n_halfedges() - self.virtuals.len();
        let mut kinds = g.kinds.clone();
        let tau = g.tau[..nh].to_vec();
        let sigma = g.sigma[..nh].to_vec();
        let mut order = Vec::with_capacity(g.n_vertices());
        let mut corners = Vec::with_capacity(g.n_vertices());
        for v in 0..g.n_vertices() {
            let mut o = g.order[v].clone();
            let mut c = g.corners[v].clone();
            if kinds[v] == VertexKind::Boundary && o.last().is_some_and(|&h| h as usize >= nh) {
                o.pop();
                c.pop();
            }
            order.push(o);
            corners.push(c);
        }
        kinds.truncate(g.n_vertices());
        SGraph {
            kinds,
            tau,
            sigma,
            order,
            corners,
        }
    }
}

impl SGraph {
    /// Appends one virtual external halfedge per boundary vertex, in final
    /// position of the total order.
    ///
    /// A graph without boundary vertices extends to itself.
    pub fn extend(&self) -> Result<ExtendedSGraph, GraphError> {
        let rep = self.validate();
        if !rep.is_valid() {
            return Err(GraphError::Invalid(rep));
        }
        let mut g = self.clone();
        let mut virtuals = Vec::new();
        for v in 0..g.n_vertices() {
            if g.kinds[v] == VertexKind::Boundary {
                let h = g.tau.len() as u32;
                g.tau.push(h);
                g.sigma.push(v as u32);
                g.order[v].push(h);
                g.corners[v].push(1);
                virtuals.push(HalfedgeId(h));
            }
        }
        Ok(ExtendedSGraph { graph: g, virtuals })
    }
}

/// An orientation of the edges of an S-graph.
///
/// Each edge carries a direction bit; the derived `ε(i) ∈ {0,1}` per
/// halfedge is 0 if the edge points away from `i`'s vertex and 1 if it
/// points towards it. For an internal edge `{h1 < h2}`, bit `false` means
/// the edge is directed from `h1`'s vertex to `h2`'s vertex (so
/// `ε(h1) = 0`, `ε(h2) = 1`); bit `true` is the reverse. For an external
/// edge the bit is `ε` of its single halfedge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeOrientation {
    /// Direction bits, aligned with [`SGraph::edges`].
    pub bits: Vec<bool>,
    /// Derived `ε` per halfedge id.
    pub eps: Vec<u8>,
}

impl EdgeOrientation {
    /// Builds the orientation (and derived `ε`) from direction bits aligned
    /// with `g.edges()`.
    pub fn from_bits(g: &SGraph, bits: Vec<bool>) -> EdgeOrientation {
        let mut eps = vec![0u8; g.n_halfedges()];
        for (e, &bit) in g.edges().iter().zip(&bits) {
            let (h1, h2) = g.edge_halfedges(*e);
            match h2 {
                Some(h2) => {
                    eps[h1.idx()] = bit as u8;
                    eps[h2.idx()] = 1 - bit as u8;
                }
                None => eps[h1.idx()] = bit as u8,
            }
        }
        EdgeOrientation { bits, eps }
    }

    /// `ε` of a halfedge: 0 = points away from its vertex, 1 = towards.
    pub fn epsilon(&self, h: HalfedgeId) -> u8 {
        self.eps[h.idx()]
    }
}

/// Witness that no orientation exists: a cycle of corner constraints with
/// odd total corner-degree parity. Each entry is a successive halfedge
/// pair `(i, i+1)` participating in the inconsistent cycle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NotOrientable {
    /// The corners of the inconsistent constraint cycle.
    pub witness: Vec<(HalfedgeId, HalfedgeId)>,
}

impl fmt::Display for NotOrientable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not orientable; inconsistent corner cycle:")?;
        for (a, b) in &self.witness {
            write!(f, " ({a},{b})")?;
        }
        Ok(())
    }
}

impl SGraph {
    /// Finds an orientation of the edges such that for successive halfedges
    /// `(i, i+1)` the parity of `d(i, i+1)` is even iff both point towards
    /// or both away from the vertex — or proves none exists by exhibiting
    /// an inconsistent constraint cycle.
    ///
    /// Equivalently: `d(i, i+1) ≡ ε(i) + ε(i+1) (mod 2)` at every corner.
    pub fn find_orientation(&self) -> Result<EdgeOrientation, NotOrientable> {
        // One GF(2) variable per edge (the direction bit). Each corner
        // (i, succ i) relates the bits of edge(i) and edge(succ i):
        //   eps(i) = bit_{edge(i)} xor base(i),
        // where base(i) = 0 if i is the canonical (smaller) halfedge of an
        // internal edge or an external halfedge, 1 otherwise. The corner
        // demands eps(i) xor eps(succ i) = d(i, succ i) mod 2.
        let edges = self.edges();
        let edge_index: BTreeMap<EdgeId, usize> =
            edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        let base = |h: HalfedgeId| -> u8 {
            if self.edge_of(h).0 == h {
                0
            } else {
                1
            }
        };
        // Constraints between edge-bit variables: (edge a, edge b, parity,
        // corner) meaning bit_a xor bit_b = parity.
        let mut cons: Vec<(usize, usize, u8, (HalfedgeId, HalfedgeId))> = Vec::new();
        for h in self.halfedges() {
            if let (Some(s), Some(d)) = (self.succ(h), self.corner_to_succ(h)) {
                let pa = edge_index[&self.edge_of(h)];
                let pb = edge_index[&self.edge_of(s)];
                let parity = ((d as u8) ^ base(h) ^ base(s)) & 1;
                cons.push((pa, pb, parity, (h, s)));
            }
        }
        // 2-color edge bits; adjacency with parities.
        let mut adj: Vec<Vec<(usize, u8, usize)>> = vec![Vec::new(); edges.len()];
        for (ci, &(a, b, p, _)) in cons.iter().enumerate() {
            adj[a].push((b, p, ci));
            adj[b].push((a, p, ci));
        }
        let mut bit: Vec<Option<bool>> = vec![None; edges.len()];
        // Parent constraint index used to reach each edge, for witnesses.
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; edges.len()];
        for start in 0..edges.len() {
            if bit[start].is_some() {
                continue;
            }
            bit[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(a) = queue.pop_front() {
                let ba = bit[a].unwrap();
                for &(b, p, ci) in &adj[a] {
                    let want = ba ^ (p == 1);
                    match bit[b] {
                        None => {
                            bit[b] = Some(want);
                            parent[b] = Some((a, ci));
                            queue.push_back(b);
                        }
                        Some(bb) if bb != want => {
                            // Odd cycle: path a -> start, path b -> start,
                            // plus the violated constraint.
                            let mut witness = vec![cons[ci].3];
                            for mut x in [a, b] {
                                while let Some((px, pci)) = parent[x] {
                                    witness.push(cons[pci].3);
                                    x = px;
                                }
                            }
                            return Err(NotOrientable { witness });
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let bits: Vec<bool> = bit.into_iter().map(|b| b.unwrap_or(false)).collect();
        Ok(EdgeOrientation::from_bits(self, bits))
    }
}

/// Surface invariants of the ribbon structure: vertex, edge and face counts
/// and the Euler characteristic of the closed-up surface.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SurfaceInvariants {
    /// Number of vertices.
    pub vertices: usize,
    /// Number of edges (`tau`-orbits).
    pub edges: usize,
    /// Lengths of the faces found by next-corner traversal.
    pub face_lengths: Vec<usize>,
    /// Euler characteristic `V - E + F`.
    pub euler: i64,
}

impl SGraph {
    /// Computes faces by the standard next-corner traversal on the ribbon
    /// structure (boundary total orders are closed up cyclically) and
    /// reports `χ = V − E + F`.
    pub fn surface_invariants(&self) -> SurfaceInvariants {
        let nh = self.n_halfedges();
        let next_wrap = |h: HalfedgeId| -> HalfedgeId {
            let v = self.vertex_of(h);
            let ord = &self.order[v.idx()];
            let p = self.pos_in_order(h);
            HalfedgeId(ord[(p + 1) % ord.len()])
        };
        let mut seen = vec![false; nh];
        let mut face_lengths = Vec::new();
        for h0 in self.halfedges() {
            if seen[h0.idx()] {
                continue;
            }
            let mut len = 0;
            let mut h = h0;
            loop {
                seen[h.idx()] = true;
                len += 1;
                h = next_wrap(self.tau(h));
                if h == h0 {
                    break;
                }
            }
            face_lengths.push(len);
        }
        let edges = self.edges().len();
        SurfaceInvariants {
            vertices: self.n_vertices(),
            edges,
            euler: self.n_vertices() as i64 - edges as i64 + face_lengths.len() as i64,
            face_lengths,
        }
    }
}
