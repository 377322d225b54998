//! Simple tilting, realized at three independently verifiable levels.
//!
//! * **Arcs** — [`tilt_forward_arcs`] tilts the collection of edge objects
//!   at one edge `e`: the object of `e` shifts by one, and every edge with
//!   a degree-1 intersection into `e` is replaced by the smoothing of that
//!   intersection. [`verify_tilt_equals_flip`] checks that the result is
//!   exactly the edge set of the forward flip at `e`: the smoothed-in
//!   crossings correspond one-to-one to the halfedges the flip expels, and
//!   each expelled halfedge lands next to the flipped edge with a corner
//!   of degree 1.
//! * **`K₀`** — [`k0_tilt_matrix`] records the induced base change on
//!   edge classes: `[e] ↦ −[e]` (the sign of a shift by one) and
//!   `[X] ↦ [X] + m·[e]` where `m` counts degree-1 intersections, doubled
//!   in the monogon case where the self-extensions of the edge object make
//!   the one-step approximation non-rigid. Forward and backward matrices
//!   at the same edge compose to the identity.
//! * **Modules** — a standalone implementation of simple tilting for
//!   finite-dimensional representations of a quiver with relations:
//!   [`ext1`] computes extension classes as cocycles modulo coboundaries,
//!   [`universal_extension`] realizes them as block-triangular modules, and
//!   [`module_tilt`] iterates universal extensions until the result has no
//!   further extensions by the tilted simple, recording the filtration
//!   tower of simple multiplicities along the way.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::ext::{intersections, rhom_edges, Crossing, GradedArc, Intersection, RgbScheme};
use crate::flip::{forward_flip, FlipDirection, FlipError, FlipRecord};
use crate::graph::{EdgeId, HalfedgeId, SGraph, VertexDegree};
use crate::scalar::{FieldSpec, Matrix, Scalar};

/// An error from the tilting layer.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TiltError {
    /// Underlying flip failure.
    Flip(FlipError),
    /// The arc-level tilt disagrees with the flip.
    Mismatch(String),
    /// Malformed quiver algebra or module data.
    BadData(String),
    /// The iterated approximation leaves the module category (dimension
    /// cap exceeded before the extensions vanish).
    NotRealizable,
}

impl fmt::Display for TiltError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TiltError::Flip(e) => write!(f, "{e}"),
            TiltError::Mismatch(s) => write!(f, "tilt/flip mismatch: {s}"),
            TiltError::BadData(s) => write!(f, "bad data: {s}"),
            TiltError::NotRealizable => {
                write!(f, "approximation not realizable in the module category")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for TiltError {}

impl From<FlipError> for TiltError {
    fn from(e: FlipError) -> TiltError {
        TiltError::Flip(e)
    }
}

/// One slot of a tilted collection: the arc replacing an edge object.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TiltedArc {
    /// The edge whose object this arc replaces.
    pub slot: EdgeId,
    /// The replacing graded arc.
    pub arc: GradedArc,
    /// Homological shift applied to the object (`1` for the tilted edge,
    /// `0` otherwise).
    pub shift: i64,
    /// The degree-1 intersections smoothed into the arc.
    pub smoothings: Vec<Intersection>,
}

/// A tilted simple-minded collection: one arc per edge slot.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimpleMindedCollection {
    /// The edge the collection was tilted at.
    pub edge: EdgeId,
    /// One tilted arc per edge of the graph, in `g.edges()` order.
    pub arcs: Vec<TiltedArc>,
}

/// The monogon data of an edge: `Some(h)` when exactly one endpoint is an
/// internal vertex of degree 1, where `h` is the edge's halfedge at that
/// vertex. The braid twist at such an edge squares, so every smoothing
/// wraps around the monogon and acquires multiplicity 2.
fn monogon_halfedge(g: &SGraph, e: EdgeId) -> Option<HalfedgeId> {
    let (p, q) = match g.edge_halfedges(e) {
        (p, Some(q)) => (p, q),
        (_, None) => return None,
    };
    let deg1 = |h: HalfedgeId| {
        g.vertex_degree(g.vertex_of(h)) == Ok(VertexDegree::Finite(1))
    };
    match (deg1(p), deg1(q)) {
        (true, false) => Some(p),
        (false, true) => Some(q),
        _ => None,
    }
}

/// Multiplicity of the tilted edge in each smoothed class: 2 when the edge
/// has a monogon endpoint (the one-step extension is again non-rigid and
/// the approximation tower has two layers), 1 otherwise.
pub fn wrap_multiplicity(g: &SGraph, e: EdgeId) -> usize {
    if monogon_halfedge(g, e).is_some() {
        2
    } else {
        1
    }
}

/// The degree-1 intersections from `x` into `e` (the classes that force a
/// smoothing under the forward tilt at `e`).
fn degree_one_intersections(g: &SGraph, x: EdgeId, e: EdgeId) -> Vec<Intersection> {
    intersections(g, x, e)
        .into_iter()
        .filter(|i| i.degree == 1)
        .collect()
}

/// Tilts the collection of edge objects forward at `e`.
///
/// The slot of `e` keeps its single-segment arc with a shift of 1. Every
/// other edge `x` with degree-1 intersections into `e` is replaced by the
/// arc smoothing all of them: one extra `e` segment per intersection, or
/// two (a wrap around the monogon endpoint) when `e` has a monogon
/// endpoint. Edges without degree-1 intersections are unchanged.
pub fn tilt_forward_arcs(g: &SGraph, scheme: &RgbScheme, e: EdgeId) -> SimpleMindedCollection {
    let _ = scheme; // Degree-1 counting is scheme independent; kept for symmetry.
    let wrap = wrap_multiplicity(g, e);
    let wrap_h = monogon_halfedge(g, e);
    let mut arcs = Vec::new();
    for x in g.edges() {
        if x == e {
            arcs.push(TiltedArc {
                slot: e,
                arc: GradedArc::from_edge(e),
                shift: 1,
                smoothings: Vec::new(),
            });
            continue;
        }
        let ints = degree_one_intersections(g, x, e);
        let mut edges = vec![x];
        let mut crossings = Vec::new();
        for i in &ints {
            crossings.push(Crossing {
                vertex: i.vertex,
                from: i.from,
                to: i.to,
                degree: i.degree,
            });
            edges.push(e);
            if wrap == 2 {
                // Wrap once around the monogon endpoint: a full corner of
                // degree 1 from the monogon halfedge back to itself.
                let h = wrap_h.expect("wrap multiplicity 2 implies a monogon endpoint");
                crossings.push(Crossing {
                    vertex: g.vertex_of(h),
                    from: h,
                    to: h,
                    degree: 1,
                });
                edges.push(e);
            }
        }
        let mut gradings = vec![0i64];
        for c in &crossings {
            let last = *gradings.last().unwrap();
            gradings.push(last + c.degree - 1);
        }
        arcs.push(TiltedArc {
            slot: x,
            arc: GradedArc {
                edges,
                crossings,
                gradings,
            },
            shift: 0,
            smoothings: ints,
        });
    }
    SimpleMindedCollection { edge: e, arcs }
}

/// Checks that the forward tilt at `e` coincides with the forward flip.
///
/// The comparison is exact on the flip's bookkeeping:
///
/// * the halfedges whose slots are smoothed are precisely the ones the
///   flip expels (in the monogon case, precisely the expelled halfedges
///   at corner distance 1; the remaining expelled halfedges must carry no
///   degree-1 intersection, so their objects are untouched);
/// * in the usual case every smoothed halfedge `a` lands at the other
///   endpoint of `e`, immediately after `e`'s halfedge there with a
///   corner of degree 1;
/// * in the monogon case every smoothed halfedge stays at its vertex and
///   its arc wraps (two `e` segments per smoothing);
/// * every smoothed class satisfies `[arc] = [x] + m·[e]` with `m` the
///   wrap multiplicity times the number of smoothings, matching the
///   column of [`k0_tilt_matrix`] up to the sign of the shifted slot.
///
/// Returns the flip record on success.
pub fn verify_tilt_equals_flip(
    g: &SGraph,
    scheme: &RgbScheme,
    e: EdgeId,
) -> Result<FlipRecord, TiltError> {
    let rec = forward_flip(g, e)?;
    let smc = tilt_forward_arcs(g, scheme, e);
    let out = &rec.output;
    let monogon = monogon_halfedge(g, e);
    let wrap = wrap_multiplicity(g, e);
    let err = |s: String| Err(TiltError::Mismatch(s));

    // The smoothed halfedges, across all slots.
    let mut sources: Vec<HalfedgeId> = smc
        .arcs
        .iter()
        .flat_map(|t| t.smoothings.iter().map(|i| i.from))
        .collect();
    sources.sort();
    let mut moved = rec.moved.clone();
    moved.sort();
    moved.dedup();

    if monogon.is_none() {
        if sources != moved {
            return err(format!(
                "flip at {e} expels {moved:?} but the tilt smooths {sources:?}"
            ));
        }
    } else {
        // The flip expels the occupants of both swept positions; only the
        // distance-1 ones change as objects.
        for &a in &sources {
            if !moved.contains(&a) {
                return err(format!("smoothed halfedge {a} was not expelled at {e}"));
            }
        }
        for &a in &moved {
            if !sources.contains(&a)
                && !degree_one_intersections(g, g.edge_of(a), e).is_empty()
            {
                return err(format!(
                    "expelled halfedge {a} has a degree-1 crossing but no smoothing"
                ));
            }
        }
    }

    for t in &smc.arcs {
        // Class additivity against the matrix column.
        let expected_m = (wrap * t.smoothings.len()) as i64;
        let class = t.arc.k0_class(g);
        let edges = g.edges();
        for (idx, &x) in edges.iter().enumerate() {
            let want = i64::from(x == t.slot) + expected_m * i64::from(x == e && t.slot != e);
            if class[idx] != want {
                return err(format!(
                    "slot {} has class {class:?}, expected multiplicity {want} at {x}",
                    t.slot
                ));
            }
        }
        for i in &t.smoothings {
            let a = i.from;
            let b = i.to;
            match monogon {
                None => {
                    let dest = g.tau(b);
                    if out.vertex_of(a) != g.vertex_of(dest) {
                        return err(format!(
                            "{a} should land at the endpoint of {dest} after flipping {e}"
                        ));
                    }
                    if out.succ(dest) != Some(a) || out.corner_to_succ(dest) != Some(1) {
                        return err(format!(
                            "{a} should follow {dest} with a corner of degree 1"
                        ));
                    }
                }
                Some(_) => {
                    if out.vertex_of(a) != g.vertex_of(a) {
                        return err(format!("monogon flip at {e} should not move {a} away"));
                    }
                    if t.arc.segments() != 1 + 2 * t.smoothings.len() {
                        return err(format!(
                            "monogon smoothing of {} should wrap ({} segments found)",
                            t.slot,
                            t.arc.segments()
                        ));
                    }
                }
            }
        }
    }
    Ok(rec)
}

/// The base change on edge classes induced by tilting at `e`.
///
/// Rows and columns are indexed by `g.edges()`. The column of `e` is
/// `−[e]` (a shift by one negates the class); the column of any other
/// edge `x` is `[x] + m·[e]` with `m` the number of smoothed-in
/// crossings times the wrap multiplicity of `e`. Forward, the smoothed
/// crossings are the degree-1 intersections from `x` into `e` (the
/// degree-1 part of the graded morphism space). Backward, they are the
/// intersections from `e` into `x` of degree 1 — except at a monogon
/// edge, whose flip rotates by *two* units: seen from the flipped graph,
/// the edges whose objects changed sit at corner distance 2 from `e`
/// (they landed on the position the flip vacated), so the backward count
/// uses degree-2 crossings there — degree-1 when the rotation vertex has
/// total degree 2, where the double rotation closes up into a full turn. The forward matrix at `e` and the
/// backward matrix at `e` computed on the flipped graph are mutually
/// inverse, and each matrix is an involution.
pub fn k0_tilt_matrix(
    g: &SGraph,
    scheme: &RgbScheme,
    e: EdgeId,
    dir: FlipDirection,
) -> Vec<Vec<i64>> {
    let edges = g.edges();
    let ie = edges.iter().position(|&x| x == e).expect("edge of g");
    let wrap = wrap_multiplicity(g, e) as i64;
    let mut m = vec![vec![0i64; edges.len()]; edges.len()];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m[ie][ie] = -1;
    for (ix, &x) in edges.iter().enumerate() {
        if x == e {
            continue;
        }
        let count = match (dir, wrap) {
            (FlipDirection::Forward, _) => rhom_edges(g, scheme, x, e).dim(1) as i64,
            (FlipDirection::Backward, 1) => rhom_edges(g, scheme, e, x).dim(1) as i64,
            (FlipDirection::Backward, _) => {
                // The double rotation lands the changed halfedge two corner
                // units behind the flipped edge, except when the rotation
                // vertex has total degree 2: there the double rotation is a
                // full turn and the changed halfedge sits one unit behind.
                let mono = monogon_halfedge(g, e).expect("wrap 2 means monogon");
                let (p, q) = g.edge_halfedges(e);
                let other = if p == mono { q.expect("monogon has a partner") } else { p };
                let v = g.vertex_of(other);
                let target = match g.vertex_degree(v) {
                    Ok(VertexDegree::Finite(2)) => 1,
                    _ => 2,
                };
                intersections(g, e, x)
                    .iter()
                    .filter(|i| i.degree == target)
                    .count() as i64
            }
        };
        m[ie][ix] = wrap * count;
    }
    m
}

// ---------------------------------------------------------------------------
// Finite-dimensional modules over a quiver with relations.
// ---------------------------------------------------------------------------

/// A finite quiver with scalar relations, presenting a finite-dimensional
/// algebra.
///
/// A relation is a linear combination of paths; a path is a list of arrow
/// indices in *application order* (the first arrow acts first), so a path
/// `[a, b]` evaluates on a module to the matrix product `M_b · M_a`.
/// Every path of a relation must run between the same pair of vertices.
#[derive(Clone, PartialEq, Debug)]
pub struct QuiverAlgebra {
    /// Coefficient field.
    pub field: FieldSpec,
    /// Number of vertices.
    pub n_vertices: usize,
    /// Arrows as `(source, target)` vertex pairs.
    pub arrows: Vec<(usize, usize)>,
    /// Relations: each a sum of `(coefficient, path)` terms.
    pub relations: Vec<Vec<(Scalar, Vec<usize>)>>,
}

impl QuiverAlgebra {
    /// Validates arrow indices, path composability, and that all terms of
    /// each relation are parallel paths.
    pub fn check(&self) -> Result<(), TiltError> {
        let bad = |s: String| Err(TiltError::BadData(s));
        for &(u, w) in &self.arrows {
            if u >= self.n_vertices || w >= self.n_vertices {
                return bad(format!("arrow ({u}, {w}) out of range"));
            }
        }
        for (ri, rel) in self.relations.iter().enumerate() {
            let mut ends: Option<(usize, usize)> = None;
            for (_, path) in rel {
                if path.is_empty() {
                    return bad(format!("relation {ri} contains an empty path"));
                }
                for pair in path.windows(2) {
                    let (a, b) = (pair[0], pair[1]);
                    if a >= self.arrows.len() || b >= self.arrows.len() {
                        return bad(format!("relation {ri} uses an unknown arrow"));
                    }
                    if self.arrows[a].1 != self.arrows[b].0 {
                        return bad(format!("relation {ri} has a non-composable path"));
                    }
                }
                let last = *path.last().unwrap();
                if last >= self.arrows.len() {
                    return bad(format!("relation {ri} uses an unknown arrow"));
                }
                let here = (self.arrows[path[0]].0, self.arrows[last].1);
                match ends {
                    None => ends = Some(here),
                    Some(prev) if prev != here => {
                        return bad(format!("relation {ri} mixes non-parallel paths"));
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    /// Source and target vertices of a relation (all terms are parallel).
    fn relation_ends(&self, rel: &[(Scalar, Vec<usize>)]) -> Option<(usize, usize)> {
        let (_, path) = rel.first()?;
        Some((self.arrows[path[0]].0, self.arrows[*path.last().unwrap()].1))
    }
}

/// A finite-dimensional representation: one vector space per vertex and
/// one matrix per arrow (rows indexed by the target space).
#[derive(Clone, PartialEq, Debug)]
pub struct FinModule {
    /// Dimension per vertex.
    pub dims: Vec<usize>,
    /// One matrix per arrow, of shape `dims[target] × dims[source]`.
    pub mats: Vec<Matrix>,
}

impl FinModule {
    /// Total dimension.
    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// The simple module at vertex `v`.
pub fn simple(alg: &QuiverAlgebra, v: usize) -> FinModule {
    let dims: Vec<usize> = (0..alg.n_vertices).map(|u| usize::from(u == v)).collect();
    let mats = alg
        .arrows
        .iter()
        .map(|&(u, w)| Matrix::zero(alg.field, dims[w], dims[u]))
        .collect();
    FinModule { dims, mats }
}

/// Evaluates a path on a module: the product of its arrow matrices in
/// application order.
fn eval_path(alg: &QuiverAlgebra, m: &FinModule, path: &[usize]) -> Matrix {
    let src = alg.arrows[path[0]].0;
    let mut acc = Matrix::identity(alg.field, m.dims[src]);
    for &a in path {
        acc = m.mats[a].mul(&acc, alg.field);
    }
    acc
}

/// Evaluates a relation on a module.
fn eval_relation(alg: &QuiverAlgebra, m: &FinModule, rel: &[(Scalar, Vec<usize>)]) -> Matrix {
    let (src, tgt) = alg.relation_ends(rel).expect("nonempty relation");
    let mut acc = Matrix::zero(alg.field, m.dims[tgt], m.dims[src]);
    for (coeff, path) in rel {
        let term = eval_path(alg, m, path);
        for r in 0..acc.rows {
            for c in 0..acc.cols {
                let v = acc.at(r, c).add(&coeff.mul(term.at(r, c)));
                acc.set(r, c, v);
            }
        }
    }
    acc
}

/// Checks matrix shapes and that every relation annihilates the module.
pub fn check_module(alg: &QuiverAlgebra, m: &FinModule) -> Result<(), TiltError> {
    if m.dims.len() != alg.n_vertices || m.mats.len() != alg.arrows.len() {
        return Err(TiltError::BadData(format!(
            "module shape mismatch: {} vertices, {} arrows",
            m.dims.len(),
            m.mats.len()
        )));
    }
    for (a, &(u, w)) in alg.arrows.iter().enumerate() {
        if m.mats[a].rows != m.dims[w] || m.mats[a].cols != m.dims[u] {
            return Err(TiltError::BadData(format!("matrix {a} has the wrong shape")));
        }
    }
    for (ri, rel) in alg.relations.iter().enumerate() {
        if rel.is_empty() {
            continue;
        }
        let val = eval_relation(alg, m, rel);
        if val.data.iter().any(|s| !s.is_zero()) {
            return Err(TiltError::BadData(format!(
                "relation {ri} does not annihilate the module"
            )));
        }
    }
    Ok(())
}

/// Per-arrow (or per-vertex) block layout of a flattened variable vector.
struct Layout {
    offsets: Vec<usize>,
    shapes: Vec<(usize, usize)>,
    total: usize,
}

impl Layout {
    fn new(shapes: Vec<(usize, usize)>) -> Layout {
        let mut offsets = Vec::with_capacity(shapes.len());
        let mut total = 0;
        for &(r, c) in &shapes {
            offsets.push(total);
            total += r * c;
        }
        Layout {
            offsets,
            shapes,
            total,
        }
    }

    fn index(&self, block: usize, r: usize, c: usize) -> usize {
        self.offsets[block] + r * self.shapes[block].1 + c
    }
}

/// Layout of morphism variables `ψ_v : M_v → N_v`, one block per vertex.
fn psi_layout(alg: &QuiverAlgebra, m: &FinModule, n: &FinModule) -> Layout {
    Layout::new((0..alg.n_vertices).map(|v| (n.dims[v], m.dims[v])).collect())
}

/// Layout of extension variables `φ_a : M_{src(a)} → N_{tgt(a)}`, one
/// block per arrow.
fn phi_layout(alg: &QuiverAlgebra, m: &FinModule, n: &FinModule) -> Layout {
    Layout::new(
        alg.arrows
            .iter()
            .map(|&(u, w)| (n.dims[w], m.dims[u]))
            .collect(),
    )
}

/// The dimension of `Hom(M, N)`: solutions of the intertwining equations
/// `ψ_{tgt} · M_a = N_a · ψ_{src}` for every arrow `a`.
pub fn hom_dim(alg: &QuiverAlgebra, m: &FinModule, n: &FinModule) -> usize {
    let layout = psi_layout(alg, m, n);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (a, &(u, w)) in alg.arrows.iter().enumerate() {
        // For each entry (r over N_w, c over M_u):
        //   Σ_j ψ_w[r, j]·M_a[j, c] − Σ_i N_a[r, i]·ψ_u[i, c] = 0.
        for r in 0..n.dims[w] {
            for c in 0..m.dims[u] {
                let mut row = vec![alg.field.zero(); layout.total];
                for j in 0..m.dims[w] {
                    let idx = layout.index(w, r, j);
                    row[idx] = row[idx].add(m.mats[a].at(j, c));
                }
                for i in 0..n.dims[u] {
                    let idx = layout.index(u, i, c);
                    row[idx] = row[idx].sub(n.mats[a].at(r, i));
                }
                if row.iter().any(|s| !s.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    layout.total - rows_rank(alg.field, layout.total, &rows)
}

/// Rank of a list of row vectors.
fn rows_rank(field: FieldSpec, width: usize, rows: &[Vec<Scalar>]) -> usize {
    let mut m = Matrix::zero(field, rows.len(), width);
    for (r, row) in rows.iter().enumerate() {
        for (c, s) in row.iter().enumerate() {
            m.set(r, c, s.clone());
        }
    }
    m.rank()
}

/// Rank of a list of column vectors.
fn cols_rank(field: FieldSpec, height: usize, cols: &[Vec<Scalar>]) -> usize {
    let mut m = Matrix::zero(field, height, cols.len());
    for (c, col) in cols.iter().enumerate() {
        for (r, s) in col.iter().enumerate() {
            m.set(r, c, s.clone());
        }
    }
    m.rank()
}

/// Cocycle constraints on extension variables: for every relation, the
/// off-diagonal block of the relation evaluated on the extension
/// `[[N, φ], [0, M]]` must vanish. For a path `p` and position `i`, the
/// block contributes `N_{suffix} · φ_{p_i} · M_{prefix}`.
fn cocycle_constraints(
    alg: &QuiverAlgebra,
    m: &FinModule,
    n: &FinModule,
    layout: &Layout,
) -> Vec<Vec<Scalar>> {
    let mut rows = Vec::new();
    for rel in &alg.relations {
        let Some((src, tgt)) = alg.relation_ends(rel) else {
            continue;
        };
        // One constraint per entry of the off-diagonal block.
        let block_rows = n.dims[tgt];
        let block_cols = m.dims[src];
        let mut coeff_rows = vec![vec![alg.field.zero(); layout.total]; block_rows * block_cols];
        for (coeff, path) in rel {
            // Prefixes on M (before position i) and suffixes on N (after).
            let mut prefixes = Vec::with_capacity(path.len());
            let mut acc = Matrix::identity(alg.field, m.dims[src]);
            for &a in path {
                prefixes.push(acc.clone());
                acc = m.mats[a].mul(&acc, alg.field);
            }
            let mut suffixes = vec![Matrix::identity(alg.field, n.dims[tgt]); path.len()];
            let mut acc = Matrix::identity(alg.field, n.dims[tgt]);
            for (i, &a) in path.iter().enumerate().rev() {
                suffixes[i] = acc.clone();
                acc = acc.mul(&n.mats[a], alg.field);
            }
            for (i, &a) in path.iter().enumerate() {
                let pre = &prefixes[i];
                let suf = &suffixes[i];
                let (pr, pc) = (n.dims[alg.arrows[a].1], m.dims[alg.arrows[a].0]);
                for r in 0..block_rows {
                    for c in 0..block_cols {
                        let row = &mut coeff_rows[r * block_cols + c];
                        for alpha in 0..pr {
                            if suf.at(r, alpha).is_zero() {
                                continue;
                            }
                            for beta in 0..pc {
                                let k = coeff.mul(suf.at(r, alpha)).mul(pre.at(beta, c));
                                if !k.is_zero() {
                                    let idx = layout.index(a, alpha, beta);
                                    row[idx] = row[idx].add(&k);
                                }
                            }
                        }
                    }
                }
            }
        }
        rows.extend(coeff_rows.into_iter().filter(|r| r.iter().any(|s| !s.is_zero())));
    }
    rows
}

/// Coboundary columns: the image of `ψ ↦ (N_a·ψ_{src} − ψ_{tgt}·M_a)_a`
/// inside the extension-variable space.
fn coboundary_columns(
    alg: &QuiverAlgebra,
    m: &FinModule,
    n: &FinModule,
    layout: &Layout,
) -> Vec<Vec<Scalar>> {
    let mut cols = Vec::new();
    for v in 0..alg.n_vertices {
        for i in 0..n.dims[v] {
            for j in 0..m.dims[v] {
                let mut col = vec![alg.field.zero(); layout.total];
                for (a, &(u, w)) in alg.arrows.iter().enumerate() {
                    if u == v {
                        // (N_a · e_{ij})[r, j] = N_a[r, i].
                        for r in 0..n.dims[w] {
                            let idx = layout.index(a, r, j);
                            col[idx] = col[idx].add(n.mats[a].at(r, i));
                        }
                    }
                    if w == v {
                        // (e_{ij} · M_a)[i, c] = M_a[j, c].
                        for c in 0..m.dims[u] {
                            let idx = layout.index(a, i, c);
                            col[idx] = col[idx].sub(m.mats[a].at(j, c));
                        }
                    }
                }
                if col.iter().any(|s| !s.is_zero()) {
                    cols.push(col);
                }
            }
        }
    }
    cols
}

/// A basis of `Ext¹(M, N)` as extension classes: for each class, one
/// matrix per arrow of shape `N_{tgt} × M_{src}`, representing the
/// off-diagonal block of the extension `[[N, φ], [0, M]]`.
///
/// Classes are cocycles (the relations annihilate the extension) modulo
/// coboundaries (split extensions); representatives are chosen from a
/// nullspace basis, keeping those independent modulo the coboundaries.
pub fn ext1(alg: &QuiverAlgebra, m: &FinModule, n: &FinModule) -> Vec<Vec<Matrix>> {
    let layout = phi_layout(alg, m, n);
    let constraints = cocycle_constraints(alg, m, n, &layout);
    let mut cmat = Matrix::zero(alg.field, constraints.len(), layout.total);
    for (r, row) in constraints.iter().enumerate() {
        for (c, s) in row.iter().enumerate() {
            cmat.set(r, c, s.clone());
        }
    }
    let cocycles = cmat.nullspace(alg.field);
    let mut chosen = coboundary_columns(alg, m, n, &layout);
    let mut rank = cols_rank(alg.field, layout.total, &chosen);
    let mut classes = Vec::new();
    for z in cocycles {
        chosen.push(z.clone());
        let next = cols_rank(alg.field, layout.total, &chosen);
        if next > rank {
            rank = next;
            classes.push(z);
        } else {
            chosen.pop();
        }
    }
    classes
        .into_iter()
        .map(|vecz| {
            alg.arrows
                .iter()
                .enumerate()
                .map(|(a, &(u, w))| {
                    let mut mat = Matrix::zero(alg.field, n.dims[w], m.dims[u]);
                    for r in 0..n.dims[w] {
                        for c in 0..m.dims[u] {
                            mat.set(r, c, vecz[layout.index(a, r, c)].clone());
                        }
                    }
                    mat
                })
                .collect()
        })
        .collect()
}

/// The dimension of `Ext¹(M, N)`.
pub fn ext1_dim(alg: &QuiverAlgebra, m: &FinModule, n: &FinModule) -> usize {
    ext1(alg, m, n).len()
}

/// The universal extension `0 → S^r → E → M → 0` of `M` by the simple at
/// `s`, along the given classes of `Ext¹(M, S)`.
///
/// The simple block comes first; each arrow acts by
/// `[[0, Φ_a], [0, M_a]]`, where `Φ_a` stacks the class matrices.
pub fn universal_extension(
    alg: &QuiverAlgebra,
    s: usize,
    m: &FinModule,
    classes: &[Vec<Matrix>],
) -> FinModule {
    let r = classes.len();
    let dims: Vec<usize> = (0..alg.n_vertices)
        .map(|v| m.dims[v] + if v == s { r } else { 0 })
        .collect();
    let mats = alg
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(u, w))| {
            let s_rows = if w == s { r } else { 0 };
            let s_cols = if u == s { r } else { 0 };
            let mut mat = Matrix::zero(alg.field, dims[w], dims[u]);
            // Top right: the stacked classes M_src → S^r.
            if w == s {
                for (i, class) in classes.iter().enumerate() {
                    for c in 0..m.dims[u] {
                        mat.set(i, s_cols + c, class[a].at(0, c).clone());
                    }
                }
            }
            // Bottom right: M's action.
            for rr in 0..m.dims[w] {
                for c in 0..m.dims[u] {
                    mat.set(s_rows + rr, s_cols + c, m.mats[a].at(rr, c).clone());
                }
            }
            mat
        })
        .collect();
    FinModule { dims, mats }
}

/// The co-universal extension `0 → M → E → S^r → 0` of the simple at `s`
/// by `M`, along the given classes of `Ext¹(S, M)`.
///
/// The `M` block comes first; each arrow acts by `[[M_a, Φ_a], [0, 0]]`,
/// where `Φ_a` lines up the class matrices as columns.
pub fn co_universal_extension(
    alg: &QuiverAlgebra,
    s: usize,
    m: &FinModule,
    classes: &[Vec<Matrix>],
) -> FinModule {
    let r = classes.len();
    let dims: Vec<usize> = (0..alg.n_vertices)
        .map(|v| m.dims[v] + if v == s { r } else { 0 })
        .collect();
    let mats = alg
        .arrows
        .iter()
        .enumerate()
        .map(|(a, &(u, w))| {
            let mut mat = Matrix::zero(alg.field, dims[w], dims[u]);
            for rr in 0..m.dims[w] {
                for c in 0..m.dims[u] {
                    mat.set(rr, c, m.mats[a].at(rr, c).clone());
                }
            }
            if u == s {
                for (i, class) in classes.iter().enumerate() {
                    for rr in 0..m.dims[w] {
                        mat.set(rr, m.dims[u] + i, class[a].at(rr, 0).clone());
                    }
                }
            }
            mat
        })
        .collect();
    FinModule { dims, mats }
}

/// Multiplicity of the simple at `s` in the top of `M` (the maximal
/// semisimple quotient supported at `s`): the codimension at `s` of the
/// span of all incoming arrow images.
pub fn top_s_multiplicity(alg: &QuiverAlgebra, m: &FinModule, s: usize) -> usize {
    let cols: Vec<Vec<Scalar>> = alg
        .arrows
        .iter()
        .enumerate()
        .filter(|&(_, &(_, w))| w == s)
        .flat_map(|(a, &(u, _))| {
            (0..m.dims[u])
                .map(|c| (0..m.dims[s]).map(|r| m.mats[a].at(r, c).clone()).collect())
                .collect::<Vec<Vec<Scalar>>>()
        })
        .collect();
    m.dims[s] - cols_rank(alg.field, m.dims[s], &cols)
}

/// Multiplicity of the simple at `s` in the socle-like sub of `M` (the
/// maximal semisimple submodule supported at `s`): the dimension at `s`
/// of the joint kernel of all outgoing arrows.
pub fn sub_s_multiplicity(alg: &QuiverAlgebra, m: &FinModule, s: usize) -> usize {
    let rows: Vec<Vec<Scalar>> = alg
        .arrows
        .iter()
        .enumerate()
        .filter(|&(_, &(u, _))| u == s)
        .flat_map(|(a, &(_, w))| {
            (0..m.dims[w])
                .map(|r| (0..m.dims[s]).map(|c| m.mats[a].at(r, c).clone()).collect())
                .collect::<Vec<Vec<Scalar>>>()
        })
        .collect();
    m.dims[s] - rows_rank(alg.field, m.dims[s], &rows)
}

/// The result of a module-level simple tilt: the approximating module and
/// the tower of simple multiplicities added at each step.
#[derive(Clone, PartialEq, Debug)]
pub struct ModuleTilt {
    /// The iterated universal extension.
    pub module: FinModule,
    /// Number of copies of the tilted simple added per step (empty when
    /// the starting simple was already rigid against `S`).
    pub tower: Vec<usize>,
}

/// Cap on the total dimension of the iterated approximation.
const TILT_DIM_CAP: usize = 64;

/// Simple tilting at the level of modules: starting from the simple at
/// `x`, repeatedly forms the universal extension by the simple at `s`
/// (below for a forward tilt, above for a backward tilt) until the
/// extensions vanish.
///
/// For a rigid pair one step suffices; a non-rigid pair produces a tower
/// (each step may open new extensions). If the total dimension exceeds an
/// internal cap before the tower closes, the approximation does not exist
/// in the module category and [`TiltError::NotRealizable`] is returned.
pub fn module_tilt(
    alg: &QuiverAlgebra,
    s: usize,
    x: usize,
    dir: FlipDirection,
) -> Result<ModuleTilt, TiltError> {
    alg.check()?;
    if s >= alg.n_vertices || x >= alg.n_vertices {
        return Err(TiltError::BadData(format!("vertex out of range: {s}, {x}")));
    }
    let simple_s = simple(alg, s);
    let mut t = simple(alg, x);
    let mut tower = Vec::new();
    loop {
        let classes = match dir {
            FlipDirection::Forward => ext1(alg, &t, &simple_s),
            FlipDirection::Backward => ext1(alg, &simple_s, &t),
        };
        if classes.is_empty() {
            return Ok(ModuleTilt { module: t, tower });
        }
        tower.push(classes.len());
        t = match dir {
            FlipDirection::Forward => universal_extension(alg, s, &t, &classes),
            FlipDirection::Backward => co_universal_extension(alg, s, &t, &classes),
        };
        debug_assert!(check_module(alg, &t).is_ok());
        if t.total() > TILT_DIM_CAP {
            return Err(TiltError::NotRealizable);
        }
    }
}
