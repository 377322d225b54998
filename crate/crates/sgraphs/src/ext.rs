//! Graded morphism spaces between edge objects, computed from
//! intersection data and local endomorphism rings.
//!
//! Each edge of an S-graph carries an object whose derived endomorphisms
//! are controlled by two families of graded local rings: a ring `End_L`
//! shared by all edges, and a ring `End_v` per internal vertex. For the
//! ring scheme matching [`crate::algebra::RgbAlgebra`], `End_L` is
//! sphere-like (`k ⊕ k[1−n]`) and `End_v` is a truncated polynomial ring
//! on a generator of degree `deg(v)` with `n/deg(v)` powers.
//!
//! * [`intersections`] enumerates the directed crossings of two edges:
//!   one singular intersection per ordered pair of halfedges meeting at an
//!   internal vertex (with degree the corner distance), and one boundary
//!   intersection per pair at a boundary vertex in increasing order.
//! * [`rhom_edges`] sums shifted local rings over the intersections.
//! * [`end_edge`] computes the endomorphisms of a single edge object as a
//!   homotopy fiber product of the endpoint rings over `End_L`, plus
//!   shifted self-intersection terms for loops.
//! * [`smooth`] resolves one intersection into a longer graded arc whose
//!   class in the Grothendieck group is the sum of the two edge classes.
//!
//! An integration test cross-validates every graded dimension produced
//! here against the cohomology of the corresponding idempotent slice of
//! the algebra; that comparison is the contract fixing the remaining
//! conventions (the degreewise structure maps of the fiber product and
//! the shift convention `[−d]`, which moves a class from degree `k` to
//! degree `k + d`).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{EdgeId, HalfedgeId, SGraph, VertexId};

/// A finitely supported collection of nonnegative dimensions per degree.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct GradedVectorSpace {
    dims: BTreeMap<i64, usize>,
}

impl GradedVectorSpace {
    /// The zero space.
    pub fn zero() -> GradedVectorSpace {
        GradedVectorSpace::default()
    }

    /// A one-dimensional space in a single degree.
    pub fn line(degree: i64) -> GradedVectorSpace {
        let mut s = GradedVectorSpace::zero();
        s.add(degree, 1);
        s
    }

    /// Adds `dim` to the dimension in `degree`.
    pub fn add(&mut self, degree: i64, dim: usize) {
        if dim > 0 {
            *self.dims.entry(degree).or_insert(0) += dim;
        }
    }

    /// The dimension in `degree`.
    pub fn dim(&self, degree: i64) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    /// Total dimension.
    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    /// True when every dimension vanishes.
    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// The shift `[−d]`: every class moves from degree `k` to `k + d`.
    pub fn shifted(&self, d: i64) -> GradedVectorSpace {
        GradedVectorSpace {
            dims: self.dims.iter().map(|(&k, &v)| (k + d, v)).collect(),
        }
    }

    /// Direct sum.
    pub fn sum(&self, other: &GradedVectorSpace) -> GradedVectorSpace {
        let mut out = self.clone();
        for (&k, &v) in &other.dims {
            out.add(k, v);
        }
        out
    }

    /// Iterates over `(degree, dimension)` pairs with nonzero dimension.
    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.dims.iter().map(|(&k, &v)| (k, v))
    }
}

impl fmt::Display for GradedVectorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dims.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if v == 1 {
                write!(f, "k[{}]", -k)?;
            } else {
                write!(f, "k^{v}[{}]", -k)?;
            }
        }
        Ok(())
    }
}

/// A graded local endomorphism ring, tagged by its shape.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GradedLocalRing {
    /// `k ⊕ k[1−n]`: classes in degrees `0` and `n − 1`.
    SphereLike(u32),
    /// `k[x]/(x^{n/degree})` with `|x| = degree`: classes in degrees
    /// `0, degree, …, n − degree`.
    TruncatedPoly {
        /// The ambient degree `n` (the generator has `n / degree` powers).
        n: u32,
        /// Degree of the polynomial generator (`degree | n`).
        degree: u32,
    },
    /// `⊗_{i ∈ Λ} (k ⊕ k[1−i])`: classes in degrees given by subset sums
    /// of `{i − 1 : i ∈ Λ}`.
    TensorOfSpheres(Vec<u32>),
}

impl GradedLocalRing {
    /// The underlying graded vector space.
    pub fn space(&self) -> GradedVectorSpace {
        match self {
            GradedLocalRing::SphereLike(n) => {
                let mut s = GradedVectorSpace::line(0);
                s.add(*n as i64 - 1, 1);
                s
            }
            GradedLocalRing::TruncatedPoly { n, degree } => {
                let mut s = GradedVectorSpace::zero();
                let mut d = 0i64;
                while d < *n as i64 {
                    s.add(d, 1);
                    d += *degree as i64;
                }
                s
            }
            GradedLocalRing::TensorOfSpheres(spheres) => {
                let mut s = GradedVectorSpace::line(0);
                for &i in spheres {
                    let factor = GradedLocalRing::SphereLike(i).space();
                    let mut next = GradedVectorSpace::zero();
                    for (k, v) in s.iter() {
                        for (k2, v2) in factor.iter() {
                            next.add(k + k2, v * v2);
                        }
                    }
                    s = next;
                }
                s
            }
        }
    }

    /// Positivity: the degree-0 part is one-dimensional and nothing lives
    /// in negative degrees.
    pub fn is_positive(&self) -> bool {
        let s = self.space();
        s.dim(0) == 1 && s.iter().all(|(k, _)| k >= 0)
    }
}

/// The ring scheme matching the relative graded Brauer graph algebra:
/// sphere-like `End_L` and truncated-polynomial `End_v`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RgbScheme {
    /// The compatible integer `n`.
    pub n: u32,
}

impl RgbScheme {
    /// The boundary ring `End_L = k ⊕ k[1−n]`.
    pub fn end_l(&self) -> GradedLocalRing {
        GradedLocalRing::SphereLike(self.n)
    }

    /// The local ring at a vertex: truncated polynomial on the vertex
    /// degree at internal vertices, `End_L` at boundary vertices.
    pub fn end_v(&self, g: &SGraph, v: VertexId) -> GradedLocalRing {
        if g.is_internal(v) {
            GradedLocalRing::TruncatedPoly {
                n: self.n,
                degree: g.internal_degree(v),
            }
        } else {
            self.end_l()
        }
    }

    /// Checks positivity of `End_L` and of `End_v` for every vertex.
    pub fn positivity_check(&self, g: &SGraph) -> bool {
        self.end_l().is_positive() && g.vertices().all(|v| self.end_v(g, v).is_positive())
    }
}

/// Kind of a directed intersection between two edges.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IntersectionKind {
    /// At an internal (singular) vertex; exists in both directions.
    Singular,
    /// At a boundary vertex; exists only from the earlier halfedge to the
    /// later one.
    Boundary,
}

/// A directed intersection of two edges at a shared vertex.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Intersection {
    /// Singular or boundary.
    pub kind: IntersectionKind,
    /// The shared vertex.
    pub vertex: VertexId,
    /// The first edge's halfedge at the vertex.
    pub from: HalfedgeId,
    /// The second edge's halfedge at the vertex.
    pub to: HalfedgeId,
    /// The corner distance `d(from, to)`.
    pub degree: i64,
}

/// The one or two halfedges of an edge.
fn halves_of(g: &SGraph, e: EdgeId) -> Vec<HalfedgeId> {
    match g.edge_halfedges(e) {
        (a, Some(b)) => alloc::vec![a, b],
        (a, None) => alloc::vec![a],
    }
}

/// All directed intersections from `e` to `h`.
///
/// For `e = h` the self-intersections of a loop are returned (ordered
/// pairs of its two distinct halfedges at a shared vertex).
pub fn intersections(g: &SGraph, e: EdgeId, h: EdgeId) -> Vec<Intersection> {
    let mut out = Vec::new();
    for a in halves_of(g, e) {
        for b in halves_of(g, h) {
            if a == b || g.vertex_of(a) != g.vertex_of(b) {
                continue;
            }
            let v = g.vertex_of(a);
            if g.is_internal(v) {
                out.push(Intersection {
                    kind: IntersectionKind::Singular,
                    vertex: v,
                    from: a,
                    to: b,
                    degree: g.d_ext(a, b).unwrap() as i64,
                });
            } else if g.pos_in_order(a) < g.pos_in_order(b) {
                out.push(Intersection {
                    kind: IntersectionKind::Boundary,
                    vertex: v,
                    from: a,
                    to: b,
                    degree: g.d_ext(a, b).unwrap() as i64,
                });
            }
        }
    }
    out
}

/// The graded morphism space from the object of `e` to the object of `h`
/// (`e ≠ h`): one shifted local ring per directed intersection.
pub fn rhom_edges(g: &SGraph, scheme: &RgbScheme, e: EdgeId, h: EdgeId) -> GradedVectorSpace {
    debug_assert_ne!(e, h, "use end_edge for self-morphisms");
    let mut out = GradedVectorSpace::zero();
    for x in intersections(g, e, h) {
        let ring = match x.kind {
            IntersectionKind::Singular => scheme.end_v(g, x.vertex),
            IntersectionKind::Boundary => scheme.end_l(),
        };
        out = out.sum(&ring.space().shifted(x.degree));
    }
    out
}

/// The graded endomorphism space of the object of `e`.
///
/// Computed as the homotopy fiber product of the endpoint rings over
/// `End_L`: degreewise, the kernel of the difference map contributes in
/// place and its cokernel contributes one degree higher. The structure
/// map into `End_L` is the difference of units in degree 0, the identity
/// in every degree for a boundary endpoint, and zero in positive degrees
/// for an internal endpoint; an external edge contributes only its unit.
/// When `e` is a loop, shifted self-intersection terms are added on top.
pub fn end_edge(g: &SGraph, scheme: &RgbScheme, e: EdgeId) -> GradedVectorSpace {
    let l = scheme.end_l().space();
    // Endpoint summands with their map ranks per degree.
    let halves = halves_of(g, e);
    let mut source = GradedVectorSpace::zero();
    let mut boundary_ends = 0usize;
    for &h in &halves {
        let v = g.vertex_of(h);
        source = source.sum(&scheme.end_v(g, v).space());
        if !g.is_internal(v) {
            boundary_ends += 1;
        }
    }
    if halves.len() == 1 {
        // External edge: the free end imposes only the unit condition.
        source = source.sum(&GradedVectorSpace::line(0));
    }
    let mut out = GradedVectorSpace::zero();
    let degrees: alloc::collections::BTreeSet<i64> = source
        .iter()
        .map(|(k, _)| k)
        .chain(l.iter().map(|(k, _)| k))
        .chain(l.iter().map(|(k, _)| k + 1))
        .collect();
    for q in degrees {
        // Rank of the structure map in degree q: the units all map to the
        // unit of End_L (rank 1 in degree 0); above degree 0 only boundary
        // endpoints map on, by the identity.
        let rank = |deg: i64| -> usize {
            if deg == 0 {
                usize::from(l.dim(0) > 0)
            } else if boundary_ends > 0 {
                l.dim(deg).min(1)
            } else {
                0
            }
        };
        let kernel = source.dim(q) - rank(q);
        let cokernel = l.dim(q - 1) - rank(q - 1);
        out.add(q, kernel + cokernel);
    }
    // Loop contributions: one shifted endpoint ring per self-intersection.
    for x in intersections(g, e, e) {
        let ring = match x.kind {
            IntersectionKind::Singular => scheme.end_v(g, x.vertex),
            IntersectionKind::Boundary => scheme.end_l(),
        };
        out = out.sum(&ring.space().shifted(x.degree));
    }
    out
}

/// A corner crossing inside a graded arc.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Crossing {
    /// Vertex being crossed.
    pub vertex: VertexId,
    /// Halfedge the arc arrives on.
    pub from: HalfedgeId,
    /// Halfedge the arc leaves on.
    pub to: HalfedgeId,
    /// Corner distance `d(from, to)` of the crossing.
    pub degree: i64,
}

/// A graded arc: edges traversed in order, the corner crossings between
/// them, and a grading integer per edge segment.
///
/// The grading obeys `g_i = g_{i−1} + d − 1` across a crossing of corner
/// distance `d`, starting from `g_0 = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedArc {
    /// The edges traversed (type-I segments).
    pub edges: Vec<EdgeId>,
    /// The crossings between consecutive segments (type-II segments);
    /// `crossings.len() + 1 == edges.len()`.
    pub crossings: Vec<Crossing>,
    /// Grading integers, one per edge segment.
    pub gradings: Vec<i64>,
}

impl GradedArc {
    /// The trivial arc along a single edge.
    pub fn from_edge(e: EdgeId) -> GradedArc {
        GradedArc {
            edges: alloc::vec![e],
            crossings: Vec::new(),
            gradings: alloc::vec![0],
        }
    }

    /// Number of edge segments.
    pub fn segments(&self) -> usize {
        self.edges.len()
    }

    /// The class in the Grothendieck group: multiplicity per edge, indexed
    /// by the position of the edge in `g.edges()`.
    pub fn k0_class(&self, g: &SGraph) -> Vec<i64> {
        let edges = g.edges();
        let mut out = alloc::vec![0i64; edges.len()];
        for e in &self.edges {
            let idx = edges.iter().position(|x| x == e).expect("edge of g");
            out[idx] += 1;
        }
        out
    }
}

/// An error from arc operations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExtError {
    /// The given intersection does not belong to the given edge pair.
    NotAnIntersection,
}

impl fmt::Display for ExtError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtError::NotAnIntersection => {
                write!(f, "the intersection does not belong to the edge pair")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ExtError {}

/// Smooths the intersection `x` of `e` and `h` counterclockwise into a
/// single graded arc running along `e`, across the corner at `x`, and out
/// along `h`.
///
/// The resulting class is `[e] + [h]`, and the second segment's grading is
/// `d(x) − 1` by the grading recursion.
pub fn smooth(g: &SGraph, e: EdgeId, h: EdgeId, x: &Intersection) -> Result<GradedArc, ExtError> {
    if !intersections(g, e, h).contains(x) {
        return Err(ExtError::NotAnIntersection);
    }
    Ok(GradedArc {
        edges: alloc::vec![e, h],
        crossings: alloc::vec![Crossing {
            vertex: x.vertex,
            from: x.from,
            to: x.to,
            degree: x.degree,
        }],
        gradings: alloc::vec![0, x.degree - 1],
    })
}
