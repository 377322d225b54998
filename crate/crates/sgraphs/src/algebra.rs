//! The relative graded Brauer graph algebra `A(Γ, n)` of an S-graph.
//!
//! Given an S-graph `Γ` and a compatible integer `n ≥ 1` (a positive
//! multiple of every internal vertex degree), `A(Γ, n)` is a
//! finite-dimensional dg-algebra presented by a graded quiver whose
//! vertices are the edges of `Γ`:
//!
//! * one arrow `a_i : i → i⁺` per corner `(i, i⁺)`, of degree `d(i, i⁺)`;
//! * one loop `τ_i` of degree `n − 1` per halfedge at a boundary vertex;
//!
//! subject to the relations
//!
//! 1. `a_j a_i = 0` when `i⁺ ≠ j` are halfedges of the same edge (paths
//!    never cross an edge);
//! 2. `c_i = (−1)^{n−1} c_j` for an edge `{i, j}` with both ends internal,
//!    where `c_i` is the `n/m`-th power of the full corner cycle at `i`'s
//!    degree-`m` vertex;
//! 3. `a_i τ_i = (−1)^{|a_i|} τ_{i⁺} a_i` at boundary corners;
//! 4. `τ_i = (−1)^n τ_j` for an edge with both ends at boundary vertices;
//!
//! together with `τ_i² = 0` and `a_i c_i = 0` (the cycles `c_i` span the
//! socle). The differential vanishes on all generators except the boundary
//! loop `τ_j` of a *mixed* edge (internal end `i`, boundary end `j`),
//! where `d(τ_j) = (−1)^n c_i`.
//!
//! # Basis
//!
//! The algebra is represented directly on its basis, with products given
//! by closed-form structure constants (see [`BasisElt`]). Every non-unit
//! basis element is local to a single vertex of `Γ` and carries a source
//! and a target halfedge; a product is nonzero only when the junction
//! halfedges coincide, possibly after rewriting an identified `c` or `τ`
//! to its variant at the other end of its edge. An integration test
//! cross-checks the graded dimensions against brute-force path enumeration
//! modulo the relations above.
//!
//! # Signs
//!
//! The identifications `c_i = (−1)^{n−1} c_j` and `τ_i = (−1)^n τ_j` leave
//! a sign choice per edge; it is fixed by an [`EdgeOrientation`]: the
//! representative is the halfedge the edge points *towards* (`ε = 1`).
//! For the Calabi–Yau trace in even degree the orientation must in
//! addition satisfy the corner-parity condition of
//! [`SGraph::find_orientation`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{EdgeId, EdgeOrientation, GraphError, HalfedgeId, SGraph, VertexId, VertexKind};
use crate::scalar::{FieldSpec, Matrix, Scalar};

/// A basis element of `A(Γ, n)`.
///
/// | Variant | Meaning | Degree |
/// |---|---|---|
/// | `E(e)` | idempotent unit at edge `e` | 0 |
/// | `Ar{i,j,r}` | path `j → i` at an internal vertex, winding `r` extra turns | `d(j,i) + r·m` |
/// | `C(h)` | full cycle `(corner cycle)^{n/m}` at `h`'s internal vertex | `n` |
/// | `Abnd{i,j}` | path `j → i` at a boundary vertex (`j` before `i`) | `d(j,i)` |
/// | `Tau(h)` | boundary loop at `h` | `n − 1` |
/// | `B{i,j}` | `a_{i,j} τ_j` at a boundary vertex (`j` before `i`) | `d(j,i) + n − 1` |
///
/// `C` and `Tau` elements whose edge has two eligible ends are stored on
/// the canonical (orientation-selected) halfedge only.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum BasisElt {
    /// Idempotent unit of an edge.
    E(EdgeId),
    /// `a^r_{i,j}`: the arrow path from `edge(j)` to `edge(i)` around their
    /// common internal vertex, composed with `r` full corner cycles.
    Ar {
        /// Target halfedge.
        i: HalfedgeId,
        /// Source halfedge.
        j: HalfedgeId,
        /// Winding exponent, `0 ≤ r < n/m`; `r ≥ 1` when `i = j`.
        r: u32,
    },
    /// `c_i`: the degree-`n` cycle based at halfedge `i`.
    C(HalfedgeId),
    /// `a_{i,j}`: the arrow path from `edge(j)` to `edge(i)` along their
    /// common boundary vertex; `j` strictly precedes `i`.
    Abnd {
        /// Target halfedge.
        i: HalfedgeId,
        /// Source halfedge.
        j: HalfedgeId,
    },
    /// `τ_i`: the boundary loop at halfedge `i`.
    Tau(HalfedgeId),
    /// `b_{i,j} := a_{i,j} τ_j`; `j` strictly precedes `i`.
    B {
        /// Target halfedge.
        i: HalfedgeId,
        /// Source halfedge.
        j: HalfedgeId,
    },
}

impl fmt::Display for BasisElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElt::E(e) => write!(f, "e[{e}]"),
            BasisElt::Ar { i, j, r } => write!(f, "a^{r}[{i},{j}]"),
            BasisElt::C(h) => write!(f, "c[{h}]"),
            BasisElt::Abnd { i, j } => write!(f, "a[{i},{j}]"),
            BasisElt::Tau(h) => write!(f, "tau[{h}]"),
            BasisElt::B { i, j } => write!(f, "b[{i},{j}]"),
        }
    }
}

/// An error from algebra construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AlgebraError {
    /// The underlying graph failed validation.
    Graph(GraphError),
    /// `n` is not a positive multiple of an internal vertex degree.
    IncompatibleN {
        /// The offending vertex.
        vertex: VertexId,
        /// Its degree.
        degree: u32,
        /// The requested `n`.
        n: u32,
    },
    /// `n` must be at least 1.
    NonPositiveN,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::Graph(g) => write!(f, "{g}"),
            AlgebraError::IncompatibleN { vertex, degree, n } => write!(
                f,
                "n = {n} is not a multiple of the degree {degree} of {vertex}"
            ),
            AlgebraError::NonPositiveN => write!(f, "n must be at least 1"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for AlgebraError {}

impl From<GraphError> for AlgebraError {
    fn from(e: GraphError) -> AlgebraError {
        AlgebraError::Graph(e)
    }
}

/// The relative graded Brauer graph algebra of an S-graph.
#[derive(Clone, Debug)]
pub struct RgbAlgebra {
    graph: SGraph,
    n: u32,
    field: FieldSpec,
    orient: EdgeOrientation,
    basis: Vec<BasisElt>,
}

/// A convenient all-`false` direction-bit assignment for sign
/// normalization when no particular orientation is needed.
pub fn default_orientation(g: &SGraph) -> EdgeOrientation {
    EdgeOrientation::from_bits(g, alloc::vec![false; g.edges().len()])
}

/// Builds `A(Γ, n)` over `field`, with identification signs normalized by
/// `orient`.
pub fn build_rgb(
    g: &SGraph,
    n: u32,
    field: FieldSpec,
    orient: &EdgeOrientation,
) -> Result<RgbAlgebra, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::NonPositiveN);
    }
    let rep = g.validate();
    if !rep.is_valid() {
        return Err(AlgebraError::Graph(GraphError::Invalid(rep)));
    }
    for v in g.vertices() {
        if g.is_internal(v) {
            let m = g.internal_degree(v);
            if n % m != 0 {
                return Err(AlgebraError::IncompatibleN {
                    vertex: v,
                    degree: m,
                    n,
                });
            }
        }
    }
    let mut a = RgbAlgebra {
        graph: g.clone(),
        n,
        field,
        orient: orient.clone(),
        basis: Vec::new(),
    };
    a.basis = a.enumerate();
    Ok(a)
}

impl RgbAlgebra {
    /// The underlying S-graph.
    pub fn graph(&self) -> &SGraph {
        &self.graph
    }

    /// The compatible integer `n`.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// The ground field.
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// The orientation used for sign normalization.
    pub fn orientation(&self) -> &EdgeOrientation {
        &self.orient
    }

    /// The complete basis, in a stable order.
    pub fn basis(&self) -> &[BasisElt] {
        &self.basis
    }

    /// True when `h`'s edge points towards `h` (making it the canonical
    /// representative of an identified pair).
    fn is_rep(&self, h: HalfedgeId) -> bool {
        let t = self.graph.tau(h);
        t == h || self.orient.epsilon(h) == 1
    }

    /// Canonical form of `c_h`: `(sign exponent, representative)`.
    pub(crate) fn canonical_c(&self, h: HalfedgeId) -> (i64, BasisElt) {
        let t = self.graph.tau(h);
        if t != h && self.graph.is_internal(self.graph.vertex_of(t)) && !self.is_rep(h) {
            // c_h = (−1)^{n−1} c_{τ(h)}.
            ((self.n - 1) as i64, BasisElt::C(t))
        } else {
            (0, BasisElt::C(h))
        }
    }

    /// Canonical form of `τ_h`: `(sign exponent, representative)`.
    pub(crate) fn canonical_tau(&self, h: HalfedgeId) -> (i64, BasisElt) {
        let t = self.graph.tau(h);
        if t != h && !self.graph.is_internal(self.graph.vertex_of(t)) && !self.is_rep(h) {
            // τ_h = (−1)^n τ_{τ(h)}.
            (self.n as i64, BasisElt::Tau(t))
        } else {
            (0, BasisElt::Tau(h))
        }
    }

    fn enumerate(&self) -> Vec<BasisElt> {
        let g = &self.graph;
        let n = self.n;
        let mut out = Vec::new();
        for e in g.edges() {
            out.push(BasisElt::E(e));
        }
        for v in g.vertices() {
            let star = g.order_at(v);
            match g.kind(v) {
                VertexKind::Internal => {
                    let m = g.internal_degree(v);
                    for &i in &star {
                        for &j in &star {
                            for r in 0..n / m {
                                if i == j && r == 0 {
                                    continue;
                                }
                                out.push(BasisElt::Ar { i, j, r });
                            }
                        }
                    }
                    for &h in &star {
                        if self.is_rep(h) || !g.is_internal(g.vertex_of(g.tau(h))) {
                            out.push(BasisElt::C(h));
                        }
                    }
                }
                VertexKind::Boundary => {
                    for (pj, &j) in star.iter().enumerate() {
                        for &i in &star[pj + 1..] {
                            out.push(BasisElt::Abnd { i, j });
                            out.push(BasisElt::B { i, j });
                        }
                    }
                    for &h in &star {
                        if self.is_rep(h) || g.is_internal(g.vertex_of(g.tau(h))) {
                            out.push(BasisElt::Tau(h));
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// The degree of a basis element.
    pub fn degree(&self, x: &BasisElt) -> i64 {
        let g = &self.graph;
        let n = self.n as i64;
        match *x {
            BasisElt::E(_) => 0,
            BasisElt::Ar { i, j, r } => {
                let m = g.internal_degree(g.vertex_of(i)) as i64;
                g.d_ext(j, i).unwrap() as i64 + r as i64 * m
            }
            BasisElt::C(_) => n,
            BasisElt::Abnd { i, j } => g.d_ext(j, i).unwrap() as i64,
            BasisElt::Tau(_) => n - 1,
            BasisElt::B { i, j } => g.d_ext(j, i).unwrap() as i64 + n - 1,
        }
    }

    /// The quiver vertex (edge of `Γ`) a basis element starts at.
    pub fn source_edge(&self, x: &BasisElt) -> EdgeId {
        match *x {
            BasisElt::E(e) => e,
            BasisElt::Ar { j, .. } | BasisElt::Abnd { j, .. } | BasisElt::B { j, .. } => {
                self.graph.edge_of(j)
            }
            BasisElt::C(h) | BasisElt::Tau(h) => self.graph.edge_of(h),
        }
    }

    /// The quiver vertex (edge of `Γ`) a basis element ends at.
    pub fn target_edge(&self, x: &BasisElt) -> EdgeId {
        match *x {
            BasisElt::E(e) => e,
            BasisElt::Ar { i, .. } | BasisElt::Abnd { i, .. } | BasisElt::B { i, .. } => {
                self.graph.edge_of(i)
            }
            BasisElt::C(h) | BasisElt::Tau(h) => self.graph.edge_of(h),
        }
    }

    /// Local variants of a basis element: the element itself plus, for an
    /// identified `c` or `τ`, its signed rewriting at the other end of the
    /// edge.
    fn atoms(&self, x: &BasisElt) -> Vec<(i64, BasisElt)> {
        let g = &self.graph;
        let mut out = alloc::vec![(0i64, *x)];
        match *x {
            BasisElt::C(h) => {
                let t = g.tau(h);
                if t != h && g.is_internal(g.vertex_of(t)) {
                    out.push(((self.n - 1) as i64, BasisElt::C(t)));
                }
            }
            BasisElt::Tau(h) => {
                let t = g.tau(h);
                if t != h && !g.is_internal(g.vertex_of(t)) {
                    out.push((self.n as i64, BasisElt::Tau(t)));
                }
            }
            _ => {}
        }
        out
    }

    fn source_half(x: &BasisElt) -> HalfedgeId {
        match *x {
            BasisElt::Ar { j, .. } | BasisElt::Abnd { j, .. } | BasisElt::B { j, .. } => j,
            BasisElt::C(h) | BasisElt::Tau(h) => h,
            BasisElt::E(_) => unreachable!("units have no local halfedge"),
        }
    }

    fn target_half(x: &BasisElt) -> HalfedgeId {
        match *x {
            BasisElt::Ar { i, .. } | BasisElt::Abnd { i, .. } | BasisElt::B { i, .. } => i,
            BasisElt::C(h) | BasisElt::Tau(h) => h,
            BasisElt::E(_) => unreachable!("units have no local halfedge"),
        }
    }

    /// The product `x · y` ("first `y`, then `x`") as a scalar multiple of
    /// a basis element, or `None` when it vanishes.
    pub fn multiply(&self, x: &BasisElt, y: &BasisElt) -> Option<(Scalar, BasisElt)> {
        if let BasisElt::E(e) = *x {
            return (self.target_edge(y) == e).then(|| (self.field.one(), *y));
        }
        if let BasisElt::E(e) = *y {
            return (self.source_edge(x) == e).then(|| (self.field.one(), *x));
        }
        for (sx, xa) in self.atoms(x) {
            for (sy, ya) in self.atoms(y) {
                if Self::source_half(&xa) != Self::target_half(&ya) {
                    continue;
                }
                let (s, z) = self.compose_local(&xa, &ya)?;
                return Some((self.field.sign(sx + sy + s), z));
            }
        }
        None
    }

    /// Composes two elements local to the same vertex with matching
    /// junction halfedge. Returns `(sign exponent, canonical result)`.
    fn compose_local(&self, x: &BasisElt, y: &BasisElt) -> Option<(i64, BasisElt)> {
        let g = &self.graph;
        match (*x, *y) {
            (BasisElt::Ar { i, j: k, r: r1 }, BasisElt::Ar { i: k2, j, r: r2 }) => {
                debug_assert_eq!(k, k2);
                let m = g.internal_degree(g.vertex_of(k)) as i64;
                let total = g.d_ext(j, k).unwrap() as i64
                    + r2 as i64 * m
                    + g.d_ext(k, i).unwrap() as i64
                    + r1 as i64 * m;
                let base = g.d_ext(j, i).unwrap() as i64;
                debug_assert_eq!((total - base).rem_euclid(m), 0);
                let r = (total - base) / m;
                let winding = self.n as i64 / m;
                if i == j && r == winding {
                    let (s, c) = self.canonical_c(i);
                    Some((s, c))
                } else if r < winding {
                    Some((0, BasisElt::Ar { i, j, r: r as u32 }))
                } else {
                    None
                }
            }
            // The cycles span the socle: every product with them vanishes.
            (BasisElt::C(_), _) | (_, BasisElt::C(_)) => None,
            (BasisElt::Abnd { i, j: k }, BasisElt::Abnd { j, .. }) => {
                let _ = k;
                Some((0, BasisElt::Abnd { i, j }))
            }
            (BasisElt::Abnd { i, j: k }, BasisElt::Tau(_)) => Some((0, BasisElt::B { i, j: k })),
            (BasisElt::Tau(k), BasisElt::Abnd { j, .. }) => {
                // Commute τ leftwards: τ_k a_{k,j} = (−1)^{d(j,k)} b_{k,j}.
                Some((g.d_ext(j, k).unwrap() as i64, BasisElt::B { i: k, j }))
            }
            (BasisElt::Abnd { i, .. }, BasisElt::B { j, .. }) => Some((0, BasisElt::B { i, j })),
            (BasisElt::B { i, j: k }, BasisElt::Abnd { j, .. }) => {
                Some((g.d_ext(j, k).unwrap() as i64, BasisElt::B { i, j }))
            }
            // Any remaining combination carries two τ factors.
            (BasisElt::Tau(_) | BasisElt::B { .. }, BasisElt::Tau(_) | BasisElt::B { .. }) => None,
            _ => unreachable!("mismatched vertex kinds at a junction"),
        }
    }

    /// The differential of a basis element.
    ///
    /// Nonzero only on the boundary loop of a mixed edge, where
    /// `d(τ_j) = (−1)^n c_i` with `i` the internal end.
    pub fn differential(&self, x: &BasisElt) -> Option<(Scalar, BasisElt)> {
        if let BasisElt::Tau(h) = *x {
            let t = self.graph.tau(h);
            if t != h && self.graph.is_internal(self.graph.vertex_of(t)) {
                let (s, c) = self.canonical_c(t);
                return Some((self.field.sign(self.n as i64 + s), c));
            }
        }
        None
    }

    /// Graded dimensions indexed by `(degree, source edge, target edge)`.
    pub fn dims(&self) -> BTreeMap<(i64, EdgeId, EdgeId), usize> {
        let mut out = BTreeMap::new();
        for x in &self.basis {
            *out.entry((self.degree(x), self.source_edge(x), self.target_edge(x)))
                .or_insert(0) += 1;
        }
        out
    }

    /// Checks the dg-algebra axioms exhaustively on the basis: units,
    /// degree additivity, `d² = 0`, the Leibniz rule on all pairs, and
    /// associativity on all triples.
    pub fn check_dg(&self) -> Result<(), String> {
        let field = self.field;
        // d raises degree by 1 (cohomological convention).
        for x in &self.basis {
            if let Some((_, dx)) = self.differential(x) {
                if self.degree(&dx) != self.degree(x) + 1 {
                    return Err(format!("d({x}) is not homogeneous of degree +1"));
                }
                if self.differential(&dx).is_some() {
                    return Err(format!("d²({x}) ≠ 0"));
                }
            }
        }
        // Products: degree additivity and endpoint matching.
        for x in &self.basis {
            for y in &self.basis {
                if let Some((s, z)) = self.multiply(x, y) {
                    if s.is_zero() {
                        return Err(format!("{x}·{y} returned a zero scalar"));
                    }
                    if self.degree(&z) != self.degree(x) + self.degree(y) {
                        return Err(format!("{x}·{y} is not degree-additive"));
                    }
                    if self.source_edge(&z) != self.source_edge(y)
                        || self.target_edge(&z) != self.target_edge(x)
                    {
                        return Err(format!("{x}·{y} has wrong endpoints"));
                    }
                    if self.source_edge(x) != self.target_edge(y) {
                        return Err(format!("{x}·{y} nonzero but not composable"));
                    }
                }
                // Leibniz: d(xy) = d(x)y + (−1)^{|x|} x d(y).
                let mut lhs: BTreeMap<BasisElt, Scalar> = BTreeMap::new();
                if let Some((s, z)) = self.multiply(x, y) {
                    if let Some((t, dz)) = self.differential(&z) {
                        add_term(&mut lhs, s.mul(&t), dz);
                    }
                }
                let mut rhs: BTreeMap<BasisElt, Scalar> = BTreeMap::new();
                if let Some((s, dx)) = self.differential(x) {
                    if let Some((t, z)) = self.multiply(&dx, y) {
                        add_term(&mut rhs, s.mul(&t), z);
                    }
                }
                if let Some((s, dy)) = self.differential(y) {
                    if let Some((t, z)) = self.multiply(x, &dy) {
                        let sign = field.sign(self.degree(x));
                        add_term(&mut rhs, sign.mul(&s).mul(&t), z);
                    }
                }
                prune(&mut lhs);
                prune(&mut rhs);
                if lhs != rhs {
                    return Err(format!("Leibniz fails on {x}, {y}"));
                }
            }
        }
        // Associativity on all triples.
        for x in &self.basis {
            for y in &self.basis {
                let xy = self.multiply(x, y);
                for z in &self.basis {
                    if self.source_edge(y) != self.target_edge(z)
                        && self.source_edge(x) != self.target_edge(y)
                    {
                        continue;
                    }
                    let mut left: BTreeMap<BasisElt, Scalar> = BTreeMap::new();
                    if let Some((s, w)) = &xy {
                        if let Some((t, u)) = self.multiply(w, z) {
                            add_term(&mut left, s.mul(&t), u);
                        }
                    }
                    let mut right: BTreeMap<BasisElt, Scalar> = BTreeMap::new();
                    if let Some((s, w)) = self.multiply(y, z) {
                        if let Some((t, u)) = self.multiply(x, &w) {
                            add_term(&mut right, s.mul(&t), u);
                        }
                    }
                    prune(&mut left);
                    prune(&mut right);
                    if left != right {
                        return Err(format!("associativity fails on {x}, {y}, {z}"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn add_term(acc: &mut BTreeMap<BasisElt, Scalar>, s: Scalar, x: BasisElt) {
    let field = s.field();
    let entry = acc.entry(x).or_insert_with(|| field.zero());
    *entry = entry.add(&s);
}

fn prune(acc: &mut BTreeMap<BasisElt, Scalar>) {
    acc.retain(|_, s| !s.is_zero());
}

/// Result of a Calabi–Yau verification.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CyReport {
    /// Total dimension of the algebra.
    pub dimension: usize,
    /// Whether `tr(xy) = (−1)^{|x||y|} tr(yx)` held on all basis pairs.
    pub symmetric: bool,
    /// Rank of the pairing matrix `tr(x·y)`.
    pub rank: usize,
    /// Whether the algebra passed both checks (an `n`-Calabi–Yau
    /// structure was exhibited).
    pub is_cy: bool,
}

/// Why a Calabi–Yau verification could not be attempted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CyError {
    /// The graph has boundary vertices; the trace construction only
    /// applies to boundary-free graphs (where the differential vanishes).
    BoundaryVertices,
    /// `n` is even and the stored orientation violates the corner-parity
    /// condition (see [`SGraph::find_orientation`]), so the signed trace
    /// is not available.
    OrientationRequired,
}

impl fmt::Display for CyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CyError::BoundaryVertices => {
                write!(f, "Calabi-Yau verification requires a boundary-free graph")
            }
            CyError::OrientationRequired => write!(
                f,
                "even n requires an orientation satisfying the corner-parity condition"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CyError {}

impl RgbAlgebra {
    /// The candidate trace functional: supported on the degree-`n` cycles,
    /// with `tr(c_i) = 1` for odd `n` and `tr(c_i) = (−1)^{ε(i)}` for even
    /// `n`.
    pub fn cy_trace(&self, x: &BasisElt) -> Scalar {
        match *x {
            BasisElt::C(h) => {
                if self.n % 2 == 1 {
                    self.field.one()
                } else {
                    self.field.sign(self.orient.epsilon(h) as i64)
                }
            }
            _ => self.field.zero(),
        }
    }

    /// Verifies the `n`-Calabi–Yau property: symmetry of the trace pairing
    /// and nondegeneracy (full rank) of the pairing matrix.
    pub fn verify_cy(&self) -> Result<CyReport, CyError> {
        let g = &self.graph;
        if g.vertices().any(|v| !g.is_internal(v)) {
            return Err(CyError::BoundaryVertices);
        }
        if self.n % 2 == 0 {
            // The signed trace needs the corner-parity orientation.
            let ok = g.halfedges().all(|h| match (g.succ(h), g.corner_to_succ(h)) {
                (Some(s), Some(d)) => {
                    (self.orient.epsilon(h) + self.orient.epsilon(s)) % 2 == (d % 2) as u8
                }
                _ => true,
            });
            if !ok {
                return Err(CyError::OrientationRequired);
            }
        }
        let dim = self.basis.len();
        let mut pairing = Matrix::zero(self.field, dim, dim);
        let mut symmetric = true;
        for (r, x) in self.basis.iter().enumerate() {
            for (c, y) in self.basis.iter().enumerate() {
                let t_xy = match self.multiply(x, y) {
                    Some((s, z)) => s.mul(&self.cy_trace(&z)),
                    None => self.field.zero(),
                };
                let t_yx = match self.multiply(y, x) {
                    Some((s, z)) => s.mul(&self.cy_trace(&z)),
                    None => self.field.zero(),
                };
                let sign = self.field.sign(self.degree(x) * self.degree(y));
                if t_xy != sign.mul(&t_yx) {
                    symmetric = false;
                }
                pairing.set(r, c, t_xy);
            }
        }
        let rank = pairing.rank();
        Ok(CyReport {
            dimension: dim,
            symmetric,
            rank,
            is_cy: symmetric && rank == dim,
        })
    }
}

/// A witness that no symmetric nondegenerate trace of degree `n` exists.
///
/// For even `n ≥ 2` and a halfedge `i` at an internal vertex of odd degree
/// `m`, split the cycle `c_i = s_i t_i = t_i s_i` with `s_i` the single
/// corner cycle (degree `m`, odd) and `t_i = s_i^{n/m − 1}` (degree
/// `n − m`, also odd). Symmetry forces `tr(c_i) = −tr(c_i)`, so in
/// characteristic ≠ 2 the trace vanishes on `c_i` and the pairing is
/// degenerate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CyObstruction {
    /// The odd-degree internal vertex.
    pub vertex: VertexId,
    /// A halfedge at that vertex.
    pub halfedge: HalfedgeId,
    /// Degree of the factor `s_i` (the vertex degree, odd).
    pub s_degree: i64,
    /// Degree of the factor `t_i = s_i^{n/m − 1}` (odd).
    pub t_degree: i64,
}

impl RgbAlgebra {
    /// Searches for an obstruction to any `n`-Calabi–Yau structure.
    ///
    /// Returns a witness when `n` is even and some internal vertex has odd
    /// degree (valid in characteristic ≠ 2); `None` otherwise.
    pub fn refute_cy(&self) -> Option<CyObstruction> {
        if self.n % 2 != 0 || self.field.characteristic() == 2 {
            return None;
        }
        let g = &self.graph;
        for v in g.vertices() {
            if g.is_internal(v) {
                let m = g.internal_degree(v);
                if m % 2 == 1 {
                    let halfedge = g.order_at(v)[0];
                    return Some(CyObstruction {
                        vertex: v,
                        halfedge,
                        s_degree: m as i64,
                        t_degree: (self.n - m) as i64,
                    });
                }
            }
        }
        None
    }
}
