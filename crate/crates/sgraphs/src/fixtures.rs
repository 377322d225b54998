//! Built-in S-graph fixtures used by tests and the command-line tool.
//!
//! Each fixture is a small hand-constructed S-graph exercising a distinct
//! feature: trivalent internal vertices with a boundary, a flipped variant
//! of the same graph, high-degree one-valent vertices, a boundary-free
//! torus graph, a monogon, and a single boundary segment.
//!
//! Halfedges of the `k`-th edge are numbered `2k` and `2k+1`, so the edge
//! labeled `k` (1-based) in the accompanying documentation has
//! [`EdgeId`]`(`[`HalfedgeId`]`(2k-2))`.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{EdgeId, HalfedgeId, SGraph, VertexKind};

/// A named fixture graph.
#[derive(Clone, Debug)]
pub struct Fixture {
    /// Stable fixture name (also the file stem used by the CLI).
    pub name: &'static str,
    /// One-line description.
    pub about: &'static str,
    /// The graph.
    pub graph: SGraph,
    /// Smallest `n` the graph's algebra accepts (1 when unconstrained).
    pub min_n: u32,
}

/// The edge with 1-based label `k` under the fixture numbering convention.
pub fn edge(k: u32) -> EdgeId {
    EdgeId(HalfedgeId(2 * (k - 1)))
}

const I: VertexKind = VertexKind::Internal;
const B: VertexKind = VertexKind::Boundary;

/// A disk with three trivalent internal vertices (`v_c = 0`, `v_r = 1`,
/// `v_l = 2`), five one-valent boundary vertices, and seven edges.
///
/// Edges: 1 = `v_l`–`b_tl`, 2 = `v_c`–`v_l`, 3 = `v_l`–`b_l`,
/// 4 = `v_c`–`v_r`, 5 = `v_c`–`b_b`, 6 = `v_r`–`b_tr`, 7 = `v_r`–`b_r`.
/// All corner degrees are 1; compatible with `n = 3`.
pub fn fig11_left() -> Fixture {
    // Vertices: 0 = v_c, 1 = v_r, 2 = v_l, 3 = b_b, 4 = b_tr, 5 = b_r,
    // 6 = b_tl, 7 = b_l.
    let kinds = vec![I, I, I, B, B, B, B, B];
    let tau = vec![1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10, 13, 12];
    let sigma = vec![2, 6, 0, 2, 2, 7, 0, 1, 0, 3, 1, 4, 1, 5];
    let order = vec![
        vec![6, 2, 8], // v_c: towards v_r, v_l, b_b
        vec![10, 7, 12], // v_r: towards b_tr, v_c, b_r
        vec![0, 4, 3], // v_l: towards b_tl, b_l, v_c
        vec![9],
        vec![11],
        vec![13],
        vec![1],
        vec![5],
    ];
    let corners = vec![
        vec![1, 1, 1],
        vec![1, 1, 1],
        vec![1, 1, 1],
        vec![],
        vec![],
        vec![],
        vec![],
        vec![],
    ];
    Fixture {
        name: "fig11_left",
        about: "disk with three trivalent internal vertices and five boundary vertices",
        graph: SGraph::from_parts(kinds, tau, sigma, order, corners),
        min_n: 3,
    }
}

/// The backward flip of [`fig11_left`] at edge 1, written out explicitly
/// so flip code can be checked against an independent description.
///
/// Relative to [`fig11_left`]: `v_l` keeps halfedges 0 (edge 1) and
/// 3 (edge 2) with corner degrees 1 and 2, while halfedge 4 (edge 3) has
/// moved to the boundary vertex `b_tl`, preceding halfedge 1 with a corner
/// of degree 1.
pub fn fig11_right() -> Fixture {
    let kinds = vec![I, I, I, B, B, B, B, B];
    let tau = vec![1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10, 13, 12];
    let sigma = vec![2, 6, 0, 2, 6, 7, 0, 1, 0, 3, 1, 4, 1, 5];
    let order = vec![
        vec![6, 2, 8],
        vec![10, 7, 12],
        vec![0, 3], // v_l: edge 1, edge 2
        vec![9],
        vec![11],
        vec![13],
        vec![4, 1], // b_tl: edge 3 then edge 1
        vec![5],
    ];
    let corners = vec![
        vec![1, 1, 1],
        vec![1, 1, 1],
        vec![1, 2],
        vec![],
        vec![],
        vec![],
        vec![1],
        vec![],
    ];
    Fixture {
        name: "fig11_right",
        about: "backward flip of fig11_left at edge 1, written out by hand",
        graph: SGraph::from_parts(kinds, tau, sigma, order, corners),
        min_n: 3,
    }
}

/// A boundary-free star graph: a central 4-valent vertex of degree 4
/// (`P5 = 4`) joined to three 1-valent vertices of degree 4
/// (`P4 = 3`, `P6 = 5`, `P1 = 0`) and to a 2-valent vertex of degree 2
/// (`P2 = 1`), which in turn joins a 1-valent vertex of degree 1
/// (`P3 = 2`). Compatible with `n = 4`.
///
/// Edges: 1 = `P5`–`P4`, 2 = `P5`–`P6`, 3 = `P5`–`P1`, 4 = `P5`–`P2`,
/// 5 = `P2`–`P3`.
pub fn fig12() -> Fixture {
    // Vertices: 0 = P1, 1 = P2, 2 = P3, 3 = P4, 4 = P5, 5 = P6.
    let kinds = vec![I, I, I, I, I, I];
    let tau = vec![1, 0, 3, 2, 5, 4, 7, 6, 9, 8];
    let sigma = vec![4, 3, 4, 5, 4, 0, 4, 1, 1, 2];
    let order = vec![
        vec![5],
        vec![7, 8],
        vec![9],
        vec![1],
        vec![0, 2, 4, 6],
        vec![3],
    ];
    let corners = vec![
        vec![4],
        vec![1, 1],
        vec![1],
        vec![4],
        vec![1, 1, 1, 1],
        vec![4],
    ];
    Fixture {
        name: "fig12",
        about: "boundary-free star with a degree-1 leaf, compatible with n = 4",
        graph: SGraph::from_parts(kinds, tau, sigma, order, corners),
        min_n: 4,
    }
}

/// A theta graph embedded on the torus: two trivalent internal vertices of
/// degree 3 joined by three parallel edges, one face. Boundary-free,
/// orientable, compatible with `n = 3`.
pub fn torus() -> Fixture {
    let kinds = vec![I, I];
    let tau = vec![3, 4, 5, 0, 1, 2];
    let sigma = vec![0, 0, 0, 1, 1, 1];
    let order = vec![vec![0, 1, 2], vec![3, 4, 5]];
    let corners = vec![vec![1, 1, 1], vec![1, 1, 1]];
    Fixture {
        name: "torus",
        about: "theta graph on the torus: boundary-free, one face, compatible with n = 3",
        graph: SGraph::from_parts(kinds, tau, sigma, order, corners),
        min_n: 3,
    }
}

/// A monogon: a degree-1 internal vertex attached by edge 1 to a 4-valent
/// internal vertex of degree 4 whose remaining three halfedges are
/// external.
pub fn monogon() -> Fixture {
    // Vertex 0: degree 4, order (external R, external L, edge 1, external C).
    // Vertex 1: degree 1 with the partner halfedge of edge 1.
    let kinds = vec![I, I];
    let tau = vec![1, 0, 2, 3, 4]; // halfedges 2, 3, 4 are external.
    let sigma = vec![0, 1, 0, 0, 0];
    let order = vec![vec![2, 3, 0, 4], vec![1]];
    let corners = vec![vec![1, 1, 1, 1], vec![1]];
    Fixture {
        name: "monogon",
        about: "degree-1 internal vertex hanging off a 4-valent vertex with external edges",
        graph: SGraph::from_parts(kinds, tau, sigma, order, corners),
        min_n: 4,
    }
}

/// A single edge joining two one-valent boundary vertices.
pub fn segment() -> Fixture {
    let kinds = vec![B, B];
    let tau = vec![1, 0];
    let sigma = vec![0, 1];
    let order = vec![vec![0], vec![1]];
    let corners = vec![vec![], vec![]];
    Fixture {
        name: "segment",
        about: "one edge between two boundary vertices",
        graph: SGraph::from_parts(kinds, tau, sigma, order, corners),
        min_n: 1,
    }
}

/// All built-in fixtures.
pub fn all() -> Vec<Fixture> {
    vec![
        fig11_left(),
        fig11_right(),
        fig12(),
        torus(),
        monogon(),
        segment(),
    ]
}
