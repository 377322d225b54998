//! Flip engine tests against hand-written fixtures and random graphs.

use sgraphs::fixtures::{self, edge};
use sgraphs::flip::{backward_flip, exchange_graph, flip, forward_flip, FlipDirection, FlipError};
use sgraphs::gen::{random_sgraph, GenParams, Rng};
use sgraphs::{SGraph, VertexKind};

/// Compares two graphs vertexwise: halfedge orders up to rotation at
/// internal vertices (with matching corner rotation), exactly at boundary
/// vertices.
fn assert_same_embedding(a: &SGraph, b: &SGraph) {
    assert_eq!(a.n_vertices(), b.n_vertices());
    for v in a.vertices() {
        let (oa, ob) = (a.order_at(v), b.order_at(v));
        let (ca, cb) = (a.corners_at(v).to_vec(), b.corners_at(v).to_vec());
        match a.kind(v) {
            VertexKind::Boundary => {
                assert_eq!(oa, ob, "{v}");
                assert_eq!(ca, cb, "{v}");
            }
            VertexKind::Internal => {
                assert_eq!(oa.len(), ob.len(), "{v}");
                let k = ob
                    .iter()
                    .position(|h| *h == oa[0])
                    .unwrap_or_else(|| panic!("{v}: {:?} missing from {ob:?}", oa[0]));
                let n = oa.len();
                for i in 0..n {
                    assert_eq!(oa[i], ob[(k + i) % n], "{v}");
                    assert_eq!(ca[i], cb[(k + i) % n], "{v}");
                }
            }
        }
    }
}

#[test]
fn backward_flip_matches_hand_written_fixture() {
    let left = fixtures::fig11_left().graph;
    let right = fixtures::fig11_right().graph;
    let rec = backward_flip(&left, edge(1)).unwrap();
    assert_eq!(rec.grading_shift, -1);
    assert_eq!(
        rec.output.canonical_form().unwrap(),
        right.canonical_form().unwrap()
    );
    // The flip preserves halfedge ids, so the graphs agree vertexwise.
    assert_same_embedding(&rec.output, &right);
    // Edge 3's halfedge crossed over to the boundary vertex.
    assert_eq!(rec.moved, vec![sgraphs::HalfedgeId(4)]);
}

#[test]
fn forward_flip_inverts_the_fixture_pair() {
    let left = fixtures::fig11_left().graph;
    let right = fixtures::fig11_right().graph;
    let rec = forward_flip(&right, edge(1)).unwrap();
    assert_eq!(rec.grading_shift, 1);
    assert_same_embedding(&rec.output, &left);
}

#[test]
fn monogon_flip_rotates_two_units() {
    use sgraphs::HalfedgeId;
    let g = fixtures::monogon().graph;
    // Vertex 0 order is (2, 3, 0, 4); a forward flip at the monogon edge
    // rotates its halfedge two steps clockwise, expelling halfedges 3 and 2
    // to the positions it vacates.
    let rec = forward_flip(&g, edge(1)).unwrap();
    let v0 = sgraphs::VertexId(0);
    assert_eq!(
        rec.output.order_at(v0),
        vec![HalfedgeId(0), HalfedgeId(2), HalfedgeId(3), HalfedgeId(4)]
    );
    assert_eq!(rec.output.corners_at(v0), &[1, 1, 1, 1]);
    // The degree-1 vertex is untouched.
    assert_eq!(rec.output.order_at(sgraphs::VertexId(1)), vec![HalfedgeId(1)]);
    // Forward then backward restores the graph.
    let back = backward_flip(&rec.output, edge(1)).unwrap();
    assert_same_embedding(&back.output, &g);
}

#[test]
fn external_edge_is_rejected() {
    let g = fixtures::monogon().graph;
    // Halfedge 2 is external.
    let e = sgraphs::graph::EdgeId(sgraphs::HalfedgeId(2));
    match flip(&g, e, FlipDirection::Forward) {
        Err(FlipError::ExternalEdge(f)) => assert_eq!(f, e),
        other => panic!("expected ExternalEdge, got {other:?}"),
    }
}

#[test]
fn flips_preserve_invariants_on_random_graphs() {
    let mut rng = Rng::new(2024);
    let params = GenParams {
        max_edges: 8,
        ..GenParams::default()
    };
    let mut flips = 0usize;
    'outer: for _ in 0..400 {
        let g = random_sgraph(&mut rng, &params);
        let canon = g.canonical_form().unwrap();
        for e in g.edges() {
            if g.is_external(e) {
                continue;
            }
            for dir in [FlipDirection::Forward, FlipDirection::Backward] {
                let rec = flip(&g, e, dir).unwrap();
                assert!(rec.output.validate().is_valid());
                assert!(rec.output.is_connected());
                // Per-vertex degrees and edge count are flip invariants.
                for v in g.vertices() {
                    assert_eq!(
                        g.vertex_degree(v).unwrap(),
                        rec.output.vertex_degree(v).unwrap()
                    );
                }
                assert_eq!(g.edges(), rec.output.edges());
                // The opposite flip undoes it exactly.
                let back = flip(&rec.output, e, dir.inverse()).unwrap();
                assert_eq!(back.output.canonical_form().unwrap(), canon);
                flips += 1;
                if flips >= 1000 {
                    break 'outer;
                }
            }
        }
    }
    assert!(flips >= 1000, "only exercised {flips} flips");
}

#[test]
fn exchange_graph_is_regular_at_interior_nodes() {
    use std::collections::BTreeMap;
    for f in fixtures::all() {
        let ex = exchange_graph(&f.graph, 3).unwrap();
        let m = ex.m;
        let canon_index: std::collections::BTreeMap<&[u8], usize> = ex
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.canon.as_slice(), i))
            .collect();
        for (i, node) in ex.nodes.iter().enumerate() {
            let expanded = node.depth < 3;
            if expanded {
                // Out-degree m at every expanded node.
                assert_eq!(ex.out_degree(i), m, "{} node {i}", f.name);
            }
            // In-degree m in the full exchange graph: each flippable edge
            // yields one in-edge via a backward flip, certified by the
            // forward round trip.
            let mut count = 0usize;
            let mut in_classes: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
            for e in node.graph.edges() {
                if node.graph.is_external(e) {
                    continue;
                }
                let back = backward_flip(&node.graph, e).unwrap();
                let roundtrip = forward_flip(&back.output, e).unwrap();
                assert_eq!(roundtrip.output.canonical_form().unwrap(), node.canon);
                *in_classes
                    .entry(back.output.canonical_form().unwrap())
                    .or_insert(0) += 1;
                count += 1;
            }
            assert_eq!(count, m, "{} node {i}", f.name);
            // Within the ball, the recorded in-edges of this node come
            // exactly from the expanded backward-flip classes (labels are
            // representative-dependent, so compare class multisets).
            let mut recorded: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
            for &(s, t, _) in &ex.edges {
                if t == i {
                    *recorded.entry(ex.nodes[s].canon.clone()).or_insert(0) += 1;
                }
            }
            let expected: BTreeMap<Vec<u8>, usize> = in_classes
                .into_iter()
                .filter(|(c, _)| {
                    canon_index
                        .get(c.as_slice())
                        .is_some_and(|&j| ex.nodes[j].depth < 3)
                })
                .collect();
            assert_eq!(recorded, expected, "{} node {i}", f.name);
        }
    }
}

#[test]
fn exchange_graph_reports_truncation() {
    let g = fixtures::fig11_left().graph;
    let ex0 = exchange_graph(&g, 0).unwrap();
    assert_eq!(ex0.nodes.len(), 1);
    assert!(ex0.truncated);
    let ex = exchange_graph(&g, 2).unwrap();
    assert!(ex.nodes.len() > 1);
}
