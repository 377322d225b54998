//! Graph-model tests: validation, canonical forms, extension, and an
//! exhaustive orientation oracle.

use sgraphs::fixtures;
use sgraphs::gen::{random_sgraph, GenParams, Rng};
use sgraphs::graph::EdgeOrientation;
use sgraphs::{SGraph, VertexKind};

/// Rebuilds `g` with permuted vertex ids, permuted halfedge ids and
/// rotated internal cyclic orders; the result is isomorphic by
/// construction.
fn relabel(g: &SGraph, rng: &mut Rng) -> SGraph {
    let nv = g.n_vertices();
    let nh = g.n_halfedges();
    let mut vperm: Vec<usize> = (0..nv).collect();
    let mut hperm: Vec<usize> = (0..nh).collect();
    for i in (1..nv).rev() {
        vperm.swap(i, rng.below(i + 1));
    }
    for i in (1..nh).rev() {
        hperm.swap(i, rng.below(i + 1));
    }
    let mut kinds = vec![VertexKind::Internal; nv];
    let mut order = vec![Vec::new(); nv];
    let mut corners = vec![Vec::new(); nv];
    let mut tau = vec![0u32; nh];
    let mut sigma = vec![0u32; nh];
    for v in g.vertices() {
        let nv_id = vperm[v.idx()];
        kinds[nv_id] = g.kind(v);
        let mut o: Vec<u32> = g.order_at(v).iter().map(|h| hperm[h.idx()] as u32).collect();
        let mut c = g.corners_at(v).to_vec();
        if g.kind(v) == VertexKind::Internal && o.len() > 1 {
            let rot = rng.below(o.len());
            o.rotate_left(rot);
            c.rotate_left(rot);
        }
        order[nv_id] = o;
        corners[nv_id] = c;
    }
    for h in g.halfedges() {
        tau[hperm[h.idx()]] = hperm[g.tau(h).idx()] as u32;
        sigma[hperm[h.idx()]] = vperm[g.vertex_of(h).idx()] as u32;
    }
    SGraph::from_parts(kinds, tau, sigma, order, corners)
}

#[test]
fn canonical_form_is_relabeling_invariant() {
    let mut rng = Rng::new(99);
    for _ in 0..60 {
        let g = random_sgraph(&mut rng, &GenParams::default());
        let canon = g.canonical_form().unwrap();
        for _ in 0..4 {
            let h = relabel(&g, &mut rng);
            assert!(h.validate().is_valid());
            assert_eq!(h.canonical_form().unwrap(), canon);
        }
    }
}

#[test]
fn canonical_form_separates_fixtures() {
    let forms: Vec<Vec<u8>> = fixtures::all()
        .iter()
        .map(|f| f.graph.canonical_form().unwrap())
        .collect();
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            assert_ne!(forms[i], forms[j], "fixtures {i} and {j} collide");
        }
    }
}

#[test]
fn extend_strip_roundtrip() {
    let mut rng = Rng::new(5);
    for _ in 0..40 {
        let g = random_sgraph(&mut rng, &GenParams::default());
        let ext = g.extend().unwrap();
        assert!(ext.graph.validate().is_valid());
        // Every boundary vertex got exactly one trailing virtual halfedge.
        let n_boundary = g
            .vertices()
            .filter(|&v| g.kind(v) == VertexKind::Boundary)
            .count();
        assert_eq!(ext.virtuals.len(), n_boundary);
        let back = ext.strip_virtual();
        assert_eq!(back.canonical_form().unwrap(), g.canonical_form().unwrap());
    }
}

/// The corner-parity condition defining an orientation, checked directly.
fn orientation_ok(g: &SGraph, o: &EdgeOrientation) -> bool {
    g.halfedges().all(|h| match (g.succ(h), g.corner_to_succ(h)) {
        (Some(s), Some(d)) => (o.epsilon(h) + o.epsilon(s)) % 2 == (d % 2) as u8,
        _ => true,
    })
}

#[test]
fn orientation_matches_exhaustive_oracle() {
    let mut rng = Rng::new(31);
    for _ in 0..80 {
        let g = random_sgraph(&mut rng, &GenParams::default());
        let edges = g.edges();
        // Exhaustive search over all direction-bit assignments.
        let oracle_exists = (0u32..1 << edges.len()).any(|mask| {
            let bits: Vec<bool> = (0..edges.len()).map(|k| mask >> k & 1 == 1).collect();
            orientation_ok(&g, &EdgeOrientation::from_bits(&g, bits))
        });
        match g.find_orientation() {
            Ok(o) => {
                assert!(oracle_exists, "found orientation where oracle found none");
                assert!(orientation_ok(&g, &o), "returned orientation is invalid");
            }
            Err(w) => {
                assert!(!oracle_exists, "missed an orientation the oracle found");
                // The witness corners xor to an odd total parity: each edge
                // bit appears an even number of times around the cycle, so
                // no assignment can satisfy all of them.
                let base = |h: sgraphs::HalfedgeId| u8::from(g.edge_of(h).0 != h);
                let mut parity = 0u8;
                let mut edge_uses = std::collections::BTreeMap::new();
                for &(h, s) in &w.witness {
                    let d = g.corner_to_succ(h).unwrap();
                    assert_eq!(g.succ(h), Some(s));
                    parity ^= (d as u8 ^ base(h) ^ base(s)) & 1;
                    *edge_uses.entry(g.edge_of(h)).or_insert(0u32) += 1;
                    *edge_uses.entry(g.edge_of(s)).or_insert(0u32) += 1;
                }
                assert_eq!(parity, 1, "witness cycle is consistent");
                assert!(
                    edge_uses.values().all(|&c| c % 2 == 0),
                    "witness is not a cycle in the constraint graph"
                );
            }
        }
    }
}

#[test]
fn odd_degree_vertex_obstructs_orientation() {
    // Summing the corner constraints around an internal vertex forces its
    // degree to be even, so any odd-degree vertex is an obstruction.
    assert!(fixtures::fig12().graph.find_orientation().is_err());
    assert!(fixtures::torus().graph.find_orientation().is_err());
    // A single vertex with two nested (non-interleaved) loops has degree 4
    // and is orientable.
    let g = SGraph::from_parts(
        vec![VertexKind::Internal],
        vec![2, 3, 0, 1],
        vec![0, 0, 0, 0],
        vec![vec![0, 2, 1, 3]],
        vec![vec![1, 1, 1, 1]],
    );
    assert!(g.validate().is_valid());
    let o = g.find_orientation().unwrap();
    assert!(orientation_ok(&g, &o));
}

#[test]
fn degrees_and_surface_invariants() {
    use sgraphs::graph::VertexDegree;
    let f = fixtures::fig11_left();
    let g = &f.graph;
    for v in g.vertices() {
        match g.kind(v) {
            VertexKind::Internal => {
                assert_eq!(g.vertex_degree(v).unwrap(), VertexDegree::Finite(3))
            }
            VertexKind::Boundary => {
                assert_eq!(g.vertex_degree(v).unwrap(), VertexDegree::Infinite)
            }
        }
    }
    let inv = g.surface_invariants();
    assert_eq!(inv.vertices, 8);
    assert_eq!(inv.edges, 7);
}
