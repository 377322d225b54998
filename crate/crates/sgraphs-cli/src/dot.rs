//! Stable-ordered DOT exporters for quivers and exchange graphs.

use sgraphs::flip::ExchangeGraph;
use sgraphs::koszul::{edge_number, ReducedQuiver};

/// Renders the reduced Koszul-dual quiver. Nodes are the S-graph edges in
/// id order; every arrow is labeled with its display name and degree, in
/// the quiver's stable arrow order, so identical inputs give identical
/// output bytes.
pub fn quiver_dot(q: &ReducedQuiver) -> String {
    let mut out = String::from("digraph koszul {\n");
    for v in &q.vertices {
        out.push_str(&format!("  v{0} [label=\"{0}\"];\n", edge_number(*v)));
    }
    for a in &q.arrows {
        out.push_str(&format!(
            "  v{} -> v{} [label=\"{} ({})\"];\n",
            edge_number(a.src),
            edge_number(a.tgt),
            a.label,
            a.degree
        ));
    }
    out.push_str("}\n");
    out
}

/// Renders an exchange graph. Nodes are in canonical-form order (the order
/// of `ex.nodes`), labeled with their BFS depth; each directed edge is
/// labeled with the flipped edge.
pub fn exchange_dot(ex: &ExchangeGraph) -> String {
    let mut out = String::from("digraph exchange {\n");
    for (i, node) in ex.nodes.iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"depth {}\"];\n", node.depth));
    }
    let mut edges = ex.edges.clone();
    edges.sort_by_key(|&(a, b, e)| (a, b, e));
    for (a, b, e) in edges {
        out.push_str(&format!("  n{a} -> n{b} [label=\"{e}\"];\n"));
    }
    out.push_str("}\n");
    out
}
