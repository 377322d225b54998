//! Versioned JSON file format for S-graphs.
//!
//! Schema (`"format": 1`):
//!
//! ```json
//! {
//!   "format": 1,
//!   "vertices":  [ { "id": 0, "kind": "internal" }, … ],
//!   "halfedges": [ { "id": 0, "vertex": 0, "partner": 1 }, … ],
//!   "order":     { "0": [0, 4], … },
//!   "corners":   [ { "at": 0, "from": 0, "to": 4, "d": 2 }, … ]
//! }
//! ```
//!
//! `partner` equal to the halfedge's own id encodes an external edge. The
//! `order` map lists the halfedges at each vertex counterclockwise (cyclic
//! at internal vertices, total at boundary ones), and each corner gives the
//! degree `d` between a halfedge and its successor — every successive pair
//! at an internal vertex (wrapping around) and every non-wrapping pair at a
//! boundary vertex must appear exactly once.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sgraphs::{SGraph, VertexKind};
use thiserror::Error;

/// The schema version this module reads and writes.
pub const FORMAT_VERSION: u32 = 1;

/// A vertex record.
#[derive(Debug, Serialize, Deserialize)]
pub struct VertexRecord {
    /// Dense vertex id.
    pub id: u32,
    /// `"internal"` or `"boundary"`.
    pub kind: String,
}

/// A halfedge record; `partner == id` encodes an external edge.
#[derive(Debug, Serialize, Deserialize)]
pub struct HalfedgeRecord {
    /// Dense halfedge id.
    pub id: u32,
    /// The vertex the halfedge is attached to.
    pub vertex: u32,
    /// The other halfedge of the same edge, or `id` itself.
    pub partner: u32,
}

/// A corner record: degree `d` from `from` to its successor `to` at vertex
/// `at`.
#[derive(Debug, Serialize, Deserialize)]
pub struct CornerRecord {
    /// The vertex the corner sits at.
    pub at: u32,
    /// The halfedge the corner starts after (counterclockwise).
    pub from: u32,
    /// The successor halfedge.
    pub to: u32,
    /// The corner degree (positive).
    pub d: u32,
}

/// The on-disk S-graph document.
#[derive(Debug, Serialize, Deserialize)]
pub struct SGraphFile {
    /// Schema version; must equal [`FORMAT_VERSION`].
    pub format: u32,
    /// All vertices, ids dense from 0.
    pub vertices: Vec<VertexRecord>,
    /// All halfedges, ids dense from 0.
    pub halfedges: Vec<HalfedgeRecord>,
    /// Counterclockwise halfedge order at each vertex (keys are vertex ids
    /// rendered as strings, for JSON-object compatibility).
    pub order: BTreeMap<String, Vec<u32>>,
    /// All corners.
    pub corners: Vec<CornerRecord>,
}

/// Reasons a document cannot be decoded into an S-graph.
#[derive(Debug, Error)]
pub enum FormatError {
    /// The document is not the supported schema version.
    #[error("unsupported format version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    /// A structural field is inconsistent.
    #[error("malformed S-graph file: {0}")]
    Malformed(String),
}

/// Encodes a graph into the versioned document.
pub fn encode(g: &SGraph) -> SGraphFile {
    let vertices = g
        .vertices()
        .map(|v| VertexRecord {
            id: v.idx() as u32,
            kind: match g.kind(v) {
                VertexKind::Internal => "internal".into(),
                VertexKind::Boundary => "boundary".into(),
            },
        })
        .collect();
    let halfedges = g
        .halfedges()
        .map(|h| HalfedgeRecord {
            id: h.0,
            vertex: g.vertex_of(h).idx() as u32,
            partner: g.tau(h).0,
        })
        .collect();
    let mut order = BTreeMap::new();
    let mut corners = Vec::new();
    for v in g.vertices() {
        let at = g.order_at(v);
        order.insert(
            v.idx().to_string(),
            at.iter().map(|h| h.0).collect::<Vec<u32>>(),
        );
        let cs = g.corners_at(v);
        let r = at.len();
        for (k, &d) in cs.iter().enumerate() {
            let to = match g.kind(v) {
                VertexKind::Internal => at[(k + 1) % r],
                VertexKind::Boundary => at[k + 1],
            };
            corners.push(CornerRecord {
                at: v.idx() as u32,
                from: at[k].0,
                to: to.0,
                d,
            });
        }
    }
    SGraphFile {
        format: FORMAT_VERSION,
        vertices,
        halfedges,
        order,
        corners,
    }
}

/// Decodes a document back into an S-graph.
///
/// Checks the schema-level invariants (dense ids, involutive partners,
/// order maps covering exactly the halfedges at each vertex, complete
/// corner lists); deeper S-graph axioms are left to `SGraph::validate`.
pub fn decode(file: &SGraphFile) -> Result<SGraph, FormatError> {
    if file.format != FORMAT_VERSION {
        return Err(FormatError::Version(file.format));
    }
    let nv = file.vertices.len();
    let nh = file.halfedges.len();
    let mut kinds = vec![None; nv];
    for v in &file.vertices {
        let slot = kinds
            .get_mut(v.id as usize)
            .ok_or_else(|| FormatError::Malformed(format!("vertex id {} out of range", v.id)))?;
        if slot.is_some() {
            return Err(FormatError::Malformed(format!("duplicate vertex id {}", v.id)));
        }
        *slot = Some(match v.kind.as_str() {
            "internal" => VertexKind::Internal,
            "boundary" => VertexKind::Boundary,
            other => {
                return Err(FormatError::Malformed(format!(
                    "unknown vertex kind {other:?}"
                )))
            }
        });
    }
    let kinds: Vec<VertexKind> = kinds.into_iter().map(|k| k.unwrap()).collect();

    let mut tau = vec![None; nh];
    let mut sigma = vec![None; nh];
    for h in &file.halfedges {
        let i = h.id as usize;
        if i >= nh || tau[i].is_some() {
            return Err(FormatError::Malformed(format!(
                "halfedge id {} out of range or duplicated",
                h.id
            )));
        }
        if h.partner as usize >= nh {
            return Err(FormatError::Malformed(format!(
                "partner {} of halfedge {} out of range",
                h.partner, h.id
            )));
        }
        if h.vertex as usize >= nv {
            return Err(FormatError::Malformed(format!(
                "vertex {} of halfedge {} out of range",
                h.vertex, h.id
            )));
        }
        tau[i] = Some(h.partner);
        sigma[i] = Some(h.vertex);
    }
    let tau: Vec<u32> = tau.into_iter().map(|x| x.unwrap()).collect();
    let sigma: Vec<u32> = sigma.into_iter().map(|x| x.unwrap()).collect();
    for (i, &p) in tau.iter().enumerate() {
        if tau[p as usize] != i as u32 {
            return Err(FormatError::Malformed(format!(
                "partner map is not an involution at halfedge {i}"
            )));
        }
    }

    let mut order: Vec<Vec<u32>> = vec![Vec::new(); nv];
    for (key, hs) in &file.order {
        let v: usize = key
            .parse()
            .map_err(|_| FormatError::Malformed(format!("order key {key:?} is not a vertex id")))?;
        if v >= nv {
            return Err(FormatError::Malformed(format!("order key {v} out of range")));
        }
        order[v] = hs.clone();
    }
    for (v, hs) in order.iter().enumerate() {
        let mut expected: Vec<u32> = (0..nh as u32).filter(|&h| sigma[h as usize] == v as u32).collect();
        let mut got = hs.clone();
        expected.sort_unstable();
        got.sort_unstable();
        if expected != got {
            return Err(FormatError::Malformed(format!(
                "order at vertex {v} does not list exactly its halfedges"
            )));
        }
    }

    let mut corners: Vec<Vec<u32>> = order
        .iter()
        .enumerate()
        .map(|(v, hs)| {
            let r = hs.len();
            match kinds[v] {
                VertexKind::Internal => vec![0; r],
                VertexKind::Boundary => vec![0; r.saturating_sub(1)],
            }
        })
        .collect();
    let mut seen: Vec<Vec<bool>> = corners.iter().map(|c| vec![false; c.len()]).collect();
    for c in &file.corners {
        let v = c.at as usize;
        if v >= nv {
            return Err(FormatError::Malformed(format!("corner at unknown vertex {}", c.at)));
        }
        let hs = &order[v];
        let k = hs
            .iter()
            .position(|&h| h == c.from)
            .ok_or_else(|| FormatError::Malformed(format!("corner from {} not at vertex {v}", c.from)))?;
        if k >= corners[v].len() {
            return Err(FormatError::Malformed(format!(
                "corner after the last boundary halfedge {} at vertex {v}",
                c.from
            )));
        }
        let succ = hs[(k + 1) % hs.len()];
        if succ != c.to {
            return Err(FormatError::Malformed(format!(
                "corner {} → {} does not follow the order at vertex {v}",
                c.from, c.to
            )));
        }
        if seen[v][k] {
            return Err(FormatError::Malformed(format!(
                "duplicate corner after halfedge {} at vertex {v}",
                c.from
            )));
        }
        seen[v][k] = true;
        corners[v][k] = c.d;
    }
    for (v, s) in seen.iter().enumerate() {
        if s.iter().any(|&x| !x) {
            return Err(FormatError::Malformed(format!(
                "missing corner record at vertex {v}"
            )));
        }
    }

    Ok(SGraph::from_parts(kinds, tau, sigma, order, corners))
}

/// Serializes a graph to pretty JSON.
pub fn to_json(g: &SGraph) -> String {
    serde_json::to_string_pretty(&encode(g)).expect("serializable document")
}

/// Parses JSON into a graph.
pub fn from_json(s: &str) -> Result<SGraph, FormatError> {
    let file: SGraphFile =
        serde_json::from_str(s).map_err(|e| FormatError::Malformed(e.to_string()))?;
    decode(&file)
}
