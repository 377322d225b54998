//! Algebra tests: an independent brute-force oracle for the graded
//! dimensions, dg-axiom checks, and the Calabi–Yau (non)structure.
//!
//! The oracle builds the presented quiver algebra from scratch: it
//! enumerates all arrow words up to the maximal basis degree, prunes words
//! containing a monomially-zero junction (edge crossings between arrow
//! paths, `τ²`, and boundary-loop/internal-path junctions of mixed edges),
//! spans the remaining relations (cycle identifications, loop
//! commutation, loop identifications, socle truncation) in context, and
//! row-reduces. The resulting graded dimensions per (degree, source,
//! target) must agree exactly with the closed-form basis.

use std::collections::BTreeMap;

use sgraphs::algebra::{build_rgb, default_orientation, BasisElt, RgbAlgebra};
use sgraphs::fixtures;
use sgraphs::gen::{random_sgraph, GenParams, Rng};
use sgraphs::graph::EdgeId;
use sgraphs::scalar::{FieldSpec, Matrix};
use sgraphs::{HalfedgeId, SGraph, VertexKind};

/// A quiver arrow of the presentation: a corner arrow or a boundary loop.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Arrow {
    /// The corner arrow out of halfedge `h` (towards `succ h`).
    A(HalfedgeId),
    /// The boundary loop at halfedge `h`.
    T(HalfedgeId),
}

struct Oracle<'g> {
    g: &'g SGraph,
    n: u32,
}

impl<'g> Oracle<'g> {
    fn src_edge(&self, a: Arrow) -> EdgeId {
        match a {
            Arrow::A(h) | Arrow::T(h) => self.g.edge_of(h),
        }
    }

    fn tgt_edge(&self, a: Arrow) -> EdgeId {
        match a {
            Arrow::A(h) => self.g.edge_of(self.g.succ(h).unwrap()),
            Arrow::T(h) => self.g.edge_of(h),
        }
    }

    fn deg(&self, a: Arrow) -> i64 {
        match a {
            Arrow::A(h) => self.g.corner_to_succ(h).unwrap() as i64,
            Arrow::T(_) => self.n as i64 - 1,
        }
    }

    fn arrows(&self) -> Vec<Arrow> {
        let mut out = Vec::new();
        for h in self.g.halfedges() {
            if self.g.succ(h).is_some() && self.g.corner_to_succ(h).is_some() {
                out.push(Arrow::A(h));
            }
            if !self.g.is_internal(self.g.vertex_of(h)) {
                out.push(Arrow::T(h));
            }
        }
        out
    }

    /// Monomially-zero junction `u` then `v`: such a word lies in the
    /// relation ideal outright and is treated as zero.
    fn pruned_junction(&self, u: Arrow, v: Arrow) -> bool {
        let g = self.g;
        match (u, v) {
            (Arrow::A(i), Arrow::A(j)) => {
                // Crossing the shared edge between two arrow paths.
                g.succ(i).unwrap() != j
            }
            (Arrow::A(i), Arrow::T(j)) => {
                let s = g.succ(i).unwrap();
                // τ after an internal arrow path (mixed edge): zero.
                // τ after a boundary arrow at the same vertex: fine.
                s != j && g.is_internal(g.vertex_of(s))
            }
            (Arrow::T(j), Arrow::A(i)) => {
                // Internal arrow path after τ (mixed edge): zero.
                i != j && g.is_internal(g.vertex_of(i))
            }
            (Arrow::T(i), Arrow::T(j)) => i == j, // τ² = 0.
        }
    }

    fn word_valid(&self, w: &[Arrow]) -> bool {
        w.windows(2).all(|p| {
            self.tgt_edge(p[0]) == self.src_edge(p[1]) && !self.pruned_junction(p[0], p[1])
        })
    }

    fn word_deg(&self, w: &[Arrow]) -> i64 {
        w.iter().map(|&a| self.deg(a)).sum()
    }

    /// All unpruned nonempty words of degree ≤ `dmax`.
    fn words(&self, dmax: i64) -> Vec<Vec<Arrow>> {
        let arrows = self.arrows();
        let mut out: Vec<Vec<Arrow>> = Vec::new();
        let mut stack: Vec<Vec<Arrow>> = arrows
            .iter()
            .filter(|&&a| self.deg(a) <= dmax)
            .map(|&a| vec![a])
            .collect();
        while let Some(w) = stack.pop() {
            let last = *w.last().unwrap();
            for &a in &arrows {
                if self.src_edge(a) == self.tgt_edge(last)
                    && !self.pruned_junction(last, a)
                    && self.word_deg(&w) + self.deg(a) <= dmax
                {
                    let mut w2 = w.clone();
                    w2.push(a);
                    stack.push(w2);
                }
            }
            out.push(w);
        }
        out
    }

    /// The full corner-cycle word based at internal halfedge `h`, wound
    /// `n/m` times (degree `n`).
    fn cycle_word(&self, h: HalfedgeId) -> Vec<Arrow> {
        let g = self.g;
        let m = g.internal_degree(g.vertex_of(h));
        let mut w = Vec::new();
        let mut cur = h;
        for _ in 0..(self.n / m) * g.valency(g.vertex_of(h)) as u32 {
            w.push(Arrow::A(cur));
            cur = g.succ(cur).unwrap();
        }
        assert_eq!(cur, h);
        w
    }

    /// Homogeneous relation elements as lists of `(coefficient, word)`.
    fn relations(&self) -> Vec<Vec<(i64, Vec<Arrow>)>> {
        let g = self.g;
        let n = self.n as i64;
        let mut out = Vec::new();
        let sign = |k: i64| if k.rem_euclid(2) == 0 { 1 } else { -1 };
        for h in g.halfedges() {
            let t = g.tau(h);
            let internal = g.is_internal(g.vertex_of(h));
            if internal {
                // Socle truncation: the cycle followed by its own arrow.
                let mut w = self.cycle_word(h);
                w.push(Arrow::A(h));
                out.push(vec![(1, w)]);
                // Cycle identification across an internal-internal edge.
                if t > h && g.is_internal(g.vertex_of(t)) {
                    out.push(vec![
                        (1, self.cycle_word(h)),
                        (-sign(n - 1), self.cycle_word(t)),
                    ]);
                }
            } else {
                // Loop commutation at a boundary corner.
                if let (Some(s), Some(d)) = (g.succ(h), g.corner_to_succ(h)) {
                    out.push(vec![
                        (1, vec![Arrow::T(h), Arrow::A(h)]),
                        (-sign(d as i64), vec![Arrow::A(h), Arrow::T(s)]),
                    ]);
                }
                // Loop identification across a boundary-boundary edge.
                if t > h && !g.is_internal(g.vertex_of(t)) {
                    out.push(vec![(1, vec![Arrow::T(h)]), (-sign(n), vec![Arrow::T(t)])]);
                }
            }
        }
        out
    }

    /// Graded dimensions `(degree, src, tgt) → dim` of the quotient, for
    /// all degrees up to `dmax`.
    fn dims(&self, dmax: i64) -> BTreeMap<(i64, EdgeId, EdgeId), usize> {
        let words = self.words(dmax);
        // Group words by signature.
        let mut groups: BTreeMap<(i64, EdgeId, EdgeId), Vec<Vec<Arrow>>> = BTreeMap::new();
        for w in words {
            let key = (
                self.word_deg(&w),
                self.src_edge(w[0]),
                self.tgt_edge(*w.last().unwrap()),
            );
            groups.entry(key).or_default().push(w);
        }
        // Contexts: left/right compositions by unpruned words (and empty).
        let rels = self.relations();
        let mut dims: BTreeMap<(i64, EdgeId, EdgeId), usize> = BTreeMap::new();
        for e in self.g.edges() {
            dims.insert((0, e, e), 1); // idempotent units
        }
        let field = FieldSpec::Q;
        for (&(d, s, t), ws) in &groups {
            let index: BTreeMap<&[Arrow], usize> = ws
                .iter()
                .enumerate()
                .map(|(i, w)| (w.as_slice(), i))
                .collect();
            // Build relation rows landing in this block.
            let mut rows: Vec<Vec<(usize, i64)>> = Vec::new();
            for rel in &rels {
                let rd = self.word_deg(&rel[0].1);
                let rsrc = self.src_edge(rel[0].1[0]);
                let rtgt = self.tgt_edge(*rel[0].1.last().unwrap());
                // All (u, v) context words (possibly empty) with
                // u : rtgt → t and v : s → rsrc and deg(u)+deg(v) = d − rd.
                let mut lefts: Vec<Vec<Arrow>> = vec![Vec::new()];
                let mut rights: Vec<Vec<Arrow>> = vec![Vec::new()];
                for (k, ws2) in &groups {
                    if k.0 <= d - rd {
                        if k.1 == rtgt {
                            lefts.extend(ws2.iter().cloned());
                        }
                        if k.2 == rsrc {
                            rights.extend(ws2.iter().cloned());
                        }
                    }
                }
                for u in &lefts {
                    if !u.is_empty() && self.tgt_edge(*u.last().unwrap()) != t {
                        continue;
                    }
                    if u.is_empty() && rtgt != t {
                        continue;
                    }
                    for v in &rights {
                        if self.word_deg(u) + self.word_deg(v) != d - rd {
                            continue;
                        }
                        if !v.is_empty() && self.src_edge(v[0]) != s {
                            continue;
                        }
                        if v.is_empty() && rsrc != s {
                            continue;
                        }
                        let mut row: Vec<(usize, i64)> = Vec::new();
                        let mut nontrivial = false;
                        for (coef, mid) in rel {
                            let mut w: Vec<Arrow> = v.clone();
                            w.extend_from_slice(mid);
                            w.extend_from_slice(u);
                            if self.word_valid(&w) {
                                row.push((index[w.as_slice()], *coef));
                                nontrivial = true;
                            }
                        }
                        if nontrivial {
                            rows.push(row);
                        }
                    }
                }
            }
            let mut mat = Matrix::zero(field, rows.len().max(1), ws.len());
            for (r, row) in rows.iter().enumerate() {
                for &(c, coef) in row {
                    let cur = mat.at(r, c).add(&field.from_int(coef));
                    mat.set(r, c, cur);
                }
            }
            let dim = ws.len() - mat.rank();
            if dim > 0 {
                dims.insert((d, s, t), dim);
            }
        }
        dims
    }
}

fn check_against_oracle(g: &SGraph, n: u32) {
    let a = build_rgb(g, n, FieldSpec::Q, &default_orientation(g)).unwrap();
    let basis_dims = a.dims();
    let dmax = a
        .basis()
        .iter()
        .map(|x| a.degree(x))
        .max()
        .unwrap_or(0);
    let oracle = Oracle { g, n };
    let oracle_dims = oracle.dims(dmax);
    assert_eq!(
        basis_dims, oracle_dims,
        "graded dimension mismatch for n = {n}"
    );
}

#[test]
fn oracle_agrees_on_fixtures() {
    for f in fixtures::all() {
        let n = f.min_n.max(2);
        check_against_oracle(&f.graph, n);
    }
}

#[test]
fn oracle_agrees_on_random_graphs() {
    let mut rng = Rng::new(314);
    for &n in &[2u32, 3, 4, 6] {
        let params = GenParams {
            max_edges: 4,
            allow_boundary: true,
            compatible_with: Some(n),
        };
        for _ in 0..12 {
            let g = random_sgraph(&mut rng, &params);
            check_against_oracle(&g, n);
        }
    }
}

#[test]
fn dg_axioms_hold_on_fixtures_and_random_graphs() {
    for f in fixtures::all() {
        let a = build_rgb(
            &f.graph,
            f.min_n.max(1),
            FieldSpec::Q,
            &default_orientation(&f.graph),
        )
        .unwrap();
        a.check_dg().unwrap_or_else(|e| panic!("{}: {e}", f.name));
    }
    let mut rng = Rng::new(777);
    for &n in &[1u32, 2, 3, 4, 6] {
        let params = GenParams {
            max_edges: 6,
            allow_boundary: true,
            compatible_with: Some(n),
        };
        for _ in 0..8 {
            let g = random_sgraph(&mut rng, &params);
            let a = build_rgb(&g, n, FieldSpec::Q, &default_orientation(&g)).unwrap();
            a.check_dg().unwrap();
        }
    }
}

#[test]
fn torus_is_three_cy() {
    let g = fixtures::torus().graph;
    let a = build_rgb(&g, 3, FieldSpec::Q, &default_orientation(&g)).unwrap();
    let report = a.verify_cy().unwrap();
    assert!(report.symmetric);
    assert_eq!(report.rank, report.dimension);
    assert!(report.is_cy);
    assert!(a.refute_cy().is_none());
    // Graded-dimension symmetry under the pairing: dim A^d = dim A^{n−d}.
    let mut by_deg: BTreeMap<i64, usize> = BTreeMap::new();
    for x in a.basis() {
        *by_deg.entry(a.degree(x)).or_insert(0) += 1;
    }
    for (&d, &c) in &by_deg {
        assert_eq!(by_deg.get(&(3 - d)), Some(&c), "degree {d}");
    }
}

#[test]
fn even_cy_with_orientation() {
    // One vertex, two nested loops: degree 4, orientable; n = 4.
    let g = SGraph::from_parts(
        vec![VertexKind::Internal],
        vec![2, 3, 0, 1],
        vec![0, 0, 0, 0],
        vec![vec![0, 2, 1, 3]],
        vec![vec![1, 1, 1, 1]],
    );
    let orient = g.find_orientation().unwrap();
    let a = build_rgb(&g, 4, FieldSpec::Q, &orient).unwrap();
    let report = a.verify_cy().unwrap();
    assert!(report.is_cy, "{report:?}");
}

#[test]
fn refutation_for_even_n_with_odd_vertex() {
    let g = fixtures::fig12().graph;
    let a = build_rgb(&g, 4, FieldSpec::Q, &default_orientation(&g)).unwrap();
    let w = a.refute_cy().expect("expected an obstruction witness");
    assert_eq!(w.s_degree % 2, 1);
    assert_eq!(w.t_degree % 2, 1);
    assert_eq!(w.s_degree + w.t_degree, 4);
    // In characteristic 2 the argument does not apply.
    let a2 = build_rgb(&g, 4, FieldSpec::Fp(2), &default_orientation(&g)).unwrap();
    assert!(a2.refute_cy().is_none());
    // Odd n: no obstruction from this criterion.
    let t = fixtures::torus().graph;
    let a3 = build_rgb(&t, 3, FieldSpec::Q, &default_orientation(&t)).unwrap();
    assert!(a3.refute_cy().is_none());
}

#[test]
fn boundary_graph_refuses_cy_verification() {
    let g = fixtures::fig11_left().graph;
    let a = build_rgb(&g, 3, FieldSpec::Q, &default_orientation(&g)).unwrap();
    assert!(a.verify_cy().is_err());
}

#[test]
fn basis_degree_table_spot_checks() {
    let g = fixtures::fig11_left().graph;
    let a = build_rgb(&g, 3, FieldSpec::Q, &default_orientation(&g)).unwrap();
    for x in a.basis() {
        match x {
            BasisElt::E(_) => assert_eq!(a.degree(x), 0),
            BasisElt::C(_) => assert_eq!(a.degree(x), 3),
            BasisElt::Tau(_) => assert_eq!(a.degree(x), 2),
            BasisElt::B { i, j } => {
                assert_eq!(a.degree(x), a.graph().d_ext(*j, *i).unwrap() as i64 + 2)
            }
            _ => {}
        }
    }
    // Units act as units.
    sanity_units(&a);
}

fn sanity_units(a: &RgbAlgebra) {
    for x in a.basis() {
        let e_t = BasisElt::E(a.target_edge(x));
        let e_s = BasisElt::E(a.source_edge(x));
        let (s, z) = a.multiply(&e_t, x).unwrap();
        assert!(!s.is_zero());
        assert_eq!(z, *x);
        let (s, z) = a.multiply(x, &e_s).unwrap();
        assert!(!s.is_zero());
        assert_eq!(z, *x);
    }
}
