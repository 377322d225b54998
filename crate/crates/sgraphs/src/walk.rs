//! Central charges on edges, wall detection, and chamber walks.
//!
//! A *central charge* assigns a complex number `Z(e)` to every edge of an
//! S-graph and extends linearly to integer combinations of edge classes. A
//! state is inside its chamber when every `Z(e)` lies in the open upper half
//! plane or on the negative real axis; the *wall* attached to an edge is the
//! locus where `Z(e)` becomes a positive real number. Crossing the wall of
//! `e` tilts the heart: the graph flips at `e` (forward when `Z(e)` leaves
//! the upper half plane downwards, backward when it returns) and the charge
//! is rebased onto the new edge classes through [`k0_tilt_matrix`].
//!
//! [`walk`] follows the straight line between two charges, subdividing it
//! adaptively so that each piece crosses at most one wall, and records every
//! flip together with the accumulated base change on classes. Only this
//! combinatorial skeleton — chambers and their codimension-one walls — is
//! modeled; everything is double-precision floating point with an explicit
//! tolerance, since the chamber coordinates are analytic and generic paths
//! stay clear of higher-codimension strata.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::ext::RgbScheme;
use crate::flip::{flip, FlipDirection, FlipError};
use crate::graph::{EdgeId, SGraph};
use crate::tilt::k0_tilt_matrix;

/// Default floating tolerance for wall detection and degeneracy checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Absolute value without `std` (no NaN handling beyond propagation).
fn fabs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

/// A central charge: one complex value per edge, aligned with `g.edges()`.
///
/// Values of edges currently in the heart are expected to lie in the open
/// upper half plane or on the negative real axis; [`wall_edges`] reports the
/// edges that have drifted onto the positive real axis instead.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralCharge {
    /// `values[i]` is `Z` of `g.edges()[i]`.
    pub values: Vec<Complex64>,
}

impl CentralCharge {
    /// The charge of a class written in the edge basis.
    pub fn of_class(&self, class: &[i64]) -> Complex64 {
        assert_eq!(class.len(), self.values.len(), "class length");
        let mut z = Complex64::new(0.0, 0.0);
        for (c, v) in class.iter().zip(&self.values) {
            z += Complex64::new(*c as f64, 0.0) * v;
        }
        z
    }
}

/// One wall crossing performed during a walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipStep {
    /// The edge whose wall was crossed.
    pub edge: EdgeId,
    /// Forward when `Z(e)` left the upper half plane downwards, backward
    /// when it came back up.
    pub direction: FlipDirection,
}

/// A point of the chamber structure: a graph, a charge on its edges, and the
/// history accumulated since the state was created.
#[derive(Debug, Clone)]
pub struct ChamberState {
    /// The current S-graph.
    pub graph: SGraph,
    /// The current central charge on `graph.edges()`.
    pub z: CentralCharge,
    /// Accumulated base change: row `i` expresses the class of the current
    /// edge `graph.edges()[i]` in the edge basis the state started with, so
    /// `z.values = base_change · z₀.values`. Identity at creation; back at
    /// the identity after a walk and its reversal.
    pub base_change: Vec<Vec<i64>>,
    /// Every wall crossing performed so far, in order.
    pub flips: Vec<FlipStep>,
}

/// Failures of charge manipulation and walking.
#[derive(Debug, Clone, PartialEq)]
pub enum WalkError {
    /// Input shapes or parameters are malformed.
    BadInput(String),
    /// Two walls are crossed simultaneously within tolerance; the caller
    /// should perturb the path.
    PerturbPath,
    /// Some `Z(e)` vanishes on the path (the charge degenerates).
    ZeroCharge(EdgeId),
    /// A wall crossing demanded an impossible flip.
    Flip(FlipError),
}

impl fmt::Display for WalkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WalkError::BadInput(m) => write!(f, "bad input: {m}"),
            WalkError::PerturbPath => write!(f, "simultaneous wall crossing: perturb path"),
            WalkError::ZeroCharge(e) => write!(f, "central charge of {e} vanishes on the path"),
            WalkError::Flip(e) => write!(f, "flip failed: {e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for WalkError {}

impl From<FlipError> for WalkError {
    fn from(e: FlipError) -> Self {
        WalkError::Flip(e)
    }
}

impl ChamberState {
    /// Starts a state with an identity base change and an empty flip log.
    pub fn new(graph: SGraph, z: CentralCharge) -> Result<ChamberState, WalkError> {
        let n = graph.edges().len();
        if z.values.len() != n {
            return Err(WalkError::BadInput(format!(
                "charge has {} values for {} edges",
                z.values.len(),
                n
            )));
        }
        let base_change = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        Ok(ChamberState {
            graph,
            z,
            base_change,
            flips: Vec::new(),
        })
    }

    /// Whether every edge charge lies strictly inside the allowed support:
    /// upper half plane at least `tol` above the real axis, or on the
    /// negative real axis at least `tol` left of the origin.
    pub fn in_chamber(&self, tol: f64) -> bool {
        self.z.values.iter().all(|z| {
            z.im > tol || (fabs(z.im) < tol && z.re < -tol)
        })
    }
}

/// The edges whose charge sits on a wall: `|Im Z(e)| < tol` and
/// `Re Z(e) > 0`. The negative real axis is allowed support, not a wall.
pub fn wall_edges(state: &ChamberState, tol: f64) -> Vec<EdgeId> {
    assert!(tol > 0.0, "tolerance must be positive");
    state
        .graph
        .edges()
        .into_iter()
        .zip(&state.z.values)
        .filter(|(_, z)| fabs(z.im) < tol && z.re > 0.0)
        .map(|(e, _)| e)
        .collect()
}

/// Rescales the charge by a nonzero complex number, without flipping. The
/// result may have left its chamber (e.g. `λ = −1` maps the upper half plane
/// to the lower one); check [`ChamberState::in_chamber`] afterwards.
pub fn c_action(state: &ChamberState, lambda: Complex64) -> Result<ChamberState, WalkError> {
    if lambda.re == 0.0 && lambda.im == 0.0 {
        return Err(WalkError::BadInput(String::from("λ must be nonzero")));
    }
    let mut out = state.clone();
    for z in &mut out.z.values {
        *z *= lambda;
    }
    Ok(out)
}

/// Applies the transpose of a class matrix to a charge vector: when column
/// `x` of `m` is the class of the new edge `x` in the old basis, linearity
/// gives the new charge `z'[x] = Σ_r m[r][x]·z[r]`.
fn rebase(m: &[Vec<i64>], z: &[Complex64]) -> Vec<Complex64> {
    let n = z.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (x, o) in out.iter_mut().enumerate() {
        for (r, zr) in z.iter().enumerate() {
            *o += Complex64::new(m[r][x] as f64, 0.0) * zr;
        }
    }
    out
}

fn mat_mul_i64(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn transpose(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
}

/// The charge along the straight-line path at parameter `t`, expressed in
/// the current edge basis through the local base change.
fn charge_at(local: &[Vec<i64>], z0: &[Complex64], z1: &[Complex64], t: f64) -> Vec<Complex64> {
    let path: Vec<Complex64> = z0
        .iter()
        .zip(z1)
        .map(|(a, b)| a * (1.0 - t) + b * t)
        .collect();
    let n = path.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (i, o) in out.iter_mut().enumerate() {
        for (j, p) in path.iter().enumerate() {
            if local[i][j] != 0 {
                *o += Complex64::new(local[i][j] as f64, 0.0) * p;
            }
        }
    }
    out
}

/// Hard cap on recursive bisection: beyond this the crossings are
/// indistinguishable at double precision and the path must be perturbed.
const MAX_DEPTH: u32 = 60;

/// Walks the straight line from the state's charge to `target` (given in the
/// state's *current* edge basis), flipping at every wall crossed.
///
/// The path is first cut into `steps` uniform segments and each segment is
/// bisected until it crosses at most one wall. When `Z(e)` leaves the
/// support the graph flips at `e` — forward through `ℝ_{>0}`, backward
/// through `ℝ_{<0}`, where the once-shifted simple lives (a reverse path
/// recrosses a forward wall on the negative ray, because the crossing
/// negated the class of `e`) — and the charge, the base change and the
/// flip log are updated through the class matrix of the tilt. Errors:
/// walls crossed simultaneously within tolerance ([`WalkError::PerturbPath`]),
/// a charge vanishing on the path ([`WalkError::ZeroCharge`]), or a crossing
/// at an unflippable edge ([`WalkError::Flip`]).
pub fn walk(
    state: &ChamberState,
    scheme: &RgbScheme,
    target: &[Complex64],
    steps: usize,
    tol: f64,
) -> Result<ChamberState, WalkError> {
    if steps == 0 {
        return Err(WalkError::BadInput(String::from("steps must be positive")));
    }
    if tol <= 0.0 {
        return Err(WalkError::BadInput(String::from("tolerance must be positive")));
    }
    let n = state.z.values.len();
    if target.len() != n {
        return Err(WalkError::BadInput(format!(
            "target has {} values for {} edges",
            target.len(),
            n
        )));
    }
    let z0 = state.z.values.clone();
    let z1: Vec<Complex64> = target.to_vec();
    // Base change from the walk-start basis to the current basis.
    let mut local: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut out = state.clone();

    // Segments still to traverse, in order; `skip` suppresses re-detecting
    // the crossing a segment starts on (rounding leaves the just-flipped
    // charge a few ulps on either side of the axis). Bisection pushes
    // halves back.
    let mut segments: Vec<(f64, f64, u32, Option<usize>)> = Vec::with_capacity(steps);
    for k in (0..steps).rev() {
        let a = k as f64 / steps as f64;
        let b = (k + 1) as f64 / steps as f64;
        segments.push((a, b, 0, None));
    }
    let mut guard = 0usize;
    while let Some((t0, t1, depth, skip)) = segments.pop() {
        guard += 1;
        if guard > 1_000_000 {
            return Err(WalkError::PerturbPath);
        }
        let za = charge_at(&local, &z0, &z1, t0);
        let zb = charge_at(&local, &z0, &z1, t1);
        let edges = out.graph.edges();
        // Sign changes of Im Z(e) on this segment, with the crossing
        // parameter. Both rays of the real axis are support boundaries:
        // crossing ℝ_{>0} tilts forward, crossing ℝ_{<0} (where the shifted
        // simple lives) tilts backward.
        let mut crossings: Vec<(usize, f64)> = Vec::new();
        for i in 0..n {
            let (ia, ib) = (za[i].im, zb[i].im);
            // A sign change is a crossing; an exact zero at the segment end
            // is a wall hit handled here so the next segment (which starts
            // on the wall) can skip it. Transversality is assumed.
            if ia == 0.0 || (ia * ib >= 0.0 && ib != 0.0) {
                continue;
            }
            let tc = if ib == 0.0 {
                t1
            } else {
                t0 + (t1 - t0) * ia / (ia - ib)
            };
            if skip == Some(i) && tc - t0 < 1e-12 {
                continue;
            }
            let zc = charge_at(&local, &z0, &z1, tc);
            if fabs(zc[i].re) <= tol {
                return Err(WalkError::ZeroCharge(edges[i]));
            }
            crossings.push((i, tc));
        }
        crossings.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite parameters"));
        match crossings.len() {
            0 => {}
            1 => {
                let (i, tc) = crossings[0];
                let e = edges[i];
                // Leaving the support downwards through ℝ_{>0} is the
                // forward wall; through ℝ_{<0} it is the backward one.
                // Upward crossings (only possible out of chamber) mirror.
                let zc = charge_at(&local, &z0, &z1, tc);
                let downward = za[i].im > 0.0;
                let dir = if downward == (zc[i].re > 0.0) {
                    FlipDirection::Forward
                } else {
                    FlipDirection::Backward
                };
                let m = k0_tilt_matrix(&out.graph, scheme, e, dir);
                let rec = flip(&out.graph, e, dir)?;
                out.graph = rec.output;
                out.z.values = rebase(&m, &charge_at(&local, &z0, &z1, tc));
                let mt = transpose(&m);
                local = mat_mul_i64(&mt, &local);
                out.base_change = mat_mul_i64(&mt, &out.base_change);
                out.flips.push(FlipStep { edge: e, direction: dir });
                // Resume just past the crossing, in the new chamber.
                segments.push((tc, t1, depth, Some(i)));
            }
            _ => {
                if depth >= MAX_DEPTH
                    || crossings.windows(2).any(|w| fabs(w[0].1 - w[1].1) < tol)
                {
                    return Err(WalkError::PerturbPath);
                }
                let mid = (t0 + t1) / 2.0;
                segments.push((mid, t1, depth + 1, None));
                segments.push((t0, mid, depth + 1, skip));
            }
        }
    }
    out.z.values = charge_at(&local, &z0, &z1, 1.0);
    Ok(out)
}
