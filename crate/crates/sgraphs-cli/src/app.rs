//! Command-line front end: argument parsing, dispatch, and renderers.
//!
//! Exit-code contract: `0` success, `1` malformed input (unreadable files,
//! bad JSON, unknown flags values), `2` precondition violation (valid data
//! the requested operation does not apply to), `3` internal assertion.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sgraphs::algebra::{build_rgb, default_orientation, RgbAlgebra};
use sgraphs::ext::{end_edge, rhom_edges, GradedVectorSpace, RgbScheme};
use sgraphs::fixtures;
use sgraphs::flip::{exchange_graph, flip, FlipDirection};
use sgraphs::graph::{EdgeId, HalfedgeId};
use sgraphs::koszul::{cobar, explicit_dual, reduced_quiver};
use sgraphs::scalar::FieldSpec;
use sgraphs::tilt::{k0_tilt_matrix, tilt_forward_arcs, verify_tilt_equals_flip};
use sgraphs::walk::{walk, wall_edges, CentralCharge, ChamberState, WalkError};
use sgraphs::SGraph;

use crate::dot::{exchange_dot, quiver_dot};
use crate::format;

/// A dispatch failure carrying the exit-code category.
#[derive(Debug)]
pub enum CliError {
    /// Exit 1: the input could not be read or parsed.
    Malformed(String),
    /// Exit 2: the input is well-formed but violates a precondition.
    Precondition(String),
    /// Exit 3: an internal invariant failed.
    Internal(String),
}

impl CliError {
    /// The process exit code for this error.
    pub fn code(&self) -> i32 {
        match self {
            CliError::Malformed(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    /// The message to print on stderr.
    pub fn message(&self) -> &str {
        match self {
            CliError::Malformed(m) | CliError::Precondition(m) | CliError::Internal(m) => m,
        }
    }
}

/// Symbolic computation with S-graphs: validation, flips, exchange graphs,
/// graded Brauer-type dg-algebras, Koszul duals, intersection Homs, simple
/// tilting and chamber walks.
#[derive(Parser, Debug)]
#[command(name = "sgraphs", version, disable_help_subcommand = true)]
pub struct Cli {
    /// Worker threads for parallelizable subcommands (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// The subcommand to run.
    #[command(subcommand)]
    pub command: Command,
}

/// Flip direction flag.
#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum DirArg {
    /// Forward flip / tilt.
    Fwd,
    /// Backward flip / tilt.
    Bwd,
}

impl From<DirArg> for FlipDirection {
    fn from(d: DirArg) -> FlipDirection {
        match d {
            DirArg::Fwd => FlipDirection::Forward,
            DirArg::Bwd => FlipDirection::Backward,
        }
    }
}

/// All subcommands.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check every S-graph axiom and report violations.
    Validate {
        /// Graph file (JSON) or fixture name.
        #[arg(long)]
        graph: String,
    },
    /// Flip an edge and print the result.
    Flip {
        /// Graph file (JSON) or fixture name.
        #[arg(long)]
        graph: String,
        /// Edge to flip, e.g. `e4` (the smaller halfedge id of the edge).
        #[arg(long)]
        edge: String,
        /// Direction.
        #[arg(long, value_enum)]
        dir: DirArg,
        /// Output format.
        #[arg(long, default_value = "summary")]
        emit: String,
    },
    /// Enumerate the exchange graph up to a depth.
    Exchange {
        /// Graph file (JSON) or fixture name.
        #[arg(long)]
        graph: String,
        /// BFS depth limit.
        #[arg(long)]
        depth: usize,
        /// Optional DOT output path.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Build the relative graded Brauer graph dg-algebra.
    Algebra {
        /// Graph file (JSON) or fixture name.
        #[arg(long)]
        graph: String,
        /// Weight parameter (positive; compatible with all vertex degrees).
        #[arg(long)]
        n: u32,
        /// Coefficient field: `q` or `pP` for a prime P (e.g. `p5`).
        #[arg(long, default_value = "q")]
        field: String,
        /// What to print: basis | dims | relations | json.
        #[arg(long, default_value = "dims")]
        emit: String,
    },
    /// Build the Koszul dual and its reduced quiver.
    Koszul {
        /// Graph file (JSON) or fixture name.
        #[arg(long)]
        graph: String,
        /// Weight parameter.
        #[arg(long)]
        n: u32,
        /// What to print: quiver | dot | check.
        #[arg(long, default_value = "quiver")]
        emit: String,
    },
    /// Verify or refute the Calabi–Yau property of the algebra.
    Cy {
        /// Graph file (JSON) or fixture name.
        #[arg(long)]
        graph: String,
        /// Weight parameter.
        #[arg(long)]
        n: u32,
        /// Coefficient field: `q` or `pP`.
        #[arg(long, default_value = "q")]
        field: String,
    },
    /// Graded morphism spaces: intersection formula vs. algebra oracle.
    Ext {
        /// Graph file (JSON) or fixture name.
        #[arg(long)]
        graph: String,
        /// Weight parameter.
        #[arg(long)]
        n: u32,
        /// `all` or a single ordered pair `e0,e4`.
        #[arg(long, default_value = "all")]
        pairs: String,
        /// What to print: table | json.
        #[arg(long, default_value = "table")]
        emit: String,
    },
    /// Simple tilting at an edge: arcs, K₀ matrix, or full report.
    Tilt {
        /// Graph file (JSON) or fixture name.
        #[arg(long)]
        graph: String,
        /// Edge to tilt at.
        #[arg(long)]
        edge: String,
        /// Direction.
        #[arg(long, value_enum)]
        dir: DirArg,
        /// What to print: arcs | k0 | report.
        #[arg(long, default_value = "report")]
        emit: String,
        /// Weight parameter of the grading scheme.
        #[arg(long, default_value_t = 3)]
        n: u32,
    },
    /// Walk a straight line between central charges, flipping at walls.
    Walk {
        /// Graph file (JSON) or fixture name.
        #[arg(long)]
        graph: String,
        /// Starting central charge (JSON file).
        #[arg(long)]
        z: PathBuf,
        /// Target central charge (JSON file).
        #[arg(long)]
        target: PathBuf,
        /// Initial number of path segments.
        #[arg(long, default_value_t = 16)]
        steps: usize,
        /// Wall tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Weight parameter of the grading scheme.
        #[arg(long, default_value_t = 3)]
        n: u32,
        /// What to print: log | json.
        #[arg(long, default_value = "log")]
        emit: String,
    },
    /// List or export the bundled fixture graphs.
    Fixtures {
        /// Print the fixture names and descriptions.
        #[arg(long)]
        list: bool,
        /// Write every fixture as `<name>.json` into this directory.
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

fn load_graph(spec: &str) -> Result<SGraph, CliError> {
    let path = Path::new(spec);
    if path.exists() {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Malformed(format!("cannot read {spec}: {e}")))?;
        return format::from_json(&text).map_err(|e| CliError::Malformed(e.to_string()));
    }
    let stem = spec.strip_suffix(".json").unwrap_or(spec);
    fixtures::all()
        .into_iter()
        .find(|f| f.name == stem)
        .map(|f| f.graph)
        .ok_or_else(|| CliError::Malformed(format!("no such file or fixture: {spec}")))
}

fn parse_edge(g: &SGraph, s: &str) -> Result<EdgeId, CliError> {
    let digits = s.strip_prefix('e').unwrap_or(s);
    let id: u32 = digits
        .parse()
        .map_err(|_| CliError::Malformed(format!("edge {s:?} is not of the form eK")))?;
    let e = EdgeId(HalfedgeId(id));
    g.check_edge(e)
        .map_err(|err| CliError::Precondition(err.to_string()))?;
    Ok(e)
}

fn parse_field(s: &str) -> Result<FieldSpec, CliError> {
    if s == "q" {
        return Ok(FieldSpec::Q);
    }
    if let Some(p) = s.strip_prefix('p') {
        let p: u64 = p
            .parse()
            .map_err(|_| CliError::Malformed(format!("field {s:?} is not q or pP")))?;
        if p < 2 || (2..p).any(|d| d * d <= p && p % d == 0) {
            return Err(CliError::Malformed(format!("{p} is not prime")));
        }
        return Ok(FieldSpec::Fp(p));
    }
    Err(CliError::Malformed(format!("field {s:?} is not q or pP")))
}

fn build_algebra(g: &SGraph, n: u32, field: FieldSpec) -> Result<RgbAlgebra, CliError> {
    let orient = default_orientation(g);
    build_rgb(g, n, field, &orient).map_err(|e| CliError::Precondition(e.to_string()))
}

/// Graded dims of the cohomology of the `e → h` slice of the algebra, the
/// independent oracle displayed next to the intersection formula.
fn slice_cohomology(a: &RgbAlgebra, e: EdgeId, h: EdgeId) -> GradedVectorSpace {
    let mut dims: BTreeMap<i64, i64> = BTreeMap::new();
    for x in a.basis() {
        if a.source_edge(x) != e || a.target_edge(x) != h {
            continue;
        }
        *dims.entry(a.degree(x)).or_insert(0) += 1;
        if a.differential(x).is_some() {
            *dims.entry(a.degree(x)).or_insert(0) -= 1;
            *dims.entry(a.degree(x) + 1).or_insert(0) -= 1;
        }
    }
    let mut out = GradedVectorSpace::zero();
    for (k, v) in dims {
        assert!(v >= 0, "differential is not injective on the slice");
        out.add(k, v as usize);
    }
    out
}

/// On-disk central charge: `{"format": 1, "z": {"e0": [re, im], …}}`.
#[derive(Serialize, Deserialize)]
struct ChargeFile {
    format: u32,
    z: BTreeMap<String, (f64, f64)>,
}

fn load_charge(path: &Path, g: &SGraph) -> Result<Vec<Complex64>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("cannot read {}: {e}", path.display())))?;
    let file: ChargeFile =
        serde_json::from_str(&text).map_err(|e| CliError::Malformed(e.to_string()))?;
    if file.format != 1 {
        return Err(CliError::Malformed(format!(
            "unsupported charge format {}",
            file.format
        )));
    }
    g.edges()
        .into_iter()
        .map(|e| {
            file.z
                .get(&e.to_string())
                .map(|&(re, im)| Complex64::new(re, im))
                .ok_or_else(|| CliError::Malformed(format!("charge file misses {e}")))
        })
        .collect()
}

/// Runs a parsed command, writing to `out`. Returns the lines' exit code.
pub fn run(cli: Cli, out: &mut String) -> Result<(), CliError> {
    if cli.threads > 0 {
        // A second build attempt in one process is harmless (tests).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match cli.command {
        Command::Validate { graph } => {
            let g = load_graph(&graph)?;
            let report = g.validate();
            if report.is_valid() {
                writeln!(out, "valid").unwrap();
                Ok(())
            } else {
                for v in &report.violations {
                    writeln!(out, "violation: {v}").unwrap();
                }
                Err(CliError::Precondition(format!(
                    "{} violated invariant(s)",
                    report.violations.len()
                )))
            }
        }
        Command::Flip { graph, edge, dir, emit } => {
            let g = load_graph(&graph)?;
            let e = parse_edge(&g, &edge)?;
            let rec = flip(&g, e, dir.into())
                .map_err(|err| CliError::Precondition(err.to_string()))?;
            match emit.as_str() {
                "summary" => {
                    writeln!(
                        out,
                        "flipped {e} ({:?}); moved {:?}; grading shift {}",
                        rec.direction, rec.moved, rec.grading_shift
                    )
                    .unwrap();
                    Ok(())
                }
                "json" => {
                    writeln!(out, "{}", format::to_json(&rec.output)).unwrap();
                    Ok(())
                }
                other => Err(CliError::Malformed(format!("unknown emit {other:?}"))),
            }
        }
        Command::Exchange { graph, depth, dot } => {
            let g = load_graph(&graph)?;
            let ex = exchange_graph(&g, depth)
                .map_err(|err| CliError::Precondition(err.to_string()))?;
            writeln!(
                out,
                "nodes {}; edges {}; m {}; truncated {}",
                ex.nodes.len(),
                ex.edges.len(),
                ex.m,
                ex.truncated
            )
            .unwrap();
            if let Some(path) = dot {
                fs::write(&path, exchange_dot(&ex))
                    .map_err(|e| CliError::Malformed(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(())
        }
        Command::Algebra { graph, n, field, emit } => {
            let g = load_graph(&graph)?;
            let field = parse_field(&field)?;
            let a = build_algebra(&g, n, field)?;
            match emit.as_str() {
                "basis" => {
                    for x in a.basis() {
                        writeln!(
                            out,
                            "{x}  degree {}  {} -> {}",
                            a.degree(x),
                            a.source_edge(x),
                            a.target_edge(x)
                        )
                        .unwrap();
                    }
                    Ok(())
                }
                "dims" => {
                    for ((k, e, h), d) in a.dims() {
                        writeln!(out, "deg {k}  {e} -> {h}  dim {d}").unwrap();
                    }
                    Ok(())
                }
                "relations" => {
                    for x in a.basis() {
                        if let Some((s, y)) = a.differential(x) {
                            writeln!(out, "d({x}) = {}·{y}", s.render()).unwrap();
                        }
                    }
                    for x in a.basis() {
                        for y in a.basis() {
                            if let Some((s, z)) = a.multiply(x, y) {
                                writeln!(out, "{x}·{y} = {}·{z}", s.render()).unwrap();
                            }
                        }
                    }
                    Ok(())
                }
                "json" => {
                    #[derive(Serialize)]
                    struct Gen {
                        name: String,
                        degree: i64,
                        src: String,
                        tgt: String,
                        differential: Option<(String, String)>,
                    }
                    #[derive(Serialize)]
                    struct Doc {
                        format: u32,
                        n: u32,
                        basis: Vec<Gen>,
                        products: Vec<(String, String, String, String)>,
                    }
                    let basis = a
                        .basis()
                        .iter()
                        .map(|x| Gen {
                            name: x.to_string(),
                            degree: a.degree(x),
                            src: a.source_edge(x).to_string(),
                            tgt: a.target_edge(x).to_string(),
                            differential: a
                                .differential(x)
                                .map(|(s, y)| (s.render(), y.to_string())),
                        })
                        .collect();
                    let mut products = Vec::new();
                    for x in a.basis() {
                        for y in a.basis() {
                            if let Some((s, z)) = a.multiply(x, y) {
                                products.push((
                                    x.to_string(),
                                    y.to_string(),
                                    s.render(),
                                    z.to_string(),
                                ));
                            }
                        }
                    }
                    let doc = Doc { format: 1, n, basis, products };
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap()).unwrap();
                    Ok(())
                }
                other => Err(CliError::Malformed(format!("unknown emit {other:?}"))),
            }
        }
        Command::Koszul { graph, n, emit } => {
            let g = load_graph(&graph)?;
            let a = build_algebra(&g, n, FieldSpec::Q)?;
            match emit.as_str() {
                "quiver" => {
                    let q = reduced_quiver(&a);
                    for arrow in &q.arrows {
                        writeln!(
                            out,
                            "{}: {} -> {}  degree {}",
                            arrow.label, arrow.src, arrow.tgt, arrow.degree
                        )
                        .unwrap();
                    }
                    Ok(())
                }
                "dot" => {
                    write!(out, "{}", quiver_dot(&reduced_quiver(&a))).unwrap();
                    Ok(())
                }
                "check" => {
                    let cb = cobar(&a);
                    let ex = explicit_dual(&a);
                    cb.check().map_err(CliError::Internal)?;
                    ex.check().map_err(CliError::Internal)?;
                    if cb != ex {
                        return Err(CliError::Internal(
                            "generic cobar and explicit dual differ".into(),
                        ));
                    }
                    writeln!(out, "cobar ok; explicit dual ok; equal").unwrap();
                    Ok(())
                }
                other => Err(CliError::Malformed(format!("unknown emit {other:?}"))),
            }
        }
        Command::Cy { graph, n, field } => {
            let g = load_graph(&graph)?;
            let field = parse_field(&field)?;
            let a = build_algebra(&g, n, field)?;
            if let Some(ob) = a.refute_cy() {
                writeln!(
                    out,
                    "CY refuted: vertex {:?} has odd degree (|s| = {}, |t| = {}), \
                     so the pairing cannot be graded symmetric",
                    ob.vertex, ob.s_degree, ob.t_degree
                )
                .unwrap();
                return Ok(());
            }
            let report = a
                .verify_cy()
                .map_err(|e| CliError::Precondition(e.to_string()))?;
            writeln!(
                out,
                "dimension {}; trace symmetric {}; pairing rank {}",
                report.dimension, report.symmetric, report.rank
            )
            .unwrap();
            if report.is_cy {
                writeln!(out, "CY verified").unwrap();
            } else {
                writeln!(out, "not CY").unwrap();
            }
            Ok(())
        }
        Command::Ext { graph, n, pairs, emit } => {
            let g = load_graph(&graph)?;
            let scheme = RgbScheme { n };
            if !scheme.positivity_check(&g) {
                return Err(CliError::Precondition(format!(
                    "scheme n = {n} is not positive on this graph"
                )));
            }
            let a = build_algebra(&g, n, FieldSpec::Q)?;
            let edges = g.edges();
            let wanted: Vec<(EdgeId, EdgeId)> = if pairs == "all" {
                edges
                    .iter()
                    .flat_map(|&e| edges.iter().map(move |&h| (e, h)))
                    .collect()
            } else {
                let (e, h) = pairs
                    .split_once(',')
                    .ok_or_else(|| CliError::Malformed(format!("pairs {pairs:?} is not all or e,h")))?;
                vec![(parse_edge(&g, e)?, parse_edge(&g, h)?)]
            };
            use rayon::prelude::*;
            let rows: Vec<(EdgeId, EdgeId, GradedVectorSpace, GradedVectorSpace)> = wanted
                .par_iter()
                .map(|&(e, h)| {
                    let formula = if e == h {
                        end_edge(&g, &scheme, e)
                    } else {
                        rhom_edges(&g, &scheme, e, h)
                    };
                    (e, h, formula, slice_cohomology(&a, e, h))
                })
                .collect();
            match emit.as_str() {
                "table" => {
                    for (e, h, formula, oracle) in &rows {
                        writeln!(
                            out,
                            "{e} -> {h}  formula {formula}  algebra {oracle}  match {}",
                            formula == oracle
                        )
                        .unwrap();
                    }
                    Ok(())
                }
                "json" => {
                    #[derive(Serialize)]
                    struct Row {
                        from: String,
                        to: String,
                        formula: BTreeMap<i64, usize>,
                        algebra: BTreeMap<i64, usize>,
                        matches: bool,
                    }
                    let doc: Vec<Row> = rows
                        .iter()
                        .map(|(e, h, f, o)| Row {
                            from: e.to_string(),
                            to: h.to_string(),
                            formula: f.iter().collect(),
                            algebra: o.iter().collect(),
                            matches: f == o,
                        })
                        .collect();
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap()).unwrap();
                    Ok(())
                }
                other => Err(CliError::Malformed(format!("unknown emit {other:?}"))),
            }
        }
        Command::Tilt { graph, edge, dir, emit, n } => {
            let g = load_graph(&graph)?;
            let e = parse_edge(&g, &edge)?;
            let scheme = RgbScheme { n };
            if !scheme.positivity_check(&g) {
                return Err(CliError::Precondition(format!(
                    "scheme n = {n} is not positive on this graph"
                )));
            }
            let direction: FlipDirection = dir.into();
            match emit.as_str() {
                "arcs" => {
                    match direction {
                        FlipDirection::Forward => {
                            let coll = tilt_forward_arcs(&g, &scheme, e);
                            for arc in &coll.arcs {
                                writeln!(
                                    out,
                                    "slot {}: edges {:?}, gradings {:?}, shift {}, smoothings {}",
                                    arc.slot,
                                    arc.arc.edges,
                                    arc.arc.gradings,
                                    arc.shift,
                                    arc.smoothings.len()
                                )
                                .unwrap();
                            }
                        }
                        FlipDirection::Backward => {
                            // Backward arcs are the forward arcs of the tilt
                            // this one undoes; emit the class vectors instead.
                            let m = k0_tilt_matrix(&g, &scheme, e, direction);
                            let edges = g.edges();
                            for (x, col) in edges.iter().enumerate() {
                                let class: Vec<i64> = m.iter().map(|row| row[x]).collect();
                                writeln!(out, "slot {col}: class {class:?}").unwrap();
                            }
                        }
                    }
                    Ok(())
                }
                "k0" => {
                    let m = k0_tilt_matrix(&g, &scheme, e, direction);
                    for row in &m {
                        writeln!(out, "{row:?}").unwrap();
                    }
                    Ok(())
                }
                "report" => {
                    // The forward report verifies the arc collection against
                    // the flip; the backward one round-trips through the
                    // backward flip and checks the matrices are inverse.
                    match direction {
                        FlipDirection::Forward => {
                            let rec = verify_tilt_equals_flip(&g, &scheme, e)
                                .map_err(|err| CliError::Precondition(err.to_string()))?;
                            writeln!(
                                out,
                                "tilt = flip verified at {e}; moved {:?}; grading shift {}",
                                rec.moved, rec.grading_shift
                            )
                            .unwrap();
                        }
                        FlipDirection::Backward => {
                            let rec = flip(&g, e, direction)
                                .map_err(|err| CliError::Precondition(err.to_string()))?;
                            verify_tilt_equals_flip(&rec.output, &scheme, e)
                                .map_err(|err| CliError::Internal(err.to_string()))?;
                            let fwd = k0_tilt_matrix(&rec.output, &scheme, e, FlipDirection::Forward);
                            let bwd = k0_tilt_matrix(&g, &scheme, e, FlipDirection::Backward);
                            let nn = fwd.len();
                            for i in 0..nn {
                                for j in 0..nn {
                                    let prod: i64 =
                                        (0..nn).map(|k| bwd[i][k] * fwd[k][j]).sum();
                                    if prod != i64::from(i == j) {
                                        return Err(CliError::Internal(
                                            "backward·forward K₀ matrices are not inverse".into(),
                                        ));
                                    }
                                }
                            }
                            writeln!(
                                out,
                                "backward tilt at {e} verified (round trip through the \
                                 backward flip; K₀ matrices mutually inverse)"
                            )
                            .unwrap();
                        }
                    }
                    Ok(())
                }
                other => Err(CliError::Malformed(format!("unknown emit {other:?}"))),
            }
        }
        Command::Walk { graph, z, target, steps, tol, n, emit } => {
            let g = load_graph(&graph)?;
            let scheme = RgbScheme { n };
            if !scheme.positivity_check(&g) {
                return Err(CliError::Precondition(format!(
                    "scheme n = {n} is not positive on this graph"
                )));
            }
            let z0 = load_charge(&z, &g)?;
            let zt = load_charge(&target, &g)?;
            let state = ChamberState::new(g, CentralCharge { values: z0 })
                .map_err(|e| CliError::Malformed(e.to_string()))?;
            let out_state = walk(&state, &scheme, &zt, steps, tol).map_err(|e| match e {
                WalkError::BadInput(m) => CliError::Malformed(m),
                WalkError::PerturbPath => {
                    CliError::Precondition("simultaneous wall crossing: perturb path".into())
                }
                WalkError::ZeroCharge(edge) => {
                    CliError::Precondition(format!("central charge of {edge} vanishes on the path"))
                }
                WalkError::Flip(err) => CliError::Precondition(err.to_string()),
            })?;
            match emit.as_str() {
                "log" => {
                    for step in &out_state.flips {
                        writeln!(
                            out,
                            "crossed wall of {} ({:?})",
                            step.edge, step.direction
                        )
                        .unwrap();
                    }
                    writeln!(
                        out,
                        "{} flips; in chamber {}; walls {:?}",
                        out_state.flips.len(),
                        out_state.in_chamber(tol),
                        wall_edges(&out_state, tol)
                    )
                    .unwrap();
                    Ok(())
                }
                "json" => {
                    #[derive(Serialize)]
                    struct Doc {
                        format: u32,
                        flips: Vec<(String, String)>,
                        z: BTreeMap<String, (f64, f64)>,
                        base_change: Vec<Vec<i64>>,
                        graph: format::SGraphFile,
                    }
                    let doc = Doc {
                        format: 1,
                        flips: out_state
                            .flips
                            .iter()
                            .map(|s| (s.edge.to_string(), format!("{:?}", s.direction)))
                            .collect(),
                        z: out_state
                            .graph
                            .edges()
                            .iter()
                            .zip(&out_state.z.values)
                            .map(|(e, z)| (e.to_string(), (z.re, z.im)))
                            .collect(),
                        base_change: out_state.base_change.clone(),
                        graph: format::encode(&out_state.graph),
                    };
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap()).unwrap();
                    Ok(())
                }
                other => Err(CliError::Malformed(format!("unknown emit {other:?}"))),
            }
        }
        Command::Fixtures { list, write } => {
            if !list && write.is_none() {
                return Err(CliError::Malformed(
                    "fixtures needs --list and/or --write DIR".into(),
                ));
            }
            if list {
                for f in fixtures::all() {
                    writeln!(out, "{}  —  {}", f.name, f.about).unwrap();
                }
            }
            if let Some(dir) = write {
                fs::create_dir_all(&dir)
                    .map_err(|e| CliError::Malformed(format!("cannot create {}: {e}", dir.display())))?;
                for f in fixtures::all() {
                    let path = dir.join(format!("{}.json", f.name));
                    fs::write(&path, format::to_json(&f.graph)).map_err(|e| {
                        CliError::Malformed(format!("cannot write {}: {e}", path.display()))
                    })?;
                }
                writeln!(out, "wrote {} fixtures to {}", fixtures::all().len(), dir.display())
                    .unwrap();
            }
            Ok(())
        }
    }
}
