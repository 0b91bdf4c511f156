//! The `cutlocus` command line: argument parsing, the commands and their
//! JSON reports. Every command prints one pretty-printed JSON document on
//! stdout; figures and field dumps go to the paths given by flags.
//!
//! Exit status: 0 on success, 1 for parse and domain errors, 2 when a
//! verification report fails.

mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::constcurv::{
    realization_svg, realize, verify_realization, GeometryError, Realization, VerifyOptions,
};
use crate::construct::{
    cubic_resolution, enumerate_cl_structures, one_face_embedding, ConstructError,
};
use crate::multigraph::{GraphError, MultiGraph};
use crate::ribbon::{EmbeddingScheme, SchemeError};
use crate::torus_lab::{
    cut_locus_svg, distance_field, extract_cut_locus, locate_transition, stability_scan,
    torus_voronoi_cutlocus, Confidence, CutLocusGraph, FieldOptions, FlatTorus, LocateOptions,
    Point, ScanOptions, TorusError,
};

pub use format::{
    dart_name, graph_json, parse_dart, parse_graph, parse_torus, scheme_json, EdgeJson, GraphInput,
    GraphJson, TorusJson,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Torus(#[from] TorusError),
}

#[derive(Debug, Parser)]
#[command(
    name = "cutlocus",
    version,
    about = "Realize multigraphs as cut loci and run flat-torus stability experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cyclic part, generating cycles, degrees and the stability class.
    Analyze { graph: PathBuf },
    /// A one-face embedding scheme with its boundary walk.
    Strip {
        graph: PathBuf,
        /// Also write the scheme file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All strips on a graph grouped by companion-function equivalence.
    Census {
        graph: PathBuf,
        /// Refuse graphs whose rotation systems exceed this many.
        #[arg(long, default_value_t = 10_000_000)]
        limit: u128,
        /// List the member schemes of every class.
        #[arg(long)]
        members: bool,
    },
    /// Constant-curvature polygon realization and its verification report.
    Realize {
        /// A scheme file, or a graph file (a one-face embedding is built).
        input: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Absolute tolerance for the distance checks.
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Cut loci on flat and bumped tori.
    Torus {
        #[command(subcommand)]
        command: TorusCommand,
    },
    /// Split vertices of degree above three into cubic trees.
    ResolveCubic {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum TorusCommand {
    /// Exact cut locus of a flat torus from its lattice Voronoi cell.
    Voronoi {
        torus: PathBuf,
        #[arg(long, value_parser = parse_point, default_value = "0,0")]
        x: Point,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Numeric distance field and the cut locus extracted from it.
    Field {
        torus: PathBuf,
        #[arg(long, value_parser = parse_point, default_value = "0,0")]
        x: Point,
        #[arg(long, default_value_t = 256)]
        resolution: usize,
        /// Sweep convergence threshold.
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
        /// Write the sampled field as a binary dump.
        #[arg(long)]
        dump: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Degree profile and natural structure along a straight path.
    Scan {
        /// Torus file; omit with --bump-demo.
        torus: Option<PathBuf>,
        /// Use the built-in bumped square torus and its path.
        #[arg(long)]
        bump_demo: bool,
        #[arg(long, value_parser = parse_point)]
        from: Option<Point>,
        #[arg(long, value_parser = parse_point)]
        to: Option<Point>,
        #[arg(long, default_value_t = 11)]
        points: usize,
        #[arg(long, default_value_t = 256)]
        resolution: usize,
        /// Also bisect the first transition down to this fraction of the path.
        #[arg(long)]
        locate: bool,
        #[arg(long, default_value_t = 1e-3)]
        tolerance: f64,
        /// Use the numeric solver even on flat tori.
        #[arg(long)]
        numeric: bool,
    },
}

fn parse_point(s: &str) -> Result<Point, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => {
            let a: f64 = a.parse().map_err(|_| format!("bad coordinate {a:?}"))?;
            let b: f64 = b.parse().map_err(|_| format!("bad coordinate {b:?}"))?;
            Ok([a, b])
        }
        _ => Err(format!("expected two comma-separated numbers, got {s:?}")),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn read_graph(path: &Path) -> Result<GraphInput, CliError> {
    parse_graph(&read(path)?)
}

/// What a command produced: the JSON document and whether every
/// verification it ran passed.
struct Outcome {
    report: serde_json::Value,
    verified: bool,
}

impl From<serde_json::Value> for Outcome {
    fn from(report: serde_json::Value) -> Self {
        Outcome {
            report,
            verified: true,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Stability of the CL-structures on a graph: it depends only on the cyclic
/// part, and a cut locus with that cyclic part is globally stable exactly
/// when the cyclic part is a 3-graph.
pub fn stability_class(g: &MultiGraph) -> &'static str {
    let cp = g.cyclic_part().graph;
    if cp.edge_count() == 0 {
        "no cycles: the cut locus is a tree and carries no CL-structure"
    } else if cp.degree_profile().is_cubic {
        "globally stable class"
    } else {
        "not globally stable"
    }
}

fn analyze(path: &Path) -> Result<Outcome, CliError> {
    let g = read_graph(path)?.graph;
    let cp = g.cyclic_part().graph;
    let profile = g.degree_profile();
    let cp_profile = cp.degree_profile();
    Ok(json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "generating_cycles": g.generating_cycle_count(),
        "degrees": profile.degrees,
        "cubic": profile.is_cubic,
        "constant_order": profile.constant_order,
        "cyclic_part": {
            "vertices": cp.vertex_count(),
            "edges": cp.edge_count(),
            "degrees": cp_profile.degrees,
            "cubic": cp_profile.is_cubic,
            "constant_order": cp_profile.constant_order,
        },
        "stability": stability_class(&g),
        "note": "stability is a property of the CL-structures on the cyclic part, not of the abstract graph",
    })
    .into())
}

fn strip_report(scheme: &EmbeddingScheme) -> Result<serde_json::Value, CliError> {
    let g = scheme.graph();
    let walk: Vec<String> = scheme
        .boundary_walk()?
        .iter()
        .map(|s| dart_name(g, s.dart))
        .collect();
    let mut v = to_value(&scheme_json(scheme));
    v["boundary_walk"] = json!(walk);
    v["surface"] = to_value(&scheme.surface_invariants());
    Ok(v)
}

fn strip(path: &Path, out: Option<&Path>) -> Result<Outcome, CliError> {
    let g = read_graph(path)?.graph;
    let scheme = one_face_embedding(&g)?;
    if let Some(out) = out {
        let text = serde_json::to_string_pretty(&scheme_json(&scheme)).expect("scheme serializes");
        write_file(out, text.as_bytes())?;
    }
    Ok(strip_report(&scheme)?.into())
}

fn census(path: &Path, limit: u128, members: bool) -> Result<Outcome, CliError> {
    let g = read_graph(path)?.graph;
    let c = enumerate_cl_structures(&g, limit)?;
    let classes: Vec<serde_json::Value> = c
        .classes
        .iter()
        .map(|cls| {
            let companion: serde_json::Map<String, serde_json::Value> = (0..g.edge_count())
                .map(|e| {
                    (
                        g.edge_label(e).to_string(),
                        json!(u8::from(cls.companion.value(e))),
                    )
                })
                .collect();
            let mut v = json!({
                "companion": companion,
                "size": cls.members.len(),
                "orientable": cls.members.iter().filter(|&&i| c.schemes[i].is_orientable()).count(),
            });
            if members {
                v["members"] = cls
                    .members
                    .iter()
                    .map(|&i| to_value(&scheme_json(&c.schemes[i])))
                    .collect();
            }
            v
        })
        .collect();
    Ok(json!({
        "rotation_systems_times_signatures": c.bound.to_string(),
        "examined": c.examined.to_string(),
        "cl_structures": c.schemes.len(),
        "class_count": c.classes.len(),
        "classes": classes,
    })
    .into())
}

fn realize_cmd(
    path: &Path,
    svg: Option<&Path>,
    seed: u64,
    tolerance: Option<f64>,
    samples: usize,
) -> Result<Outcome, CliError> {
    let input = read_graph(path)?;
    let scheme = match input.scheme {
        Some(s) => s,
        None => one_face_embedding(&input.graph)?,
    };
    match realize(&input.graph, &scheme)? {
        Realization::Base(p) => Ok(json!({
            "realization": to_value(&Realization::Base(p)),
            "note": "the surface is the sphere or the projective plane; there is no polygon to place",
        })
        .into()),
        Realization::Polygon(r) => {
            let opts = VerifyOptions {
                samples,
                seed,
                tolerance,
                ..VerifyOptions::default()
            };
            let report = verify_realization(&r, &opts);
            if let Some(svg) = svg {
                write_file(svg, realization_svg(&r).as_bytes())?;
            }
            let verified = report.passed;
            Ok(Outcome {
                report: json!({
                    "scheme": to_value(&scheme_json(&scheme)),
                    "realization": to_value(&Realization::Polygon(r)),
                    "verification": to_value(&report),
                }),
                verified,
            })
        }
    }
}

#[derive(Serialize)]
struct VertexReport {
    id: String,
    position: Point,
    degree: usize,
}

/// Serializable summary of a cut locus.
#[derive(Serialize)]
struct CutLocusReport<'a> {
    source: Point,
    exact: bool,
    degree_profile: Vec<usize>,
    cycle_rank: usize,
    total_length: f64,
    epsilon: f64,
    vertices: Vec<VertexReport>,
    edges: Vec<EdgeJson>,
    clns: serde_json::Value,
    clns_orientable: bool,
    confidence: &'a Confidence,
}

fn cut_locus_report(c: &CutLocusGraph) -> serde_json::Value {
    let g = &c.graph;
    let degrees = c.degrees();
    let r = CutLocusReport {
        source: c.source,
        exact: c.exact,
        degree_profile: c.degree_profile(),
        cycle_rank: c.cycle_rank(),
        total_length: c.total_length(),
        epsilon: c.epsilon,
        vertices: (0..g.vertex_count())
            .map(|v| VertexReport {
                id: g.vertex_label(v).to_string(),
                position: c.positions[v],
                degree: degrees[v],
            })
            .collect(),
        edges: graph_json(g).edges,
        clns: to_value(&scheme_json(&c.clns)),
        clns_orientable: c.clns.is_orientable(),
        confidence: &c.confidence,
    };
    to_value(&r)
}

fn torus_cmd(cmd: &TorusCommand) -> Result<Outcome, CliError> {
    match cmd {
        TorusCommand::Voronoi { torus, x, svg } => {
            let t = parse_torus(&read(torus)?)?;
            let c = torus_voronoi_cutlocus(&t, *x)?;
            if let Some(svg) = svg {
                write_file(svg, cut_locus_svg(&c, &t).as_bytes())?;
            }
            Ok(cut_locus_report(&c).into())
        }
        TorusCommand::Field {
            torus,
            x,
            resolution,
            tolerance,
            dump,
            svg,
        } => {
            let t = parse_torus(&read(torus)?)?;
            let opts = FieldOptions {
                resolution: *resolution,
                tolerance: *tolerance,
                ..FieldOptions::default()
            };
            let field = distance_field(&t, *x, &opts)?;
            if let Some(dump) = dump {
                let mut buf = Vec::new();
                field.write_dump(&mut buf).expect("writing to memory");
                write_file(dump, &buf)?;
            }
            let c = extract_cut_locus(&field)?;
            if let Some(svg) = svg {
                write_file(svg, cut_locus_svg(&c, &t).as_bytes())?;
            }
            Ok(json!({
                "resolution": field.resolution(),
                "spacing": field.spacing(),
                "iterations": field.iterations(),
                "residual": field.residual(),
                "cut_locus": cut_locus_report(&c),
            })
            .into())
        }
        TorusCommand::Scan {
            torus,
            bump_demo,
            from,
            to,
            points,
            resolution,
            locate,
            tolerance,
            numeric,
        } => {
            let (t, a, b) = scan_setup(torus.as_deref(), *bump_demo, *from, *to)?;
            if *points < 2 {
                return Err(CliError::Usage("--points must be at least 2".into()));
            }
            let path: Vec<Point> = (0..*points)
                .map(|k| {
                    let s = k as f64 / (*points - 1) as f64;
                    [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])]
                })
                .collect();
            let opts = ScanOptions {
                resolution: *resolution,
                force_numeric: *numeric,
            };
            let report = stability_scan(&t, &path, &opts)?;
            let mut v = json!({ "scan": to_value(&report) });
            if *locate {
                let opts = LocateOptions {
                    resolution: *resolution,
                    tolerance: *tolerance,
                    force_numeric: *numeric,
                };
                v["transition"] = match locate_transition(&t, a, b, &opts) {
                    Ok(loc) => to_value(&loc),
                    Err(TorusError::NoTransition { profile }) => json!({ "none": profile }),
                    Err(e) => return Err(e.into()),
                };
            }
            Ok(v.into())
        }
    }
}

fn scan_setup(
    torus: Option<&Path>,
    bump_demo: bool,
    from: Option<Point>,
    to: Option<Point>,
) -> Result<(FlatTorus, Point, Point), CliError> {
    match (torus, bump_demo) {
        (Some(_), true) => Err(CliError::Usage(
            "give a torus file or --bump-demo, not both".into(),
        )),
        (None, false) => Err(CliError::Usage("give a torus file or --bump-demo".into())),
        (None, true) => {
            let ex = crate::torus_lab::bump_demo();
            Ok((ex.torus, from.unwrap_or(ex.start), to.unwrap_or(ex.end)))
        }
        (Some(path), false) => {
            let t = parse_torus(&read(path)?)?;
            match (from, to) {
                (Some(a), Some(b)) => Ok((t, a, b)),
                _ => Err(CliError::Usage(
                    "--from and --to are required with a torus file".into(),
                )),
            }
        }
    }
}

fn resolve_cubic(path: &Path, out: Option<&Path>) -> Result<Outcome, CliError> {
    let input = read_graph(path)?.graph;
    let r = cubic_resolution(&input)?;
    let gj = graph_json(&r.graph);
    if let Some(out) = out {
        let text = serde_json::to_string_pretty(&gj).expect("graph serializes");
        write_file(out, text.as_bytes())?;
    }
    let g = &r.graph;
    Ok(json!({
        "graph": to_value(&gj),
        "inserted_edges": r.inserted_edges.iter().map(|&e| g.edge_label(e)).collect::<Vec<_>>(),
        "origin": r.origin.iter().map(|&v| input.vertex_label(v)).collect::<Vec<_>>(),
        "cubic": g.degree_profile().is_cubic,
    })
    .into())
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Analyze { graph } => analyze(graph),
        Command::Strip { graph, out } => strip(graph, out.as_deref()),
        Command::Census {
            graph,
            limit,
            members,
        } => census(graph, *limit, *members),
        Command::Realize {
            input,
            svg,
            seed,
            tolerance,
            samples,
        } => realize_cmd(input, svg.as_deref(), *seed, *tolerance, *samples),
        Command::Torus { command } => torus_cmd(command),
        Command::ResolveCubic { graph, out } => resolve_cubic(graph, out.as_deref()),
    }
}

/// Runs one command line and returns the exit status.
pub fn run_with_io<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&o.report).expect("reports serialize")
            );
            if o.verified {
                0
            } else {
                let _ = writeln!(err, "verification failed");
                2
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

/// Runs with the process arguments and standard streams.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
