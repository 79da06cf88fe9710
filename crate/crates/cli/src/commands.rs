//! Subcommands and their text output.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use skelsnub::analysis::{solve_uniformity, validate, vertex_figure_shape, SolverOptions};
use skelsnub::catalog::{catalog, CatalogEntry};
use skelsnub::converse::{self, ConverseError};
use skelsnub::geometry::classify_fixed_set;
use skelsnub::group::DEFAULT_CAP;
use skelsnub::snub::build_catalog_snub;
use skelsnub::{FiniteGroup, SkeletalPolyhedron, Vector3};

use crate::obj::export_obj;
use crate::record::SnubRecord;
use crate::reproduce::{reproduce, shape_name};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    BadInput(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failure(_) => 1,
            CliError::BadInput(_) => 2,
        }
    }
}

/// Text for stdout and the exit status.
#[derive(Debug, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

#[derive(Debug, Parser)]
#[command(name = "skelsnub", version, about = "Snubs of finite regular polyhedra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Generator {
    S0,
    S1,
    S2,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Catalog entries with orders and the fixed set of s0.
    List,
    /// Build a snub and print its JSON record.
    Snub {
        #[arg(long)]
        poly: String,
        /// `x,y,z`, `seed`, `uniform` or `uniform:k`.
        #[arg(long, default_value = "seed")]
        vertex: String,
        /// Project the vertex onto the fixed set of this generator.
        #[arg(long, value_enum)]
        degenerate: Option<Generator>,
        /// Write the record here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        obj: Option<PathBuf>,
    },
    /// Validate and analyze a JSON record.
    Analyze { file: PathBuf },
    /// Acceptable roots of the uniformity equations.
    Uniformity {
        #[arg(long)]
        poly: String,
    },
    /// Recover the rotations and the parent of a snub-type polyhedron.
    Reconstruct { file: PathBuf },
    /// Regenerate a snub table and compare with expected rows.
    Reproduce {
        /// 7 for genuine snubs, 8 for degenerate snubs.
        #[arg(long)]
        section: u8,
        /// JSON file of expected rows replacing the built-in table.
        #[arg(long)]
        expected: Option<PathBuf>,
    },
    /// Write a JSON record as OBJ.
    Export {
        file: PathBuf,
        #[arg(long)]
        obj: PathBuf,
    },
}

pub fn apply_tolerance_env(value: Option<String>) -> Result<(), CliError> {
    if let Some(text) = value {
        let tol: f64 = text
            .parse()
            .ok()
            .filter(|t: &f64| t.is_finite() && *t > 0.0)
            .ok_or_else(|| CliError::BadInput(format!("SKELSNUB_TOL must be a positive number, got {text:?}")))?;
        skelsnub::geometry::set_point_tolerance(tol);
    }
    Ok(())
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::List => Ok(Outcome::ok(cmd_list())),
        Command::Snub {
            poly,
            vertex,
            degenerate,
            json,
            obj,
        } => cmd_snub(&poly, &vertex, degenerate, json.as_deref(), obj.as_deref()),
        Command::Analyze { file } => cmd_analyze(&file),
        Command::Uniformity { poly } => cmd_uniformity(&poly),
        Command::Reconstruct { file } => cmd_reconstruct(&file),
        Command::Reproduce { section, expected } => cmd_reproduce(section, expected.as_deref()),
        Command::Export { file, obj } => {
            let poly = read_record(&file)?.polyhedron();
            write_file(&obj, &export_obj(&poly))?;
            Ok(Outcome::ok(format!("wrote {}\n", obj.display())))
        }
    }
}

fn entry(name: &str) -> Result<&'static CatalogEntry, CliError> {
    skelsnub::lookup(name).map_err(|e| CliError::BadInput(e.to_string()))
}

fn group(e: &CatalogEntry) -> Result<FiniteGroup, CliError> {
    FiniteGroup::close(&e.gens, DEFAULT_CAP).map_err(|e| CliError::Failure(e.to_string()))
}

fn read_record(path: &Path) -> Result<SnubRecord, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))?;
    SnubRecord::from_json(&text).map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))
}

pub fn cmd_list() -> String {
    let mut out = format!("{:<12} {:>5} {:>5} {:>6} {:>7}  {}\n", "name", "p", "q", "order", "index2", "s0");
    for e in catalog() {
        let order = FiniteGroup::close(&e.gens, DEFAULT_CAP).map(|g| g.order()).unwrap_or(0);
        let s0 = match classify_fixed_set(&e.gens.s0) {
            skelsnub::geometry::FixedSetKind::Plane { .. } => "plane reflection",
            skelsnub::geometry::FixedSetKind::Line { .. } => "half-turn",
            other => other.label(),
        };
        writeln!(
            out,
            "{:<12} {:>5} {:>5} {:>6} {:>7}  {}",
            e.name(),
            e.spec.p.to_string(),
            e.spec.q.to_string(),
            order,
            e.spec.index2,
            s0
        )
        .unwrap();
    }
    out
}

fn parse_vertex(spec: &str, e: &CatalogEntry, g: &FiniteGroup) -> Result<Vector3, CliError> {
    if spec == "seed" {
        return Ok(e.cone.seed);
    }
    if let Some(rest) = spec.strip_prefix("uniform") {
        let k: usize = match rest.strip_prefix(':') {
            Some(k) => k.parse().map_err(|_| CliError::BadInput(format!("bad root index {k:?}")))?,
            None if rest.is_empty() => 0,
            None => return Err(CliError::BadInput(format!("bad vertex {spec:?}"))),
        };
        let roots = solve_uniformity(e, g, &SolverOptions::default());
        return roots
            .get(k)
            .map(|r| r.vertex)
            .ok_or_else(|| CliError::Failure(format!("{} has {} acceptable roots; no root {k}", e.name(), roots.len())));
    }
    let parts: Vec<f64> = spec
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::BadInput(format!("bad vertex {spec:?}")))?;
    match parts[..] {
        [x, y, z] if parts.iter().all(|t| t.is_finite()) => Ok(Vector3::new(x, y, z)),
        _ => Err(CliError::BadInput(format!("vertex needs three finite coordinates, got {spec:?}"))),
    }
}

fn cmd_snub(
    poly: &str,
    vertex: &str,
    degenerate: Option<Generator>,
    json: Option<&Path>,
    obj: Option<&Path>,
) -> Result<Outcome, CliError> {
    let e = entry(poly)?;
    let g = group(e)?;
    let mut v = parse_vertex(vertex, e, &g)?;
    if let Some(generator) = degenerate {
        let s = match generator {
            Generator::S0 => e.gens.s0,
            Generator::S1 => e.gens.s1,
            Generator::S2 => e.gens.s2,
        };
        v = classify_fixed_set(&s)
            .project(&v)
            .ok_or_else(|| CliError::Failure(format!("{generator:?} has no fixed points")))?;
    }
    let snub = build_catalog_snub(e, &g, v).map_err(|e| CliError::Failure(e.to_string()))?;
    let record = SnubRecord::new(&snub);
    let text = record.to_json() + "\n";
    if let Some(path) = obj {
        write_file(path, &export_obj(&snub))?;
    }
    let stdout = match json {
        Some(path) => {
            write_file(path, &text)?;
            summary(&snub, &record)
        }
        None => text,
    };
    let code = if validate(&snub).passed() { 0 } else { 1 };
    Ok(Outcome { stdout, code })
}

fn summary(poly: &SkeletalPolyhedron, record: &SnubRecord) -> String {
    let a = &record.analysis;
    let mut out = String::new();
    if let Some(name) = &record.name {
        writeln!(out, "name: {name}").unwrap();
    }
    if let Some(v) = record.vertex {
        writeln!(out, "vertex: {:?}", v).unwrap();
    }
    if let Some(t) = &record.type_set {
        writeln!(out, "type set: {t:?}").unwrap();
    }
    writeln!(out, "fvector: {}", skelsnub::analysis::FVector::from(&a.fvector)).unwrap();
    writeln!(out, "euler: {}", a.euler).unwrap();
    writeln!(out, "symbol: {}", a.symbol.as_deref().unwrap_or("not constant")).unwrap();
    let orientable = a.orientable.map_or("undefined".to_string(), |o| o.to_string());
    writeln!(out, "orientable: {orientable}").unwrap();
    if let Some(r) = a.residuals {
        writeln!(out, "residuals: {:e} {:e}", r[0], r[1]).unwrap();
    }
    if poly.vertices.iter().enumerate().all(|(v, _)| vertex_figure_shape(poly, v).is_ok()) && !poly.vertices.is_empty() {
        let shape = vertex_figure_shape(poly, 0).expect("checked");
        writeln!(out, "vertex figure: {}", shape_name(shape)).unwrap();
    }
    out
}

fn cmd_analyze(path: &Path) -> Result<Outcome, CliError> {
    let record = read_record(path)?;
    let poly = record.polyhedron();
    let report = validate(&poly);
    let mut out = String::new();
    writeln!(out, "edge graph components: {}", report.edge_graph_components).unwrap();
    writeln!(out, "disconnected vertex figures: {:?}", report.disconnected_vertex_figures()).unwrap();
    writeln!(out, "edges not in two faces: {:?}", report.bad_edges).unwrap();
    writeln!(out, "faces with missing edges: {:?}", report.unsupported_faces).unwrap();
    writeln!(out, "valid: {}", report.passed()).unwrap();
    if report.passed() {
        out += &summary(&poly, &SnubRecord::new(&poly));
    }
    Ok(Outcome {
        stdout: out,
        code: if report.passed() { 0 } else { 1 },
    })
}

fn cmd_uniformity(name: &str) -> Result<Outcome, CliError> {
    let e = entry(name)?;
    let g = group(e)?;
    let roots = solve_uniformity(e, &g, &SolverOptions::default());
    let mut out = format!("{}: {} acceptable roots\n", e.name(), roots.len());
    for (k, r) in roots.iter().enumerate() {
        let symbol = r.symbol.as_ref().map_or("?".into(), |s| s.to_string());
        writeln!(
            out,
            "{k}: ({:.12}, {:.12}, {:.12}) residuals {:.1e} {:.1e} symbol {}{}",
            r.vertex.x,
            r.vertex.y,
            r.vertex.z,
            r.residual.0,
            r.residual.1,
            symbol,
            if r.ambiguous { " (ambiguous)" } else { "" }
        )
        .unwrap();
    }
    Ok(Outcome::ok(out))
}

fn cmd_reconstruct(path: &Path) -> Result<Outcome, CliError> {
    let poly = read_record(path)?.polyhedron();
    if !validate(&poly).passed() {
        return Err(CliError::Failure("input is not a polyhedron".into()));
    }
    match converse::reconstruct(&poly) {
        Ok(r) => {
            let mut out = String::new();
            writeln!(out, "rotation group order: {}", r.group.order()).unwrap();
            if let Some(i) = r.index {
                writeln!(out, "index in symmetry group: {i}").unwrap();
            }
            writeln!(out, "stabilizer orders: {:?} expected {:?}", r.stabilizers.found, r.stabilizers.expected).unwrap();
            let (v, e, f) = r.counts();
            writeln!(out, "parent: {v} vertices, {e} edges, {f} faces").unwrap();
            writeln!(out, "parent valid: {}", r.parent_valid).unwrap();
            writeln!(out, "round trip isomorphic: {}", r.round_trip_isomorphic).unwrap();
            let ok = r.parent_valid && r.round_trip_isomorphic;
            Ok(Outcome {
                stdout: out,
                code: if ok { 0 } else { 1 },
            })
        }
        Err(e @ (ConverseError::NotSnubType | ConverseError::PreconditionViolated(_))) => {
            Err(CliError::BadInput(e.to_string()))
        }
        Err(e) => Err(CliError::Failure(e.to_string())),
    }
}

fn cmd_reproduce(section: u8, expected: Option<&Path>) -> Result<Outcome, CliError> {
    let text = match expected {
        Some(p) => Some(std::fs::read_to_string(p).map_err(|e| CliError::BadInput(format!("{}: {e}", p.display())))?),
        None => None,
    };
    let rows = reproduce(section, text.as_deref()).map_err(CliError::BadInput)?;
    let mut out = String::new();
    for row in &rows {
        if row.passed() {
            writeln!(out, "OK       {}", row.name).unwrap();
        } else {
            writeln!(out, "MISMATCH {}", row.name).unwrap();
            for d in &row.diffs {
                writeln!(out, "    {d}").unwrap();
            }
        }
    }
    let failed = rows.iter().filter(|r| !r.passed()).count();
    writeln!(out, "{} rows, {} mismatches", rows.len(), failed).unwrap();
    Ok(Outcome {
        stdout: out,
        code: if failed == 0 { 0 } else { 1 },
    })
}
