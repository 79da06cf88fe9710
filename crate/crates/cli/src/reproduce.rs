//! Regeneration of the genuine and degenerate snub tables against
//! expected rows.

use serde::{Deserialize, Serialize};
use skelsnub::analysis::{euler, fvector, validate, vertex_figure_shape, vertex_symbols_constant, QuadShape};
use skelsnub::group::DEFAULT_CAP;
use skelsnub::snub::build_catalog_snub;
use skelsnub::{FiniteGroup, Vector3};

pub const GENUINE_ROWS: &str = include_str!("../data/genuine.json");
pub const DEGENERATE_ROWS: &str = include_str!("../data/degenerate.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenuineRow {
    pub name: String,
    pub fvector: Vec<usize>,
    pub euler: i64,
    /// Accepted vertex symbols; the seed snub must realize one.
    pub symbols: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegenerateRow {
    pub name: String,
    pub vertex: [f64; 3],
    pub symbol: String,
    pub shape: String,
    /// `(f₀, f₁, f₂¹, f₂²)`; the face counts compare as a multiset.
    pub counts: [usize; 4],
}

#[derive(Clone, Debug, PartialEq)]
pub struct RowOutcome {
    pub name: String,
    pub diffs: Vec<String>,
}

impl RowOutcome {
    pub fn passed(&self) -> bool {
        self.diffs.is_empty()
    }
}

fn diff<T: PartialEq + std::fmt::Debug>(diffs: &mut Vec<String>, field: &str, expected: T, got: T) {
    if expected != got {
        diffs.push(format!("{field}: expected {expected:?}, got {got:?}"));
    }
}

fn group_for(name: &str) -> Result<(&'static skelsnub::CatalogEntry, FiniteGroup), String> {
    let e = skelsnub::lookup(name).map_err(|e| e.to_string())?;
    let g = FiniteGroup::close(&e.gens, DEFAULT_CAP).map_err(|e| e.to_string())?;
    Ok((e, g))
}

pub fn check_genuine(row: &GenuineRow) -> RowOutcome {
    let mut diffs = Vec::new();
    match group_for(&row.name).and_then(|(e, g)| build_catalog_snub(e, &g, e.cone.seed).map_err(|e| e.to_string())) {
        Err(e) => diffs.push(e),
        Ok(s) => {
            diff(&mut diffs, "fvector", row.fvector.clone(), fvector(&s).slots());
            diff(&mut diffs, "euler", row.euler, euler(&s));
            let symbol = vertex_symbols_constant(&s).ok().flatten().map(|s| s.to_string());
            if !symbol.as_ref().is_some_and(|s| row.symbols.contains(s)) {
                diffs.push(format!("symbol: expected one of {:?}, got {symbol:?}", row.symbols));
            }
            if !validate(&s).passed() {
                diffs.push("validation failed".into());
            }
        }
    }
    RowOutcome {
        name: row.name.clone(),
        diffs,
    }
}

fn sorted_counts(mut c: Vec<usize>) -> Vec<usize> {
    if c.len() > 2 {
        c[2..].sort_unstable();
    }
    c
}

pub fn check_degenerate(row: &DegenerateRow) -> RowOutcome {
    let mut diffs = Vec::new();
    let built = group_for(&row.name)
        .and_then(|(e, g)| build_catalog_snub(e, &g, Vector3::from(row.vertex)).map_err(|e| e.to_string()));
    match built {
        Err(e) => diffs.push(e),
        Ok(s) => {
            diff(
                &mut diffs,
                "counts",
                sorted_counts(row.counts.to_vec()),
                sorted_counts(fvector(&s).slots()),
            );
            let symbol = vertex_symbols_constant(&s).ok().flatten().map(|s| s.to_string());
            diff(&mut diffs, "symbol", Some(row.symbol.clone()), symbol);
            let shapes: Vec<Option<QuadShape>> = (0..s.vertices.len()).map(|v| vertex_figure_shape(&s, v).ok()).collect();
            let shape = match shapes.first().copied().flatten() {
                Some(first) if shapes.iter().all(|x| *x == Some(first)) => Some(shape_name(first)),
                _ => None,
            };
            diff(&mut diffs, "shape", Some(row.shape.as_str()), shape);
            if !validate(&s).passed() {
                diffs.push("validation failed".into());
            }
        }
    }
    RowOutcome {
        name: row.name.clone(),
        diffs,
    }
}

pub fn shape_name(shape: QuadShape) -> &'static str {
    match shape {
        QuadShape::Simple => "simple",
        QuadShape::Crossed => "crossed",
    }
}

pub fn reproduce(section: u8, expected: Option<&str>) -> Result<Vec<RowOutcome>, String> {
    match section {
        7 => {
            let rows: Vec<GenuineRow> = serde_json::from_str(expected.unwrap_or(GENUINE_ROWS)).map_err(|e| e.to_string())?;
            Ok(rows.iter().map(check_genuine).collect())
        }
        8 => {
            let rows: Vec<DegenerateRow> = serde_json::from_str(expected.unwrap_or(DEGENERATE_ROWS)).map_err(|e| e.to_string())?;
            Ok(rows.iter().map(check_degenerate).collect())
        }
        other => Err(format!("unknown table {other}; expected 7 (genuine snubs) or 8 (degenerate snubs)")),
    }
}
