//! The snub `S_P(v)`: orbits of the base vertex, base edges and base faces.

use std::collections::HashMap;

use crate::catalog::{CatalogEntry, GeneratorTriple};
use crate::geometry::{PointSet, Vector3};
use crate::group::{type_set, FiniteGroup, GroupError, TypeSet};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum SnubError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("the orbit of the initial vertex is a single point")]
    DegenerateCollapse,
    #[error("generator {0} is not an element of the group")]
    GeneratorNotInGroup(usize),
    #[error("base face of type {kind} has only {len} distinct vertices")]
    DegenerateFace { kind: u8, len: usize },
    #[error("{element} {index} receives types {first} and {second}")]
    TypeConflict {
        element: &'static str,
        index: usize,
        first: u8,
        second: u8,
    },
    #[error("edge {a}-{b} lies in {count} faces")]
    MultiCoverage { a: usize, b: usize, count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub kind: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub cycle: Vec<usize>,
    pub kind: u8,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Source {
    pub name: String,
    pub vertex: Vector3,
    pub type_set: TypeSet,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SkeletalPolyhedron {
    pub vertices: Vec<Vector3>,
    /// Vertex index → group element index, present under the IPC.
    pub vertex_group_element: Option<Vec<usize>>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    pub source: Option<Source>,
}

/// Lexicographically smallest rotation or reversal of a cyclic sequence.
pub fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let n = cycle.len();
    let mut best: Option<Vec<usize>> = None;
    for reversed in [false, true] {
        for start in 0..n {
            let cand: Vec<usize> = (0..n)
                .map(|k| {
                    let i = if reversed { start + n - k } else { start + k };
                    cycle[i % n]
                })
                .collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl SkeletalPolyhedron {
    /// Untyped polyhedron from face cycles; edges are read off the cycles.
    pub fn from_faces(vertices: Vec<Vector3>, faces: Vec<Vec<usize>>) -> Self {
        let mut seen = HashMap::new();
        let mut edges = Vec::new();
        for cycle in &faces {
            for i in 0..cycle.len() {
                let (a, b) = edge_key(cycle[i], cycle[(i + 1) % cycle.len()]);
                seen.entry((a, b)).or_insert_with(|| {
                    edges.push(Edge { a, b, kind: 0 });
                });
            }
        }
        Self {
            vertices,
            vertex_group_element: None,
            edges,
            faces: faces.into_iter().map(|cycle| Face { cycle, kind: 0 }).collect(),
            source: None,
        }
    }

    pub fn edge_lookup(&self) -> HashMap<(usize, usize), usize> {
        self.edges
            .iter()
            .enumerate()
            .map(|(i, e)| (edge_key(e.a, e.b), i))
            .collect()
    }

    /// Face indices containing each edge, indexed like `edges`; a face edge
    /// missing from the edge list is skipped.
    pub fn edge_faces(&self) -> Vec<Vec<usize>> {
        let lookup = self.edge_lookup();
        let mut out = vec![Vec::new(); self.edges.len()];
        for (f, face) in self.faces.iter().enumerate() {
            let c = &face.cycle;
            for i in 0..c.len() {
                if let Some(&e) = lookup.get(&edge_key(c[i], c[(i + 1) % c.len()])) {
                    out[e].push(f);
                }
            }
        }
        out
    }

    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            out[e.a].push(e.b);
            out[e.b].push(e.a);
        }
        out
    }

    /// Face indices through each vertex.
    pub fn vertex_faces(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for (f, face) in self.faces.iter().enumerate() {
            for &v in &face.cycle {
                out[v].push(f);
            }
        }
        out
    }

    pub fn face_points(&self, f: usize) -> Vec<Vector3> {
        self.faces[f].cycle.iter().map(|&i| self.vertices[i]).collect()
    }

    pub fn edge_length(&self, e: usize) -> f64 {
        (self.vertices[self.edges[e].a] - self.vertices[self.edges[e].b]).norm()
    }

    pub fn count_edges(&self, kind: u8) -> usize {
        self.edges.iter().filter(|e| e.kind == kind).count()
    }

    pub fn count_faces(&self, kind: u8) -> usize {
        self.faces.iter().filter(|f| f.kind == kind).count()
    }
}

/// Base vertex with its base edges and base faces, as point lists.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseComplex {
    pub base_vertex: Vector3,
    pub base_edges: Vec<(u8, [Vector3; 2])>,
    pub base_faces: Vec<(u8, Vec<Vector3>)>,
}

pub fn base_complex(gens: &GeneratorTriple, v: &Vector3, iv: TypeSet) -> BaseComplex {
    let base_edges = iv
        .members()
        .into_iter()
        .map(|i| (i as u8, [*v, gens.get(i).apply(v)]))
        .collect();
    let mut base_faces = Vec::new();
    if iv.contains(0) {
        base_faces.push((0, vec![*v, gens.s0.apply(v), gens.s1.apply(v)]));
    }
    for i in [1, 2] {
        if iv.contains(i) {
            let s = gens.get(i);
            let mut cycle = vec![*v];
            let mut p = s.apply(v);
            while !crate::geometry::points_equal(&p, v) && cycle.len() < 1000 {
                cycle.push(p);
                p = s.apply(&p);
            }
            base_faces.push((i as u8, cycle));
        }
    }
    BaseComplex {
        base_vertex: *v,
        base_edges,
        base_faces,
    }
}

struct Typed<K> {
    index: HashMap<K, usize>,
    kinds: Vec<u8>,
}

impl<K: std::hash::Hash + Eq> Typed<K> {
    fn new() -> Self {
        Self {
            index: HashMap::new(),
            kinds: Vec::new(),
        }
    }

    /// Returns `Some(i)` for a new entry, `None` for a repeat of the same type.
    fn insert(&mut self, key: K, kind: u8, element: &'static str) -> Result<Option<usize>, SnubError> {
        if let Some(&i) = self.index.get(&key) {
            return if self.kinds[i] == kind {
                Ok(None)
            } else {
                Err(SnubError::TypeConflict {
                    element,
                    index: i,
                    first: self.kinds[i],
                    second: kind,
                })
            };
        }
        let i = self.kinds.len();
        self.index.insert(key, i);
        self.kinds.push(kind);
        Ok(Some(i))
    }
}

pub fn build_snub(group: &FiniteGroup, gens: &GeneratorTriple, v: Vector3) -> Result<SkeletalPolyhedron, SnubError> {
    let n = group.order();
    let mut points = PointSet::new();
    let vertex_of: Vec<usize> = group.elements.iter().map(|g| points.insert(g.apply(&v)).0).collect();
    if points.len() == 1 {
        return Err(SnubError::DegenerateCollapse);
    }
    let iv = type_set(gens, &v)?;
    let gen_index = |i: usize| group.index_of(gens.get(i)).ok_or(SnubError::GeneratorNotInGroup(i));
    let s = [gen_index(0)?, gen_index(1)?, gen_index(2)?];

    // Base edges and faces as words: element indices h with vertex h(v).
    // With s₀v = v the base edges share an orbit, e₂ = s₁⁻¹(e₁); it is typed 1.
    let base_edges: Vec<(u8, [usize; 2])> = iv
        .members()
        .into_iter()
        .filter(|&i| !(iv == TypeSet::S0_FIXED && i == 2))
        .map(|i| (i as u8, [0, s[i]]))
        .collect();
    let mut base_faces: Vec<(u8, Vec<usize>)> = Vec::new();
    if iv.contains(0) {
        base_faces.push((0, vec![0, s[0], s[1]]));
    }
    for i in [1, 2] {
        if iv.contains(i) {
            let mut word = vec![0];
            let mut h = s[i];
            while vertex_of[h] != vertex_of[0] {
                word.push(h);
                h = group.mul(h, s[i]);
            }
            if word.len() < 3 {
                return Err(SnubError::DegenerateFace {
                    kind: i as u8,
                    len: word.len(),
                });
            }
            base_faces.push((i as u8, word));
        }
    }

    let mut edge_set = Typed::new();
    let mut edges = Vec::new();
    let mut face_set = Typed::new();
    let mut faces = Vec::new();
    for g in 0..n {
        for (kind, [x, y]) in &base_edges {
            let (a, b) = edge_key(vertex_of[group.mul(g, *x)], vertex_of[group.mul(g, *y)]);
            if edge_set.insert((a, b), *kind, "edge")?.is_some() {
                edges.push(Edge { a, b, kind: *kind });
            }
        }
        for (kind, word) in &base_faces {
            let cycle: Vec<usize> = word.iter().map(|&h| vertex_of[group.mul(g, h)]).collect();
            if face_set.insert(canonical_cycle(&cycle), *kind, "face")?.is_some() {
                faces.push(Face { cycle, kind: *kind });
            }
        }
    }

    let poly = SkeletalPolyhedron {
        vertex_group_element: (points.len() == n).then_some(vertex_of),
        vertices: points.into_points(),
        edges,
        faces,
        source: Some(Source {
            name: String::new(),
            vertex: v,
            type_set: iv,
        }),
    };
    for (e, incident) in poly.edge_faces().iter().enumerate() {
        if incident.len() > 2 {
            return Err(SnubError::MultiCoverage {
                a: poly.edges[e].a,
                b: poly.edges[e].b,
                count: incident.len(),
            });
        }
    }
    Ok(poly)
}

/// Builds the snub of a catalog entry and records its name as the source.
pub fn build_catalog_snub(entry: &CatalogEntry, group: &FiniteGroup, v: Vector3) -> Result<SkeletalPolyhedron, SnubError> {
    let mut poly = build_snub(group, &entry.gens, v)?;
    if let Some(src) = poly.source.as_mut() {
        src.name = entry.spec.name.clone();
    }
    Ok(poly)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegenerateKind {
    /// `v` fixed by `s₂`: expected to reproduce the parent.
    Parent,
    /// `v` fixed by `s₁`: expected to reproduce the dual.
    Dual,
    /// `v` fixed by `s₀`: a medial candidate.
    Medial,
    Genuine,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegenerateReport {
    pub kind: DegenerateKind,
    pub vertex_count: usize,
    pub expected_vertex_count: Option<usize>,
    pub face_size: Option<usize>,
    pub vertex_degree: Option<usize>,
    pub equilateral: bool,
    /// Structure of type `{p,q}` (parent) or `{q,p}` (dual) with the
    /// expected vertex count.
    pub matches: bool,
}

pub fn degenerate_identity_check(snub: &SkeletalPolyhedron, parent: &CatalogEntry, group: &FiniteGroup) -> DegenerateReport {
    let iv = snub.source.as_ref().map(|s| s.type_set).unwrap_or(TypeSet::FULL);
    let kind = match iv {
        TypeSet::S2_FIXED => DegenerateKind::Parent,
        TypeSet::S1_FIXED => DegenerateKind::Dual,
        TypeSet::S0_FIXED => DegenerateKind::Medial,
        _ => DegenerateKind::Genuine,
    };
    let n = group.order();
    let (p, q) = (parent.spec.p.rotation_order(), parent.spec.q.rotation_order());
    let factor = if parent.spec.index2 { 1 } else { 2 };
    let (expected_vertex_count, face, degree) = match kind {
        DegenerateKind::Parent => (Some(n / (factor * q)), Some(p), Some(q)),
        DegenerateKind::Dual => (Some(n / (factor * p)), Some(q), Some(p)),
        DegenerateKind::Medial => (Some(n / 2), None, Some(4)),
        DegenerateKind::Genuine => (Some(n), None, Some(5)),
    };
    let uniform = |vals: Vec<usize>| {
        let first = vals.first().copied();
        vals.iter().all(|x| Some(*x) == first).then_some(first).flatten()
    };
    let face_size = uniform(snub.faces.iter().map(|f| f.cycle.len()).collect());
    let vertex_degree = uniform(snub.neighbours().iter().map(Vec::len).collect());
    let lengths: Vec<f64> = (0..snub.edges.len()).map(|e| snub.edge_length(e)).collect();
    let longest = lengths.iter().cloned().fold(0.0, f64::max);
    let equilateral = lengths.iter().all(|l| (longest - l).abs() <= 1e-9 * longest.max(1.0));
    let matches = matches!(kind, DegenerateKind::Parent | DegenerateKind::Dual)
        && expected_vertex_count == Some(snub.vertices.len())
        && face_size == face
        && vertex_degree == degree
        && equilateral;
    DegenerateReport {
        kind,
        vertex_count: snub.vertices.len(),
        expected_vertex_count,
        face_size,
        vertex_degree,
        equilateral,
        matches,
    }
}
