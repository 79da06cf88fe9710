//! Axiom checks and combinatorial invariants of skeletal polyhedra.

mod flags;
mod polygon;
mod symbol;
mod uniformity;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

pub use flags::{isomorphic, orientable, trace_petrie, Flag, FlagGraph};
pub use polygon::{classify_polygon, PolygonClass, PolygonKind};
pub use symbol::{
    corners_at, vertex_figure_shape, vertex_symbol, vertex_symbols_constant, Corner, QuadShape, VertexSymbol,
};
pub use uniformity::{
    solve_uniformity, uniformity_gradient, uniformity_residual, SolverOptions, UniformRoot,
};

use crate::group::TypeSet;
use crate::snub::SkeletalPolyhedron;

#[derive(Clone, Debug, thiserror::Error, PartialEq)]
pub enum AnalysisError {
    #[error("polygon vertices are collinear")]
    DegeneratePolygon,
    #[error("vertex figure at {0} is not a single cycle")]
    NonCyclicVertexFigure(usize),
    #[error("vertex figure at {0} is not a quadrilateral")]
    NotQuadrilateral(usize),
    #[error("edge {0} does not lie in exactly two faces")]
    NotPolyhedral(usize),
    #[error("flag {0} is out of range")]
    BadFlag(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct VertexFigureReport {
    pub connected: bool,
    /// Length when the figure is a single cycle.
    pub cycle_length: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub edge_graph_components: usize,
    pub vertex_figures: Vec<VertexFigureReport>,
    /// Edges not lying in exactly two faces, with their face counts.
    pub bad_edges: Vec<(usize, usize)>,
    /// Faces whose consecutive vertices are not joined by a listed edge.
    pub unsupported_faces: Vec<usize>,
    pub finite: bool,
}

impl ValidationReport {
    pub fn connected(&self) -> bool {
        self.edge_graph_components == 1
    }

    pub fn vertex_figures_connected(&self) -> bool {
        self.vertex_figures.iter().all(|f| f.connected)
    }

    pub fn disconnected_vertex_figures(&self) -> Vec<usize> {
        (0..self.vertex_figures.len())
            .filter(|&v| !self.vertex_figures[v].connected)
            .collect()
    }

    pub fn two_faces_per_edge(&self) -> bool {
        self.bad_edges.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.connected()
            && self.vertex_figures_connected()
            && self.two_faces_per_edge()
            && self.unsupported_faces.is_empty()
            && self.finite
    }
}

pub fn validate(poly: &SkeletalPolyhedron) -> ValidationReport {
    let nbrs = poly.neighbours();
    let n = poly.vertices.len();

    let mut components = 0;
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &nbrs[v] {
                if !std::mem::replace(&mut seen[w], true) {
                    queue.push_back(w);
                }
            }
        }
    }

    let mut figure_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for face in &poly.faces {
        let c = &face.cycle;
        let k = c.len();
        for i in 0..k {
            figure_edges[c[i]].push((c[(i + k - 1) % k], c[(i + 1) % k]));
        }
    }
    let vertex_figures = (0..n).map(|v| vertex_figure(&nbrs[v], &figure_edges[v])).collect();

    let bad_edges = poly
        .edge_faces()
        .iter()
        .enumerate()
        .filter(|(_, f)| f.len() != 2)
        .map(|(e, f)| (e, f.len()))
        .collect();

    let lookup = poly.edge_lookup();
    let unsupported_faces = poly
        .faces
        .iter()
        .enumerate()
        .filter(|(_, f)| {
            let c = &f.cycle;
            (0..c.len()).any(|i| {
                let (a, b) = (c[i], c[(i + 1) % c.len()]);
                !lookup.contains_key(&(a.min(b), a.max(b)))
            })
        })
        .map(|(i, _)| i)
        .collect();

    ValidationReport {
        edge_graph_components: components,
        vertex_figures,
        bad_edges,
        unsupported_faces,
        finite: poly.vertices.iter().all(|p| p.iter().all(|x| x.is_finite())),
    }
}

fn vertex_figure(nodes: &[usize], edges: &[(usize, usize)]) -> VertexFigureReport {
    if nodes.is_empty() {
        return VertexFigureReport {
            connected: false,
            cycle_length: None,
        };
    }
    let mut adj: HashMap<usize, Vec<usize>> = nodes.iter().map(|&u| (u, Vec::new())).collect();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut seen = HashSet::from([nodes[0]]);
    let mut queue = VecDeque::from([nodes[0]]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[&u] {
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    let connected = seen.len() == adj.len();
    let cycle = connected && adj.values().all(|a| a.len() == 2);
    VertexFigureReport {
        connected,
        cycle_length: cycle.then_some(adj.len()),
    }
}

/// Vertex count and edge/face counts by type; slots for types outside the
/// type set are absent, as is the empty edge slot 2 when `s₀v = v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FVector {
    pub f0: usize,
    pub f1: [Option<usize>; 3],
    pub f2: [Option<usize>; 3],
}

impl FVector {
    pub fn of(poly: &SkeletalPolyhedron) -> Self {
        let present: Vec<bool> = match poly.source.as_ref().map(|s| s.type_set) {
            Some(iv) => (0..3).map(|k| iv.contains(k)).collect(),
            None => (0..3u8)
                .map(|k| poly.edges.iter().any(|e| e.kind == k) || poly.faces.iter().any(|f| f.kind == k))
                .collect(),
        };
        let slot = |k: usize, count: usize| present[k].then_some(count);
        let edge_slot = |k: usize, count: usize| (present[k] && count > 0).then_some(count);
        FVector {
            f0: poly.vertices.len(),
            f1: [0, 1, 2].map(|k| edge_slot(k, poly.count_edges(k as u8))),
            f2: [0, 1, 2].map(|k| slot(k, poly.count_faces(k as u8))),
        }
    }

    pub fn edges(&self) -> usize {
        self.f1.iter().flatten().sum()
    }

    pub fn faces(&self) -> usize {
        self.f2.iter().flatten().sum()
    }

    pub fn euler(&self) -> i64 {
        self.f0 as i64 - self.edges() as i64 + self.faces() as i64
    }

    /// Present slots in the order `f0, f1⁰, f1¹, f1², f2⁰, f2¹, f2²`.
    pub fn slots(&self) -> Vec<usize> {
        std::iter::once(self.f0)
            .chain(self.f1.iter().flatten().copied())
            .chain(self.f2.iter().flatten().copied())
            .collect()
    }

    pub fn type_set(&self) -> Option<TypeSet> {
        let members: Vec<usize> = (0..3).filter(|&k| self.f2[k].is_some()).collect();
        TypeSet::from_members(&members)
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.slots().iter().map(usize::to_string).collect();
        write!(f, "({})", items.join(","))
    }
}

pub fn fvector(poly: &SkeletalPolyhedron) -> FVector {
    FVector::of(poly)
}

pub fn euler(poly: &SkeletalPolyhedron) -> i64 {
    poly.vertices.len() as i64 - poly.edges.len() as i64 + poly.faces.len() as i64
}

/// `N(1/p + 1/q − 1/2)` as an exact integer, when it is one.
pub fn euler_formula(n: usize, p: usize, q: usize) -> Option<i64> {
    let (n, p, q) = (n as i64, p as i64, q as i64);
    let num = n * (2 * q + 2 * p - p * q);
    let den = 2 * p * q;
    (num % den == 0).then_some(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vector3;

    pub(crate) fn cube() -> SkeletalPolyhedron {
        let v: Vec<Vector3> = (0..8)
            .map(|i| Vector3::new((i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64))
            .collect();
        let faces = vec![
            vec![0, 1, 3, 2],
            vec![4, 6, 7, 5],
            vec![0, 4, 5, 1],
            vec![2, 3, 7, 6],
            vec![0, 2, 6, 4],
            vec![1, 5, 7, 3],
        ];
        SkeletalPolyhedron::from_faces(v, faces)
    }

    #[test]
    fn cube_validates() {
        let r = validate(&cube());
        assert!(r.passed());
        assert!(r.vertex_figures.iter().all(|f| f.cycle_length == Some(3)));
        assert_eq!(euler(&cube()), 2);
    }

    #[test]
    fn deleted_face_breaks_two_faces_per_edge() {
        let mut c = cube();
        c.faces.pop();
        let r = validate(&c);
        assert!(!r.two_faces_per_edge());
        assert_eq!(r.bad_edges.len(), 4);
        assert!(r.bad_edges.iter().all(|&(_, n)| n == 1));
    }

    #[test]
    fn disconnected_edge_graph() {
        let mut c = cube();
        c.vertices.push(Vector3::new(5.0, 5.0, 5.0));
        let r = validate(&c);
        assert_eq!(r.edge_graph_components, 2);
        assert_eq!(r.disconnected_vertex_figures(), vec![8]);
    }

    #[test]
    fn euler_formula_cases() {
        assert_eq!(euler_formula(24, 4, 3), Some(2));
        assert_eq!(euler_formula(24, 6, 3), Some(0));
        assert_eq!(euler_formula(120, 10, 5), Some(-24));
        assert_eq!(euler_formula(7, 4, 3), None);
    }

    #[test]
    fn fvector_display() {
        let f = FVector {
            f0: 24,
            f1: [Some(12), Some(24), Some(24)],
            f2: [Some(24), Some(6), Some(8)],
        };
        assert_eq!(f.to_string(), "(24,12,24,24,24,6,8)");
        assert_eq!(f.euler(), 2);
        let d = FVector {
            f0: 12,
            f1: [None, Some(24), None],
            f2: [None, Some(6), Some(8)],
        };
        assert_eq!(d.to_string(), "(12,24,6,8)");
        assert_eq!(d.type_set(), Some(TypeSet::S0_FIXED));
    }
}
