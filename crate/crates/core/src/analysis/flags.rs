use std::collections::{HashMap, VecDeque};

use super::AnalysisError;
use crate::snub::SkeletalPolyhedron;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Flag {
    pub vertex: usize,
    pub edge: usize,
    pub face: usize,
}

/// Flags with their three adjacency involutions. Flag `2i + end` of a face
/// sits on the face's `i`-th edge at its `end`-th endpoint.
#[derive(Clone, Debug)]
pub struct FlagGraph {
    pub flags: Vec<Flag>,
    pub adj: [Vec<usize>; 3],
}

impl FlagGraph {
    pub fn new(poly: &SkeletalPolyhedron) -> Result<Self, AnalysisError> {
        let lookup = poly.edge_lookup();
        let mut flags = Vec::new();
        let mut adj0 = Vec::new();
        let mut adj1 = Vec::new();
        for (f, face) in poly.faces.iter().enumerate() {
            let c = &face.cycle;
            let k = c.len();
            let base = flags.len();
            for i in 0..k {
                let (a, b) = (c[i], c[(i + 1) % k]);
                let edge = *lookup
                    .get(&(a.min(b), a.max(b)))
                    .ok_or(AnalysisError::NotPolyhedral(usize::MAX))?;
                flags.push(Flag { vertex: a, edge, face: f });
                flags.push(Flag { vertex: b, edge, face: f });
                adj0.push(base + 2 * i + 1);
                adj0.push(base + 2 * i);
                adj1.push(base + 2 * ((i + k - 1) % k) + 1);
                adj1.push(base + 2 * ((i + 1) % k));
            }
        }
        let mut by_vertex_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, fl) in flags.iter().enumerate() {
            by_vertex_edge.entry((fl.vertex, fl.edge)).or_default().push(i);
        }
        let mut adj2 = vec![usize::MAX; flags.len()];
        for ((_, edge), ids) in &by_vertex_edge {
            if ids.len() != 2 {
                return Err(AnalysisError::NotPolyhedral(*edge));
            }
            adj2[ids[0]] = ids[1];
            adj2[ids[1]] = ids[0];
        }
        if let Some(e) = poly.edge_faces().iter().position(|f| f.len() != 2) {
            return Err(AnalysisError::NotPolyhedral(e));
        }
        Ok(Self {
            flags,
            adj: [adj0, adj1, adj2],
        })
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    /// Proper two-colouring of the flag graph, if one exists.
    pub fn two_colouring(&self) -> Option<Vec<u8>> {
        let mut colour = vec![u8::MAX; self.len()];
        for start in 0..self.len() {
            if colour[start] != u8::MAX {
                continue;
            }
            colour[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for a in &self.adj {
                    let y = a[x];
                    if colour[y] == u8::MAX {
                        colour[y] = 1 - colour[x];
                        queue.push_back(y);
                    } else if colour[y] == colour[x] {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }

    /// Flag after one Petrie step: change vertex, then edge, then face.
    pub fn petrie_step(&self, x: usize) -> usize {
        self.adj[2][self.adj[1][self.adj[0][x]]]
    }

    /// Maps flag 0 of `self` to `target` of `other` and extends along the
    /// involutions; returns the flag bijection when consistent.
    pub fn extend_from(&self, other: &FlagGraph, target: usize) -> Option<Vec<usize>> {
        let n = self.len();
        let mut fwd = vec![usize::MAX; n];
        let mut back = vec![usize::MAX; n];
        fwd[0] = target;
        back[target] = 0;
        let mut queue = VecDeque::from([0]);
        let mut mapped = 1;
        while let Some(x) = queue.pop_front() {
            for j in 0..3 {
                let (xs, ys) = (self.adj[j][x], other.adj[j][fwd[x]]);
                match (fwd[xs], back[ys]) {
                    (usize::MAX, usize::MAX) => {
                        fwd[xs] = ys;
                        back[ys] = xs;
                        mapped += 1;
                        queue.push_back(xs);
                    }
                    (y, _) if y == ys => {}
                    _ => return None,
                }
            }
        }
        (mapped == n).then_some(fwd)
    }
}

pub fn orientable(poly: &SkeletalPolyhedron) -> Result<bool, AnalysisError> {
    Ok(FlagGraph::new(poly)?.two_colouring().is_some())
}

/// Length of the Petrie polygon through `start`.
pub fn trace_petrie(poly: &SkeletalPolyhedron, start: usize) -> Result<usize, AnalysisError> {
    let g = FlagGraph::new(poly)?;
    if start >= g.len() {
        return Err(AnalysisError::BadFlag(start));
    }
    let mut x = g.petrie_step(start);
    let mut steps = 1;
    while x != start {
        x = g.petrie_step(x);
        steps += 1;
    }
    Ok(steps)
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort_unstable();
    v
}

pub fn isomorphic(a: &SkeletalPolyhedron, b: &SkeletalPolyhedron) -> bool {
    let counts = |p: &SkeletalPolyhedron| {
        (
            p.vertices.len(),
            p.edges.len(),
            sorted(p.faces.iter().map(|f| f.cycle.len()).collect()),
            sorted(p.neighbours().iter().map(Vec::len).collect()),
        )
    };
    if counts(a) != counts(b) {
        return false;
    }
    let (Ok(ga), Ok(gb)) = (FlagGraph::new(a), FlagGraph::new(b)) else {
        return false;
    };
    if ga.len() != gb.len() || ga.is_empty() {
        return ga.len() == gb.len();
    }
    (0..gb.len()).any(|t| ga.extend_from(&gb, t).is_some())
}
