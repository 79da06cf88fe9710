use std::cmp::Ordering;
use std::fmt;

use super::{classify_polygon, AnalysisError, PolygonClass};
use crate::geometry::Vector3;
use crate::snub::SkeletalPolyhedron;

/// A face at a vertex, entered along the edge to `from` and left along
/// the edge to `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Corner {
    pub face: usize,
    pub from: usize,
    pub to: usize,
}

/// Faces around `vertex` in cyclic order; consecutive corners share an edge.
pub fn corners_at(poly: &SkeletalPolyhedron, vertex: usize) -> Result<Vec<Corner>, AnalysisError> {
    let mut corners: Vec<Corner> = Vec::new();
    for (f, face) in poly.faces.iter().enumerate() {
        let c = &face.cycle;
        let k = c.len();
        for i in 0..k {
            if c[i] == vertex {
                corners.push(Corner {
                    face: f,
                    from: c[(i + k - 1) % k],
                    to: c[(i + 1) % k],
                });
            }
        }
    }
    let err = || AnalysisError::NonCyclicVertexFigure(vertex);
    if corners.len() < 2 {
        return Err(err());
    }
    let mut ordered = vec![corners[0]];
    let mut used = vec![false; corners.len()];
    used[0] = true;
    while ordered.len() < corners.len() {
        let last = ordered.last().expect("nonempty").to;
        let mut next = None;
        for (i, c) in corners.iter().enumerate() {
            if used[i] {
                continue;
            }
            if c.from == last || c.to == last {
                if next.is_some() {
                    return Err(err());
                }
                next = Some(i);
            }
        }
        let i = next.ok_or_else(err)?;
        used[i] = true;
        let c = corners[i];
        ordered.push(if c.from == last {
            c
        } else {
            Corner {
                face: c.face,
                from: c.to,
                to: c.from,
            }
        });
    }
    if ordered.last().expect("nonempty").to != ordered[0].from {
        return Err(err());
    }
    let mut nodes: Vec<usize> = ordered.iter().map(|c| c.from).collect();
    nodes.sort_unstable();
    nodes.dedup();
    if nodes.len() != ordered.len() {
        return Err(err());
    }
    Ok(ordered)
}

/// Cyclic sequence of face classes, canonicalized up to rotation and
/// reversal: it starts at a maximal class and is lexicographically least
/// among such arrangements.
#[derive(Clone, Debug)]
pub struct VertexSymbol(pub Vec<PolygonClass>);

impl VertexSymbol {
    pub fn canonical(classes: Vec<PolygonClass>) -> Self {
        let n = classes.len();
        let Some(top) = classes.iter().max_by(|a, b| a.cmp_token(b)) else {
            return Self(classes);
        };
        let top = *top;
        let mut best: Option<Vec<PolygonClass>> = None;
        for reversed in [false, true] {
            for start in 0..n {
                let cand: Vec<PolygonClass> = (0..n)
                    .map(|k| classes[if reversed { (start + n - k) % n } else { (start + k) % n }])
                    .collect();
                if cand[0].cmp_token(&top) != Ordering::Equal {
                    continue;
                }
                let better = best.as_ref().is_none_or(|b| {
                    cand.iter()
                        .zip(b)
                        .map(|(x, y)| x.cmp_token(y))
                        .find(|o| *o != Ordering::Equal)
                        == Some(Ordering::Less)
                });
                if better {
                    best = Some(cand);
                }
            }
        }
        Self(best.unwrap_or(classes))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ambiguous(&self) -> bool {
        self.0.iter().any(|c| c.ambiguous)
    }
}

impl PartialEq for VertexSymbol {
    fn eq(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a.token() == b.token())
    }
}

impl fmt::Display for VertexSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(PolygonClass::to_string).collect();
        write!(f, "{}", parts.join("."))
    }
}

pub fn vertex_symbol(poly: &SkeletalPolyhedron, vertex: usize) -> Result<VertexSymbol, AnalysisError> {
    let classes = corners_at(poly, vertex)?
        .iter()
        .map(|c| classify_polygon(&poly.face_points(c.face)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VertexSymbol::canonical(classes))
}

/// The common vertex symbol, if every vertex has the same one.
pub fn vertex_symbols_constant(poly: &SkeletalPolyhedron) -> Result<Option<VertexSymbol>, AnalysisError> {
    let first = vertex_symbol(poly, 0)?;
    for v in 1..poly.vertices.len() {
        if vertex_symbol(poly, v)? != first {
            return Ok(None);
        }
    }
    Ok(Some(first))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadShape {
    Simple,
    Crossed,
}

fn segments_cross(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> bool {
    let orient = |p: (f64, f64), q: (f64, f64), r: (f64, f64)| (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0);
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    o1 * o2 < 0.0 && o3 * o4 < 0.0
}

/// Simple or crossed, for a four-cycle vertex figure projected to its
/// best-fit plane.
pub fn vertex_figure_shape(poly: &SkeletalPolyhedron, vertex: usize) -> Result<QuadShape, AnalysisError> {
    let err = AnalysisError::NotQuadrilateral(vertex);
    let corners = corners_at(poly, vertex).map_err(|_| err.clone())?;
    if corners.len() != 4 {
        return Err(err);
    }
    let pts: Vec<Vector3> = corners.iter().map(|c| poly.vertices[c.from]).collect();
    quad_shape(&pts).ok_or(err)
}

pub(crate) fn quad_shape(pts: &[Vector3]) -> Option<QuadShape> {
    let c = pts.iter().sum::<Vector3>() / 4.0;
    let cov: crate::geometry::Matrix3 = pts.iter().map(|p| (p - c) * (p - c).transpose()).sum();
    let eig = nalgebra::SymmetricEigen::new(cov);
    let mut idx = [0, 1, 2];
    idx.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let scale = eig.eigenvalues[idx[0]].max(0.0);
    if scale == 0.0 || eig.eigenvalues[idx[1]] <= 1e-12 * scale {
        return None;
    }
    let (e1, e2) = (eig.eigenvectors.column(idx[0]), eig.eigenvectors.column(idx[1]));
    let q: Vec<(f64, f64)> = pts.iter().map(|p| ((p - c).dot(&e1), (p - c).dot(&e2))).collect();
    let crossed = segments_cross(q[0], q[1], q[2], q[3]) || segments_cross(q[1], q[2], q[3], q[0]);
    Some(if crossed { QuadShape::Crossed } else { QuadShape::Simple })
}
