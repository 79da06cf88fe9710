use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use nalgebra::SymmetricEigen;

use super::AnalysisError;
use crate::geometry::{Matrix3, Vector3};

/// Planarity threshold relative to the polygon diameter.
pub const PLANAR_TOL: f64 = 1e-7;
const AMBIGUOUS_BAND: (f64, f64) = (1e-10, 1e-4);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PolygonKind {
    Convex,
    Star,
    Skew,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolygonClass {
    pub size: usize,
    /// Winding number of the polygon, or of its projection when skew.
    pub density: usize,
    pub kind: PolygonKind,
    pub planar: bool,
    pub regular: bool,
    /// Planarity residual falls between clear noise and clear skewness.
    pub ambiguous: bool,
    pub edge_length: f64,
}

impl PolygonClass {
    /// Fields that enter the vertex symbol.
    pub fn token(&self) -> (usize, usize, PolygonKind) {
        (self.size, self.density, self.kind)
    }

    pub fn cmp_token(&self, other: &Self) -> Ordering {
        self.token().cmp(&other.token())
    }
}

impl fmt::Display for PolygonClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, d) = (self.size, self.density);
        match self.kind {
            _ if p == 3 && self.planar => write!(f, "3"),
            PolygonKind::Convex => write!(f, "{p}_c"),
            PolygonKind::Star => write!(f, "{p}/{d}"),
            PolygonKind::Skew if d <= 1 => write!(f, "{p}_s"),
            PolygonKind::Skew => write!(f, "({p}/{d})_s"),
        }
    }
}

fn centroid(points: &[Vector3]) -> Vector3 {
    points.iter().sum::<Vector3>() / points.len() as f64
}

/// Eigenvalues ascending with matching unit eigenvectors.
fn principal_axes(points: &[Vector3], c: &Vector3) -> ([f64; 3], [Vector3; 3]) {
    let cov: Matrix3 = points.iter().map(|p| (p - c) * (p - c).transpose()).sum();
    let eig = SymmetricEigen::new(cov);
    let mut idx = [0, 1, 2];
    idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    (
        idx.map(|i| eig.eigenvalues[i]),
        idx.map(|i| eig.eigenvectors.column(i).into_owned().normalize()),
    )
}

fn winding(points: &[Vector3], c: &Vector3, normal: &Vector3) -> f64 {
    let helper = if normal.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
    let e1 = normal.cross(&helper).normalize();
    let e2 = normal.cross(&e1);
    let angle = |p: &Vector3| {
        let d = p - c;
        d.dot(&e2).atan2(d.dot(&e1))
    };
    let n = points.len();
    let mut total = 0.0;
    for i in 0..n {
        let mut delta = angle(&points[(i + 1) % n]) - angle(&points[i]);
        while delta > PI {
            delta -= 2.0 * PI;
        }
        while delta <= -PI {
            delta += 2.0 * PI;
        }
        total += delta;
    }
    total / (2.0 * PI)
}

pub fn classify_polygon(points: &[Vector3]) -> Result<PolygonClass, AnalysisError> {
    let n = points.len();
    if n < 3 {
        return Err(AnalysisError::DegeneratePolygon);
    }
    let mut diameter: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            diameter = diameter.max((points[i] - points[j]).norm());
        }
    }
    if diameter == 0.0 {
        return Err(AnalysisError::DegeneratePolygon);
    }
    let c = centroid(points);
    let (_, axes) = principal_axes(points, &c);
    let line_residual = points
        .iter()
        .map(|p| {
            let d = p - c;
            (d - axes[2] * axes[2].dot(&d)).norm()
        })
        .fold(0.0, f64::max);
    if line_residual < PLANAR_TOL * diameter {
        return Err(AnalysisError::DegeneratePolygon);
    }
    let plane_residual = points.iter().map(|p| (p - c).dot(&axes[0]).abs()).fold(0.0, f64::max);
    let planar = plane_residual < PLANAR_TOL * diameter;
    let rel = plane_residual / diameter;
    let ambiguous = rel >= AMBIGUOUS_BAND.0 && rel <= AMBIGUOUS_BAND.1;

    let area: Vector3 = (0..n)
        .map(|i| (points[i] - c).cross(&(points[(i + 1) % n] - c)))
        .sum::<Vector3>()
        * 0.5;
    let normal = if area.norm() > 1e-9 * diameter * diameter {
        area.normalize()
    } else {
        axes[0]
    };
    let density = winding(points, &c, &normal).abs().round() as usize;

    let dist = |i: usize, k: usize| (points[i] - points[(i + k) % n]).norm();
    let all_equal = |vals: Vec<f64>| {
        let first = vals[0];
        vals.iter().all(|v| (v - first).abs() <= PLANAR_TOL * diameter)
    };
    let regular = all_equal((0..n).map(|i| dist(i, 1)).collect())
        && all_equal(points.iter().map(|p| (p - c).norm()).collect())
        && (n < 4 || all_equal((0..n).map(|i| dist(i, 2)).collect()));
    let edge_length = (0..n).map(|i| dist(i, 1)).sum::<f64>() / n as f64;

    let kind = if !planar {
        PolygonKind::Skew
    } else if regular && density >= 2 {
        PolygonKind::Star
    } else {
        PolygonKind::Convex
    };
    Ok(PolygonClass {
        size: n,
        density: if kind == PolygonKind::Convex { 1 } else { density.max(1) },
        kind,
        planar,
        regular,
        ambiguous,
        edge_length,
    })
}
