//! Points, isometries of E³ and tolerant comparison.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

pub type Vector3 = nalgebra::Vector3<f64>;
pub type Matrix3 = nalgebra::Matrix3<f64>;

/// Default absolute tolerance for point equality.
pub const POINT_TOL: f64 = 1e-9;
/// Tolerance for comparing matrices against stored catalog data.
pub const MATRIX_TOL: f64 = 1e-12;
/// Grid spacing of [`canonical_key`].
pub const KEY_GRID: f64 = 1e-6;

static POINT_TOL_BITS: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9

/// Current point tolerance.
pub fn point_tolerance() -> f64 {
    f64::from_bits(POINT_TOL_BITS.load(Ordering::Relaxed))
}

/// Overrides the process-wide point tolerance.
pub fn set_point_tolerance(tol: f64) {
    assert!(tol.is_finite() && tol > 0.0, "tolerance must be positive");
    POINT_TOL_BITS.store(tol.to_bits(), Ordering::Relaxed);
}

pub fn points_equal(a: &Vector3, b: &Vector3) -> bool {
    (a - b).amax() <= point_tolerance()
}

/// An affine isometry `p ↦ linear·p + translation`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Isometry {
    pub linear: Matrix3,
    pub translation: Vector3,
}

impl Isometry {
    pub fn identity() -> Self {
        Self::from_linear(Matrix3::identity())
    }

    pub fn from_linear(linear: Matrix3) -> Self {
        Self {
            linear,
            translation: Vector3::zeros(),
        }
    }

    /// Builds a linear isometry from its action on coordinates.
    pub fn from_map(f: impl Fn(f64, f64, f64) -> [f64; 3]) -> Self {
        let cols = [f(1.0, 0.0, 0.0), f(0.0, 1.0, 0.0), f(0.0, 0.0, 1.0)];
        Self::from_linear(Matrix3::from_fn(|r, c| cols[c][r]))
    }

    pub fn apply(&self, p: &Vector3) -> Vector3 {
        self.linear * p + self.translation
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry {
            linear: self.linear * other.linear,
            translation: self.linear * other.translation + self.translation,
        }
    }

    pub fn inverse(&self) -> Isometry {
        let lt = self.linear.transpose();
        Isometry {
            linear: lt,
            translation: -(lt * self.translation),
        }
    }

    pub fn power(&self, k: usize) -> Isometry {
        (0..k).fold(Isometry::identity(), |acc, _| acc.compose(self))
    }

    pub fn determinant(&self) -> f64 {
        self.linear.determinant()
    }

    /// Max-norm of `linearᵀ·linear − I`.
    pub fn orthogonality_residual(&self) -> f64 {
        (self.linear.transpose() * self.linear - Matrix3::identity()).amax()
    }

    pub fn approx_eq(&self, other: &Isometry, tol: f64) -> bool {
        (self.linear - other.linear).amax() <= tol
            && (self.translation - other.translation).amax() <= tol
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&Isometry::identity(), tol)
    }

    pub fn order(&self, cap: usize) -> Option<usize> {
        iso_order(self, cap)
    }

    pub fn fixed_set(&self) -> FixedSetKind {
        classify_fixed_set(self)
    }

    /// The twelve affine entries, row-major linear part first.
    pub fn entries(&self) -> [f64; 12] {
        let mut out = [0.0; 12];
        for r in 0..3 {
            for c in 0..3 {
                out[3 * r + c] = self.linear[(r, c)];
            }
            out[9 + r] = self.translation[r];
        }
        out
    }
}

/// Smallest `k ≤ cap` with `gᵏ = 1`.
pub fn iso_order(g: &Isometry, cap: usize) -> Option<usize> {
    let mut acc = *g;
    for k in 1..=cap {
        if acc.is_identity(POINT_TOL) {
            return Some(k);
        }
        acc = acc.compose(g);
    }
    None
}

/// Solution set of `g(p) = p`.
#[derive(Clone, Debug, PartialEq)]
pub enum FixedSetKind {
    All,
    Plane { anchor: Vector3, span: [Vector3; 2] },
    Line { anchor: Vector3, direction: Vector3 },
    Point(Vector3),
    Empty,
}

impl FixedSetKind {
    pub fn dimension(&self) -> Option<usize> {
        match self {
            FixedSetKind::All => Some(3),
            FixedSetKind::Plane { .. } => Some(2),
            FixedSetKind::Line { .. } => Some(1),
            FixedSetKind::Point(_) => Some(0),
            FixedSetKind::Empty => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            FixedSetKind::All => "all",
            FixedSetKind::Plane { .. } => "plane",
            FixedSetKind::Line { .. } => "line",
            FixedSetKind::Point(_) => "point",
            FixedSetKind::Empty => "empty",
        }
    }

    /// Orthogonal projection onto the fixed set.
    pub fn project(&self, p: &Vector3) -> Option<Vector3> {
        match self {
            FixedSetKind::All => Some(*p),
            FixedSetKind::Plane { anchor, span } => {
                let d = p - anchor;
                Some(anchor + span[0] * span[0].dot(&d) + span[1] * span[1].dot(&d))
            }
            FixedSetKind::Line { anchor, direction } => {
                Some(anchor + direction * direction.dot(&(p - anchor)))
            }
            FixedSetKind::Point(q) => Some(*q),
            FixedSetKind::Empty => None,
        }
    }
}

pub fn classify_fixed_set(g: &Isometry) -> FixedSetKind {
    let a = g.linear - Matrix3::identity();
    let svd = a.svd(true, true);
    let u = svd.u.expect("svd u");
    let v_t = svd.v_t.expect("svd v_t");
    let sv = svd.singular_values;
    let null: Vec<Vector3> = (0..3)
        .filter(|&i| sv[i] <= POINT_TOL)
        .map(|i| v_t.row(i).transpose().normalize())
        .collect();

    // Minimum-norm solution of (L − I)p = −t.
    let mut anchor = Vector3::zeros();
    let b = -g.translation;
    for i in 0..3 {
        if sv[i] > POINT_TOL {
            let ui = u.column(i);
            anchor += v_t.row(i).transpose() * (ui.dot(&b) / sv[i]);
        }
    }
    if (a * anchor - b).amax() > POINT_TOL {
        return FixedSetKind::Empty;
    }
    match null.len() {
        3 => FixedSetKind::All,
        2 => FixedSetKind::Plane {
            anchor,
            span: [null[0], null[1]],
        },
        1 => FixedSetKind::Line {
            anchor,
            direction: null[0],
        },
        _ => FixedSetKind::Point(anchor),
    }
}

/// Quantized coordinates on the [`KEY_GRID`] lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointKey(pub [i64; 3]);

pub fn canonical_key(p: &Vector3) -> PointKey {
    PointKey([
        (p.x / KEY_GRID).round() as i64,
        (p.y / KEY_GRID).round() as i64,
        (p.z / KEY_GRID).round() as i64,
    ])
}

/// Deduplicating point store: buckets by [`canonical_key`], confirms with
/// [`points_equal`], and probes neighbouring cells so grid boundaries
/// never split a cluster.
#[derive(Clone, Debug, Default)]
pub struct PointSet {
    points: Vec<Vector3>,
    buckets: HashMap<PointKey, Vec<usize>>,
}

impl PointSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vector3] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Vector3> {
        self.points
    }

    pub fn find(&self, p: &Vector3) -> Option<usize> {
        let PointKey([x, y, z]) = canonical_key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    if let Some(ids) = self.buckets.get(&PointKey([x + dx, y + dy, z + dz])) {
                        if let Some(&i) = ids.iter().find(|&&i| points_equal(&self.points[i], p)) {
                            return Some(i);
                        }
                    }
                }
            }
        }
        None
    }

    /// Returns the index of `p` and whether it was newly inserted.
    pub fn insert(&mut self, p: Vector3) -> (usize, bool) {
        if let Some(i) = self.find(&p) {
            return (i, false);
        }
        let i = self.points.len();
        self.points.push(p);
        self.buckets.entry(canonical_key(&p)).or_default().push(i);
        (i, true)
    }
}

/// Quantized affine entries, used to bucket isometries.
pub(crate) fn isometry_key(g: &Isometry) -> [i64; 12] {
    g.entries().map(|e| (e / KEY_GRID).round() as i64)
}
