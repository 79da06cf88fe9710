use super::{vertex_symbol, VertexSymbol};
use crate::catalog::{CatalogEntry, GeneratorTriple};
use crate::geometry::{Matrix3, Vector3};
use crate::group::{satisfies_ipc, FiniteGroup};
use crate::snub::build_snub;

/// `(‖w₁‖² − ‖w₂‖², ‖w₂‖² − ‖w₃‖²)` with `w₁ = s₁v − v`, `w₂ = s₀v − v`,
/// `w₃ = s₁v − s₀v`.
pub fn uniformity_residual(gens: &GeneratorTriple, v: &Vector3) -> (f64, f64) {
    let s1v = gens.s1.apply(v);
    let s0v = gens.s0.apply(v);
    let (w1, w2, w3) = ((s1v - v).norm_squared(), (s0v - v).norm_squared(), (s1v - s0v).norm_squared());
    (w1 - w2, w2 - w3)
}

/// Symmetric matrices `M₁, M₂` with `r_k(v) = vᵀ M_k v` for linear generators.
fn residual_forms(gens: &GeneratorTriple) -> [Matrix3; 2] {
    let id = Matrix3::identity();
    let a1 = gens.s1.linear - id;
    let a0 = gens.s0.linear - id;
    let b = gens.s1.linear - gens.s0.linear;
    let (g1, g0, gb) = (a1.transpose() * a1, a0.transpose() * a0, b.transpose() * b);
    [g1 - g0, g0 - gb]
}

/// Gradients of both residuals at `v` (linear generators).
pub fn uniformity_gradient(gens: &GeneratorTriple, v: &Vector3) -> [Vector3; 2] {
    residual_forms(gens).map(|m| 2.0 * m * v)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    pub grid: usize,
    pub residual_tol: f64,
    pub dedup_tol: f64,
    pub max_iterations: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            grid: 200,
            residual_tol: 1e-12,
            dedup_tol: 1e-8,
            max_iterations: 60,
        }
    }
}

#[derive(Clone, Debug)]
pub struct UniformRoot {
    /// Unit vector in the closed cone.
    pub vertex: Vector3,
    pub residual: (f64, f64),
    pub symbol: Option<VertexSymbol>,
    pub ambiguous: bool,
}

/// Unit-sphere chart `cos β (cos α c + sin α e₁) + sin β e₂` centred on
/// the cone axis `c`.
struct Chart {
    c: Vector3,
    e1: Vector3,
    e2: Vector3,
}

impl Chart {
    fn new(spanning: &[Vector3]) -> Self {
        let c = spanning.iter().map(|s| s.normalize()).sum::<Vector3>().normalize();
        let s = spanning[0].normalize();
        let e1 = (s - c * c.dot(&s)).normalize();
        Self { c, e2: c.cross(&e1), e1 }
    }

    fn point(&self, a: f64, b: f64) -> Vector3 {
        (self.c * a.cos() + self.e1 * a.sin()) * b.cos() + self.e2 * b.sin()
    }

    fn partials(&self, a: f64, b: f64) -> [Vector3; 2] {
        let radial = self.c * a.cos() + self.e1 * a.sin();
        [
            (self.e1 * a.cos() - self.c * a.sin()) * b.cos(),
            self.e2 * b.cos() - radial * b.sin(),
        ]
    }

    fn coords(&self, p: &Vector3) -> (f64, f64) {
        let p = p.normalize();
        (p.dot(&self.e1).atan2(p.dot(&self.c)), p.dot(&self.e2).clamp(-1.0, 1.0).asin())
    }
}

fn newton(chart: &Chart, forms: &[Matrix3; 2], mut a: f64, mut b: f64, opts: &SolverOptions) -> Option<Vector3> {
    for _ in 0..opts.max_iterations {
        let p = chart.point(a, b);
        let r = [p.dot(&(forms[0] * p)), p.dot(&(forms[1] * p))];
        if r[0].abs().max(r[1].abs()) < opts.residual_tol {
            return Some(p);
        }
        let [da, db] = chart.partials(a, b);
        let g = [2.0 * forms[0] * p, 2.0 * forms[1] * p];
        let j = [[g[0].dot(&da), g[0].dot(&db)], [g[1].dot(&da), g[1].dot(&db)]];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.abs() < 1e-14 {
            return None;
        }
        let mut step_a = (j[1][1] * r[0] - j[0][1] * r[1]) / det;
        let mut step_b = (j[0][0] * r[1] - j[1][0] * r[0]) / det;
        let len = step_a.hypot(step_b);
        if len > 0.25 {
            step_a *= 0.25 / len;
            step_b *= 0.25 / len;
        }
        a -= step_a;
        b -= step_b;
    }
    None
}

/// Acceptable solutions of the uniformity equations in the closed cone of
/// `entry`, sorted lexicographically.
pub fn solve_uniformity(entry: &CatalogEntry, group: &FiniteGroup, opts: &SolverOptions) -> Vec<UniformRoot> {
    let cone = &entry.cone;
    let chart = Chart::new(&cone.spanning);
    let forms = residual_forms(&entry.gens);
    let coords: Vec<(f64, f64)> = cone.spanning.iter().map(|s| chart.coords(s)).collect();
    let range = |f: fn(&(f64, f64)) -> f64| {
        let lo = coords.iter().map(f).fold(f64::INFINITY, f64::min);
        let hi = coords.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
        let pad = 0.05 * (hi - lo);
        (lo - pad, hi + pad)
    };
    let (a_range, b_range) = (range(|c| c.0), range(|c| c.1));

    let mut found: Vec<Vector3> = Vec::new();
    let n = opts.grid;
    for i in 0..n {
        for j in 0..n {
            let a = a_range.0 + (i as f64 + 0.5) / n as f64 * (a_range.1 - a_range.0);
            let b = b_range.0 + (j as f64 + 0.5) / n as f64 * (b_range.1 - b_range.0);
            if !cone.contains_within(&chart.point(a, b), 0.0) {
                continue;
            }
            if let Some(p) = newton(&chart, &forms, a, b, opts) {
                if cone.contains_within(&p, 1e-9) {
                    found.push(p);
                }
            }
        }
    }
    found.sort_by(|x, y| {
        x.x.total_cmp(&y.x)
            .then(x.y.total_cmp(&y.y))
            .then(x.z.total_cmp(&y.z))
    });
    let mut roots: Vec<Vector3> = Vec::new();
    for p in found {
        if roots.iter().all(|q| (q - p).norm() > opts.dedup_tol) {
            roots.push(p);
        }
    }
    roots
        .into_iter()
        .filter(|p| satisfies_ipc(group, p))
        .map(|p| {
            let symbol = build_snub(group, &entry.gens, p).ok().and_then(|s| vertex_symbol(&s, 0).ok());
            UniformRoot {
                vertex: p,
                residual: uniformity_residual(&entry.gens, &p),
                ambiguous: symbol.as_ref().is_some_and(VertexSymbol::ambiguous),
                symbol,
            }
        })
        .collect()
}
