//! The eighteen finite regular polyhedra: generators of the combinatorial
//! rotation subgroup, fundamental cones and seed points.

use std::fmt;
use std::sync::OnceLock;

use crate::geometry::{iso_order, Isometry, Vector3, MATRIX_TOL};
use crate::group::FiniteGroup;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CatalogError {
    #[error("unknown polyhedron `{0}`")]
    UnknownPolyhedron(String),
}

/// A Schläfli entry `num/den`, with `den = 1` for ordinary polygons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    pub num: u32,
    pub den: u32,
}

impl Fraction {
    pub const fn new(num: u32, den: u32) -> Self {
        Self { num, den }
    }

    /// Period of the rotation realizing this polygon.
    pub fn rotation_order(&self) -> usize {
        self.num as usize
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolyhedronSpec {
    pub name: String,
    pub p: Fraction,
    pub q: Fraction,
    pub petrie_length: Option<u32>,
    pub index2: bool,
    pub dual_of: Option<String>,
    pub is_petrie_dual: bool,
}

impl PolyhedronSpec {
    /// Dash-separated form of the name, e.g. `4-3_3` or `10-3-5-2`.
    pub fn slug(&self) -> String {
        slugify(&self.name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorTriple {
    pub s1: Isometry,
    pub s2: Isometry,
    pub s0: Isometry,
}

impl GeneratorTriple {
    pub fn from_pair(s1: Isometry, s2: Isometry) -> Self {
        Self {
            s1,
            s2,
            s0: s1.compose(&s2),
        }
    }

    /// Generator `i` for `i ∈ {0, 1, 2}`.
    pub fn get(&self, i: usize) -> &Isometry {
        match i {
            0 => &self.s0,
            1 => &self.s1,
            2 => &self.s2,
            _ => panic!("generator index {i} out of range"),
        }
    }

    /// Max-norm distance between `s1∘s2` and the stored `s0`.
    pub fn composition_residual(&self) -> f64 {
        let c = self.s1.compose(&self.s2);
        (c.linear - self.s0.linear)
            .amax()
            .max((c.translation - self.s0.translation).amax())
    }
}

/// `(s₂⁻¹, s₁⁻¹, s₀)`, the triple of the geometric dual.
pub fn dual_generators(t: &GeneratorTriple) -> GeneratorTriple {
    GeneratorTriple {
        s1: t.s2.inverse(),
        s2: t.s1.inverse(),
        s0: t.s0,
    }
}

/// Open convex cone with apex at the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct FundamentalCone {
    pub spanning: Vec<Vector3>,
    pub facet_normals: Vec<Vector3>,
    pub seed: Vector3,
}

const CONE_TOL: f64 = 1e-12;

impl FundamentalCone {
    pub fn new(spanning: Vec<Vector3>, seed: Vector3) -> Self {
        let mut facet_normals: Vec<Vector3> = Vec::new();
        for i in 0..spanning.len() {
            for j in i + 1..spanning.len() {
                let n = spanning[i].cross(&spanning[j]);
                if n.norm() < 1e-12 {
                    continue;
                }
                let mut n = n.normalize();
                if n.dot(&seed) < 0.0 {
                    n = -n;
                }
                let supporting = spanning.iter().all(|s| n.dot(s) >= -1e-12);
                let known = facet_normals.iter().any(|m| (m - n).amax() < 1e-12);
                if supporting && !known {
                    facet_normals.push(n);
                }
            }
        }
        Self {
            spanning,
            facet_normals,
            seed,
        }
    }

    pub fn contains_within(&self, p: &Vector3, tol: f64) -> bool {
        self.facet_normals.iter().all(|n| n.dot(p) >= -tol)
    }

    /// Deterministic interior points: positive combinations of the
    /// spanning vectors with Halton weights.
    pub fn interior_samples(&self, count: usize) -> Vec<Vector3> {
        const BASES: [u32; 4] = [2, 3, 5, 7];
        (1..=count)
            .map(|i| {
                self.spanning
                    .iter()
                    .zip(BASES)
                    .map(|(s, b)| s.normalize() * (0.05 + halton(i as u32, b)))
                    .sum()
            })
            .collect()
    }
}

fn halton(mut i: u32, base: u32) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

pub fn cone_contains(cone: &FundamentalCone, p: &Vector3, strict: bool) -> bool {
    if strict {
        cone.facet_normals.iter().all(|n| n.dot(p) > CONE_TOL)
    } else {
        cone.contains_within(p, CONE_TOL)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub spec: PolyhedronSpec,
    pub gens: GeneratorTriple,
    pub cone: FundamentalCone,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        &self.spec.name
    }
}

/// Seed strictly closer to itself than to any other orbit point, and
/// sampled interior points of the cone closer to the seed than to any
/// image of it.
pub fn verify_dirichlet(entry: &CatalogEntry, group: &FiniteGroup) -> bool {
    let w = entry.cone.seed;
    let images: Vec<Vector3> = group.elements[1..].iter().map(|g| g.apply(&w)).collect();
    if images.iter().any(|gw| (gw - w).norm() <= MATRIX_TOL) {
        return false;
    }
    entry
        .cone
        .interior_samples(128)
        .iter()
        .all(|x| images.iter().all(|gw| x.dot(&w) > x.dot(gw) + MATRIX_TOL))
}

pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    catalog().iter().map(|e| e.spec.name.as_str())
}

/// Accepts braces form (`{4,3}_3`) or slug form (`4-3_3`).
pub fn lookup(name: &str) -> Result<&'static CatalogEntry, CatalogError> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    catalog()
        .iter()
        .find(|e| e.spec.name == compact || e.spec.slug() == compact)
        .ok_or_else(|| CatalogError::UnknownPolyhedron(name.to_string()))
}

fn slugify(name: &str) -> String {
    name.chars()
        .filter(|c| *c != '{' && *c != '}')
        .map(|c| if c == ',' || c == '/' { '-' } else { c })
        .collect()
}

const INDEX2: [&str; 10] = [
    "{3,3}", "{3,4}", "{4,3}", "{6,3}_4", "{3,5}", "{5,3}", "{5,5/2}", "{5/2,5}", "{3,5/2}",
    "{5/2,3}",
];

struct Row {
    name: &'static str,
    p: Fraction,
    q: Fraction,
    petrie: Option<u32>,
    dual: Option<&'static str>,
    s1: Isometry,
    s2: Isometry,
    s0: Isometry,
    cone: FundamentalCone,
}

fn m(f: impl Fn(f64, f64, f64) -> [f64; 3]) -> Isometry {
    Isometry::from_map(f)
}

fn build_catalog() -> Vec<CatalogEntry> {
    let r2 = 2f64.sqrt();
    let r5 = 5f64.sqrt();
    let a = (1.0 + r5) / 4.0;
    let b = (r5 - 1.0) / 4.0;
    let phi = (1.0 + r5) / 2.0;
    let f = Fraction::new;
    let v = Vector3::new;

    let tet_s2 = m(move |x, y, z| [(x + y) / 2.0 - z / r2, -(x + y) / 2.0 - z / r2, -(x - y) / r2]);
    let ico_s2 = m(move |x, y, z| [a * x - y / 2.0 + b * z, x / 2.0 + b * y - a * z, b * x + a * y + z / 2.0]);
    let ico_s1_10 = m(move |x, y, z| [a * x + y / 2.0 + b * z, b * y - x / 2.0 + a * z, a * y - b * x - z / 2.0]);
    let kp_s2 = m(move |x, y, z| [x / 2.0 - b * y + a * z, b * x - a * y - z / 2.0, a * x + y / 2.0 - b * z]);
    let kp_s1_6 = m(move |x, y, z| [x / 2.0 + b * y + a * z, z / 2.0 - a * y - b * x, y / 2.0 - a * x + b * z]);
    let gi_s2 = m(move |x, y, z| [a * y - b * x - z / 2.0, a * x + y / 2.0 + b * z, x / 2.0 - b * y - a * z]);
    let gi_s1_10 = m(move |x, y, z| [a * y - b * x + z / 2.0, b * z - y / 2.0 - a * x, b * y - x / 2.0 - a * z]);

    let v1 = vec![v(1.0, 0.0, -1.0 / r2), v(0.5, 0.5, 0.0), v(0.5, -0.5, 0.0), v(1.0 / 3.0, 0.0, 1.0 / (3.0 * r2))];
    let v2 = vec![v1[0], v1[1], v1[3]];
    let v3 = vec![v(0.0, 0.0, -1.0), v(1.0, 0.0, -1.0), v(1.0, 1.0, -1.0), v(0.0, 1.0, -1.0)];
    let v4 = vec![v(1.0, 1.0, -1.0), v(1.0, 0.0, -1.0), v(0.0, 0.0, -1.0)];
    let v5 = vec![
        v(phi, 0.0, 1.0),
        v(phi, 0.0, 0.0),
        v((2.0 + r5) / 3.0, (1.0 + r5) / 6.0, 0.0),
        v((3.0 + r5) / 4.0, (1.0 + r5) / 4.0, 0.5),
    ];
    let v6 = v5[..3].to_vec();

    let w_tet = v(4.0 / 9.0, 0.0, -2.0 / (9.0 * r2));
    let w_hemi = v(11.0 / 24.0, 1.0 / 8.0, -r2 / 12.0);
    let w_cube = v(1.0 / 3.0, 1.0 / 3.0, -2.0 / 3.0);
    let w_64 = v(0.5, 0.25, -0.75);
    let w_ico = v((7.0 + 5.0 * r5) / 18.0, (1.0 + r5) / 18.0, 1.0 / 3.0);
    let w_120 = v((5.0 + 4.0 * r5) / 12.0, (1.0 + r5) / 24.0, 0.25);

    let c1 = FundamentalCone::new(v1, w_tet);
    let c2 = FundamentalCone::new(v2, w_hemi);
    let c3 = FundamentalCone::new(v3.clone(), w_cube);
    let c3b = FundamentalCone::new(v3, w_cube);
    let c4 = FundamentalCone::new(v4, w_64);
    let c5 = FundamentalCone::new(v5, w_ico);
    let c6 = FundamentalCone::new(v6, w_120);

    let rows = vec![
        Row {
            name: "{3,3}",
            p: f(3, 1),
            q: f(3, 1),
            petrie: None,
            dual: Some("{3,3}"),
            s1: m(move |x, y, z| [(x - y) / 2.0 + z / r2, (x - y) / 2.0 - z / r2, (x + y) / r2]),
            s2: tet_s2,
            s0: m(|x, y, z| [y, x, -z]),
            cone: c1,
        },
        Row {
            name: "{4,3}_3",
            p: f(4, 1),
            q: f(3, 1),
            petrie: Some(3),
            dual: None,
            s1: m(|x, y, z| [-y, x, -z]),
            s2: tet_s2,
            s0: m(move |x, y, z| [(x + y) / 2.0 + z / r2, (x + y) / 2.0 - z / r2, (x - y) / r2]),
            cone: c2,
        },
        Row {
            name: "{4,3}",
            p: f(4, 1),
            q: f(3, 1),
            petrie: None,
            dual: Some("{3,4}"),
            s1: m(|x, y, z| [y, -x, z]),
            s2: m(|x, y, z| [y, -z, -x]),
            s0: m(|x, y, z| [-z, -y, -x]),
            cone: c3,
        },
        Row {
            name: "{6,3}_4",
            p: f(6, 1),
            q: f(3, 1),
            petrie: Some(4),
            dual: None,
            s1: m(|x, y, z| [-z, -x, -y]),
            s2: m(|x, y, z| [y, -z, -x]),
            s0: m(|x, y, z| [x, -y, z]),
            cone: c3b,
        },
        Row {
            name: "{6,4}_3",
            p: f(6, 1),
            q: f(4, 1),
            petrie: Some(3),
            dual: None,
            s1: m(|x, y, z| [-z, -x, -y]),
            s2: m(|x, y, z| [-y, x, z]),
            s0: m(|x, y, z| [-z, y, -x]),
            cone: c4,
        },
        Row {
            name: "{3,5}",
            p: f(3, 1),
            q: f(5, 1),
            petrie: None,
            dual: Some("{5,3}"),
            s1: m(move |x, y, z| [a * x + y / 2.0 + b * z, x / 2.0 - b * y - a * z, a * y - b * x - z / 2.0]),
            s2: ico_s2,
            s0: m(|x, y, z| [x, -y, -z]),
            cone: c5.clone(),
        },
        Row {
            name: "{10,5}_3",
            p: f(10, 1),
            q: f(5, 1),
            petrie: Some(3),
            dual: None,
            s1: ico_s1_10,
            s2: ico_s2,
            s0: m(|x, y, z| [x, y, -z]),
            cone: c6.clone(),
        },
        Row {
            name: "{10,3}_5",
            p: f(10, 1),
            q: f(3, 1),
            petrie: Some(5),
            dual: None,
            s1: ico_s1_10,
            s2: m(move |x, y, z| [a * x + y / 2.0 - b * z, x / 2.0 - b * y + a * z, b * x - a * y - z / 2.0]),
            s0: m(|x, y, z| [x, -y, z]),
            cone: c6.clone(),
        },
        Row {
            name: "{5,5/2}",
            p: f(5, 1),
            q: f(5, 2),
            petrie: None,
            dual: Some("{5/2,5}"),
            s1: m(move |x, y, z| [x / 2.0 + b * y + a * z, b * x + a * y - z / 2.0, y / 2.0 - a * x + b * z]),
            s2: kp_s2,
            s0: m(|x, y, z| [x, -y, -z]),
            cone: c5.clone(),
        },
        Row {
            name: "{6,5/2}",
            p: f(6, 1),
            q: f(5, 2),
            petrie: None,
            dual: None,
            s1: kp_s1_6,
            s2: kp_s2,
            s0: m(|x, y, z| [x, y, -z]),
            cone: c6.clone(),
        },
        Row {
            name: "{6,5}",
            p: f(6, 1),
            q: f(5, 1),
            petrie: None,
            dual: None,
            s1: kp_s1_6,
            s2: m(move |x, y, z| [x / 2.0 + b * y - a * z, b * x + a * y + z / 2.0, a * x - y / 2.0 + b * z]),
            s0: m(|x, y, z| [x, -y, z]),
            cone: c6.clone(),
        },
        Row {
            name: "{3,5/2}",
            p: f(3, 1),
            q: f(5, 2),
            petrie: None,
            dual: Some("{5/2,3}"),
            s1: m(move |x, y, z| [a * y - b * x + z / 2.0, b * z - y / 2.0 - a * x, x / 2.0 - b * y + a * z]),
            s2: gi_s2,
            s0: m(|x, y, z| [x, -y, -z]),
            cone: c5,
        },
        Row {
            name: "{10/3,5/2}",
            p: f(10, 3),
            q: f(5, 2),
            petrie: None,
            dual: None,
            s1: gi_s1_10,
            s2: gi_s2,
            s0: m(|x, y, z| [x, -y, z]),
            cone: c6.clone(),
        },
        Row {
            name: "{10/3,3}",
            p: f(10, 3),
            q: f(3, 1),
            petrie: None,
            dual: None,
            s1: gi_s1_10,
            s2: m(move |x, y, z| [z / 2.0 - a * y - b * x, a * x - y / 2.0 - b * z, x / 2.0 + b * y + a * z]),
            s0: m(|x, y, z| [x, y, -z]),
            cone: c6,
        },
    ];

    let mut entries = Vec::with_capacity(18);
    for row in rows {
        let gens = GeneratorTriple {
            s1: row.s1,
            s2: row.s2,
            s0: row.s0,
        };
        let spec = PolyhedronSpec {
            name: row.name.to_string(),
            p: row.p,
            q: row.q,
            petrie_length: row.petrie,
            index2: INDEX2.contains(&row.name),
            dual_of: row.dual.map(str::to_string),
            is_petrie_dual: row.dual.is_none(),
        };
        let entry = CatalogEntry {
            spec,
            gens,
            cone: row.cone,
        };
        check_entry(&entry);
        let partner = row.dual.filter(|d| *d != row.name);
        entries.push(entry);
        if let Some(dual_name) = partner {
            let base = entries.last().expect("just pushed").clone();
            let dual = CatalogEntry {
                spec: PolyhedronSpec {
                    name: dual_name.to_string(),
                    p: base.spec.q,
                    q: base.spec.p,
                    petrie_length: None,
                    index2: INDEX2.contains(&dual_name),
                    dual_of: Some(base.spec.name.clone()),
                    is_petrie_dual: false,
                },
                gens: dual_generators(&base.gens),
                cone: base.cone,
            };
            check_entry(&dual);
            entries.push(dual);
        }
    }
    entries
}

/// Generator orders and the relation `s0 = s1∘s2` for one entry.
#[derive(Clone, Debug, PartialEq)]
pub struct EntryCheck {
    pub orders: [Option<usize>; 3],
    pub expected_orders: [usize; 3],
    pub composition_residual: f64,
    pub orthogonality_residual: f64,
}

impl EntryCheck {
    pub fn passed(&self) -> bool {
        self.orders.map(|o| o.unwrap_or(0)) == self.expected_orders
            && self.composition_residual < MATRIX_TOL
            && self.orthogonality_residual < MATRIX_TOL
    }
}

pub fn entry_check(entry: &CatalogEntry) -> EntryCheck {
    let g = &entry.gens;
    EntryCheck {
        orders: [g.s1, g.s2, g.s0].map(|s| iso_order(&s, 64)),
        expected_orders: [entry.spec.p.rotation_order(), entry.spec.q.rotation_order(), 2],
        composition_residual: g.composition_residual(),
        orthogonality_residual: [g.s1, g.s2, g.s0]
            .iter()
            .map(Isometry::orthogonality_residual)
            .fold(0.0, f64::max),
    }
}

fn check_entry(entry: &CatalogEntry) {
    let check = entry_check(entry);
    assert!(check.passed(), "catalog entry {} failed its load check: {check:?}", entry.spec.name);
}
