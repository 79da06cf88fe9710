#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skelsnub::catalog::CatalogEntry;
use skelsnub::group::{satisfies_ipc, DEFAULT_CAP};
use skelsnub::snub::canonical_cycle;
use skelsnub::{build_snub, FiniteGroup, SkeletalPolyhedron, Vector3};

pub const PHI: f64 = 1.618_033_988_749_895;

pub fn setup(name: &str) -> (&'static CatalogEntry, FiniteGroup) {
    let e = skelsnub::lookup(name).unwrap();
    (e, FiniteGroup::close(&e.gens, DEFAULT_CAP).unwrap())
}

pub fn seed_snub(name: &str) -> SkeletalPolyhedron {
    let (e, g) = setup(name);
    build_snub(&g, &e.gens, e.cone.seed).unwrap()
}

/// Random points of the open cone with trivial stabilizer.
pub fn random_ipc_points(entry: &CatalogEntry, group: &FiniteGroup, count: usize, seed: u64) -> Vec<Vector3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let p: Vector3 = entry
            .cone
            .spanning
            .iter()
            .map(|s| s.normalize() * rng.gen_range(0.05..1.0))
            .sum();
        if entry.cone.contains_within(&p, 0.0) && satisfies_ipc(group, &p) {
            out.push(p);
        }
    }
    out
}

pub fn icosahedron_vertices() -> Vec<Vector3> {
    let mut v = Vec::new();
    for a in [1.0, -1.0] {
        for b in [PHI, -PHI] {
            v.push(Vector3::new(0.0, a, b));
            v.push(Vector3::new(a, b, 0.0));
            v.push(Vector3::new(b, 0.0, a));
        }
    }
    v
}

pub fn dodecahedron_vertices() -> Vec<Vector3> {
    let mut v = Vec::new();
    for x in [1.0, -1.0] {
        for y in [1.0, -1.0] {
            for z in [1.0, -1.0] {
                v.push(Vector3::new(x, y, z));
            }
        }
    }
    for a in [1.0 / PHI, -1.0 / PHI] {
        for b in [PHI, -PHI] {
            v.push(Vector3::new(0.0, a, b));
            v.push(Vector3::new(a, b, 0.0));
            v.push(Vector3::new(b, 0.0, a));
        }
    }
    v
}

pub fn cube_vertices() -> Vec<Vector3> {
    (0..8)
        .map(|i| Vector3::new(if i & 1 == 0 { 1.0 } else { -1.0 }, if i & 2 == 0 { 1.0 } else { -1.0 }, if i & 4 == 0 { 1.0 } else { -1.0 }))
        .collect()
}

fn distance_classes(v: &[Vector3]) -> Vec<f64> {
    let mut d: Vec<f64> = Vec::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let x = (v[i] - v[j]).norm();
            if d.iter().all(|y| (x - y).abs() > 1e-6) {
                d.push(x);
            }
        }
    }
    d.sort_by(f64::total_cmp);
    d
}

fn planar(pts: &[Vector3]) -> bool {
    let n = (pts[1] - pts[0]).cross(&(pts[2] - pts[0]));
    pts.iter().all(|p| (p - pts[0]).dot(&n).abs() < 1e-9)
}

/// Regular polyhedron whose edges join vertices at the `class`-th
/// smallest distance and whose faces are the planar `p`-cycles.
pub fn regular(vertices: Vec<Vector3>, class: usize, p: usize) -> SkeletalPolyhedron {
    let d = distance_classes(&vertices)[class];
    let n = vertices.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && ((vertices[i] - vertices[j]).norm() - d).abs() < 1e-6).collect())
        .collect();
    let mut faces: Vec<Vec<usize>> = Vec::new();
    let mut path = Vec::new();
    fn walk(adj: &[Vec<usize>], p: usize, path: &mut Vec<usize>, v: &[Vector3], out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if path.len() == p {
            if adj[last].contains(&path[0]) {
                let pts: Vec<Vector3> = path.iter().map(|&i| v[i]).collect();
                let c = canonical_cycle(path);
                if planar(&pts) && !out.contains(&c) {
                    out.push(c);
                }
            }
            return;
        }
        for &w in &adj[last] {
            if w > path[0] && !path.contains(&w) {
                path.push(w);
                walk(adj, p, path, v, out);
                path.pop();
            }
        }
    }
    for s in 0..n {
        path.clear();
        path.push(s);
        walk(&adj, p, &mut path, &vertices, &mut faces);
    }
    SkeletalPolyhedron::from_faces(vertices, faces)
}

pub fn tetrahedron() -> SkeletalPolyhedron {
    regular(cube_vertices().into_iter().filter(|v| v.x * v.y * v.z > 0.0).collect(), 0, 3)
}
pub fn cube() -> SkeletalPolyhedron {
    regular(cube_vertices(), 0, 4)
}
pub fn octahedron() -> SkeletalPolyhedron {
    let v = (0..3)
        .flat_map(|k| [1.0, -1.0].map(|s| Vector3::ith(k, s)))
        .collect();
    regular(v, 0, 3)
}
pub fn icosahedron() -> SkeletalPolyhedron {
    regular(icosahedron_vertices(), 0, 3)
}
pub fn dodecahedron() -> SkeletalPolyhedron {
    regular(dodecahedron_vertices(), 0, 5)
}
pub fn great_icosahedron() -> SkeletalPolyhedron {
    regular(icosahedron_vertices(), 1, 3)
}
pub fn great_dodecahedron() -> SkeletalPolyhedron {
    regular(icosahedron_vertices(), 0, 5)
}
pub fn small_stellated_dodecahedron() -> SkeletalPolyhedron {
    regular(icosahedron_vertices(), 1, 5)
}
pub fn great_stellated_dodecahedron() -> SkeletalPolyhedron {
    regular(dodecahedron_vertices(), 3, 5)
}

/// Projective plane with three quadrilaterals on four vertices.
pub fn hemicube() -> SkeletalPolyhedron {
    let v = cube_vertices().into_iter().filter(|v| v.x * v.y * v.z > 0.0).collect();
    SkeletalPolyhedron::from_faces(v, vec![vec![0, 1, 2, 3], vec![0, 2, 3, 1], vec![0, 3, 1, 2]])
}

/// Pairwise distances scaled by the shortest edge, sorted.
pub fn shape_profile(poly: &SkeletalPolyhedron) -> Vec<f64> {
    let edge = (0..poly.edges.len()).map(|e| poly.edge_length(e)).fold(f64::INFINITY, f64::min);
    let v = &poly.vertices;
    let mut d: Vec<f64> = (0..v.len())
        .flat_map(|i| (i + 1..v.len()).map(move |j| (i, j)))
        .map(|(i, j)| (v[i] - v[j]).norm() / edge)
        .collect();
    d.sort_by(f64::total_cmp);
    d
}

pub fn similar(a: &SkeletalPolyhedron, b: &SkeletalPolyhedron) -> bool {
    let (pa, pb) = (shape_profile(a), shape_profile(b));
    skelsnub::analysis::isomorphic(a, b) && pa.len() == pb.len() && pa.iter().zip(&pb).all(|(x, y)| (x - y).abs() < 1e-7)
}
