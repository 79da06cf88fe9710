//! From a polyhedron of snub type back to its parent: the rotations σ₁, σ₂
//! and the orbit structure of the face centres.

use std::collections::HashSet;

use crate::analysis::{corners_at, isomorphic, validate, AnalysisError, Corner};
use crate::catalog::GeneratorTriple;
use crate::geometry::{Isometry, Matrix3, PointSet, Vector3, POINT_TOL};
use crate::group::{FiniteGroup, GroupError, DEFAULT_CAP};
use crate::snub::{build_snub, canonical_cycle, SkeletalPolyhedron, SnubError};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ConverseError {
    #[error("no symmetry maps the base vertex to vertex {0}")]
    NotVertexTransitive(usize),
    #[error("marking of special triangles fails at vertex {0}")]
    MarkingInconsistent(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("faces around the base vertex do not follow p.3.3.q.3")]
    NotSnubType,
    #[error("no symmetry qualifies as {0}")]
    NoSuchSymmetry(&'static str),
    #[error("{count} symmetries qualify as {which}")]
    NonUnique { which: &'static str, count: usize },
    #[error("stabilizer of K{element} has order {found}, expected {expected}")]
    StabilizerMismatch {
        element: usize,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Snub(#[from] SnubError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

fn point_index(poly: &SkeletalPolyhedron) -> PointSet {
    let mut set = PointSet::new();
    for p in &poly.vertices {
        set.insert(*p);
    }
    set
}

fn vertex_permutation(poly: &SkeletalPolyhedron, set: &PointSet, g: &Isometry) -> Option<Vec<usize>> {
    poly.vertices.iter().map(|p| set.find(&g.apply(p))).collect()
}

struct Incidence {
    edges: HashSet<(usize, usize)>,
    faces: HashSet<Vec<usize>>,
}

impl Incidence {
    fn new(poly: &SkeletalPolyhedron) -> Self {
        Self {
            edges: poly.edges.iter().map(|e| (e.a.min(e.b), e.a.max(e.b))).collect(),
            faces: poly.faces.iter().map(|f| canonical_cycle(&f.cycle)).collect(),
        }
    }

    fn preserved_by(&self, perm: &[usize]) -> bool {
        self.edges.iter().all(|&(a, b)| {
            let (x, y) = (perm[a], perm[b]);
            self.edges.contains(&(x.min(y), x.max(y)))
        }) && self.faces.iter().all(|f| {
            let image: Vec<usize> = f.iter().map(|&v| perm[v]).collect();
            self.faces.contains(&canonical_cycle(&image))
        })
    }
}

/// Isometries permuting vertices, edges and faces, found by sending a frame
/// at vertex 0 to frames at every vertex.
pub fn detect_symmetries(poly: &SkeletalPolyhedron) -> Result<FiniteGroup, ConverseError> {
    let n = poly.vertices.len();
    if n == 0 {
        return Err(ConverseError::PreconditionViolated("empty polyhedron"));
    }
    let centre = poly.vertices.iter().sum::<Vector3>() / n as f64;
    let nbrs: Vec<Vec<usize>> = poly
        .neighbours()
        .into_iter()
        .map(|mut v| {
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    let frame = |o: usize, m: usize| {
        let a = poly.vertices[o] - centre;
        let b = poly.vertices[m] - centre;
        (a, b, a.cross(&b))
    };
    let (a, b, c) = nbrs[0]
        .iter()
        .map(|&m| frame(0, m))
        .find(|(_, _, c)| c.norm() > 1e-9)
        .ok_or(ConverseError::PreconditionViolated("degenerate frame at vertex 0"))?;
    let source = Matrix3::from_columns(&[a, b, c]);
    let source_inv = source
        .try_inverse()
        .ok_or(ConverseError::PreconditionViolated("degenerate frame at vertex 0"))?;

    let set = point_index(poly);
    let inc = Incidence::new(poly);
    let mut found: Vec<Isometry> = Vec::new();
    let mut reached = vec![false; n];
    for (w, nb) in nbrs.iter().enumerate() {
        for &m in nb {
            let (a2, b2, c2) = frame(w, m);
            for sign in [1.0, -1.0] {
                let linear = Matrix3::from_columns(&[a2, b2, c2 * sign]) * source_inv;
                let g = Isometry {
                    linear,
                    translation: centre - linear * centre,
                };
                if g.orthogonality_residual() > 1e-9 || found.iter().any(|h| h.approx_eq(&g, POINT_TOL)) {
                    continue;
                }
                let Some(perm) = vertex_permutation(poly, &set, &g) else {
                    continue;
                };
                if inc.preserved_by(&perm) {
                    reached[perm[0]] = true;
                    found.push(g);
                }
            }
        }
    }
    if let Some(w) = reached.iter().position(|r| !r) {
        return Err(ConverseError::NotVertexTransitive(w));
    }
    Ok(FiniteGroup::from_elements(found)?)
}

fn face_sizes(poly: &SkeletalPolyhedron, corners: &[Corner]) -> Vec<usize> {
    corners.iter().map(|c| poly.faces[c.face].cycle.len()).collect()
}

/// For symbol `p.3.3.3.3` with `p ≠ 3`: at each vertex, the one triangle
/// sharing no edge with a `p`-gon. Returns the marked face indices.
pub fn mark_special_triangles(poly: &SkeletalPolyhedron) -> Result<Vec<usize>, ConverseError> {
    let edge_faces = poly.edge_faces();
    let lookup = poly.edge_lookup();
    let touches_big_face = |f: usize| {
        let c = &poly.faces[f].cycle;
        (0..c.len()).any(|i| {
            let (a, b) = (c[i], c[(i + 1) % c.len()]);
            lookup.get(&(a.min(b), a.max(b))).is_none_or(|&e| {
                edge_faces[e].iter().any(|&g| poly.faces[g].cycle.len() != 3)
            })
        })
    };
    let mut marked_at = vec![usize::MAX; poly.vertices.len()];
    for (v, slot) in marked_at.iter_mut().enumerate() {
        let corners = corners_at(poly, v)?;
        let sizes = face_sizes(poly, &corners);
        let big: Vec<usize> = (0..sizes.len()).filter(|&i| sizes[i] != 3).collect();
        if sizes.len() != 5 || big.len() != 1 {
            return Err(ConverseError::PreconditionViolated("vertex symbol is not p.3.3.3.3 with p ≠ 3"));
        }
        let candidates: Vec<usize> = [2, 3]
            .iter()
            .map(|k| corners[(big[0] + k) % 5].face)
            .filter(|&f| !touches_big_face(f))
            .collect();
        if candidates.len() != 1 {
            return Err(ConverseError::MarkingInconsistent(v));
        }
        *slot = candidates[0];
    }
    let mut marked: Vec<usize> = marked_at.clone();
    marked.sort_unstable();
    marked.dedup();
    for &f in &marked {
        if let Some(&v) = poly.faces[f].cycle.iter().find(|&&v| marked_at[v] != f) {
            return Err(ConverseError::MarkingInconsistent(v));
        }
    }
    if marked.len() * 3 != poly.vertices.len() {
        return Err(ConverseError::MarkingInconsistent(0));
    }
    Ok(marked)
}

/// The base vertex with neighbours `v₁..v₅` and faces `F_p, F₁, F₂, F_q, F₃`
/// in the cyclic order of the `p.3.3.q.3` pattern.
#[derive(Clone, Debug, PartialEq)]
pub struct SnubTypeWitness {
    pub vertex: usize,
    pub neighbours: [usize; 5],
    pub faces: [usize; 5],
    pub p: usize,
    pub q: usize,
    /// Marked triangles when `q = 3`.
    pub special: Option<Vec<usize>>,
    /// `F_p` and `F_q` have equal pairwise-distance multisets.
    pub congruent_pq: bool,
}

fn distance_profile(pts: &[Vector3]) -> Vec<f64> {
    let mut d: Vec<f64> = (0..pts.len())
        .flat_map(|i| (i + 1..pts.len()).map(move |j| (i, j)))
        .map(|(i, j)| (pts[i] - pts[j]).norm())
        .collect();
    d.sort_by(f64::total_cmp);
    d
}

pub fn congruent(a: &[Vector3], b: &[Vector3]) -> bool {
    let (da, db) = (distance_profile(a), distance_profile(b));
    da.len() == db.len() && da.iter().zip(&db).all(|(x, y)| (x - y).abs() <= POINT_TOL)
}

impl SnubTypeWitness {
    /// The labelling at vertex 0; for `3.3.3.3.3` the first of
    /// [`SnubTypeWitness::candidates`].
    pub fn find(poly: &SkeletalPolyhedron) -> Result<Self, ConverseError> {
        Self::candidates(poly)?
            .into_iter()
            .next()
            .ok_or(ConverseError::NotSnubType)
    }

    /// Every admissible labelling at vertex 0: one when some face is not a
    /// triangle, ten (five rotations, two orientations) otherwise.
    pub fn candidates(poly: &SkeletalPolyhedron) -> Result<Vec<Self>, ConverseError> {
        let v = 0;
        let corners = corners_at(poly, v)?;
        if corners.len() != 5 {
            return Err(ConverseError::NotSnubType);
        }
        let sizes = face_sizes(poly, &corners);
        let big: Vec<usize> = (0..5).filter(|&i| sizes[i] != 3).collect();
        match big.len() {
            0 => Ok((0..5)
                .flat_map(|ip| [(ip, (ip + 3) % 5), (ip, (ip + 2) % 5)])
                .filter_map(|(ip, iq)| labelled(poly, &corners, ip, iq, None).ok())
                .collect()),
            1 => {
                let marked = mark_special_triangles(poly)?;
                let iq = (0..5)
                    .find(|&i| marked.binary_search(&corners[i].face).is_ok())
                    .ok_or(ConverseError::MarkingInconsistent(v))?;
                Ok(vec![labelled(poly, &corners, big[0], iq, Some(marked))?])
            }
            2 => {
                let key = |i: usize| {
                    let pts = poly.face_points(corners[i].face);
                    let c = pts.iter().sum::<Vector3>() / pts.len() as f64;
                    (sizes[i], pts.iter().map(|p| (p - c).norm()).fold(0.0, f64::max))
                };
                let (k0, k1) = (key(big[0]), key(big[1]));
                let (ip, iq) = if k1.0 > k0.0 || (k1.0 == k0.0 && k1.1 > k0.1 + POINT_TOL) {
                    (big[1], big[0])
                } else {
                    (big[0], big[1])
                };
                Ok(vec![labelled(poly, &corners, ip, iq, None)?])
            }
            _ => Err(ConverseError::NotSnubType),
        }
    }
}

fn labelled(
    poly: &SkeletalPolyhedron,
    corners: &[Corner],
    ip: usize,
    iq: usize,
    special: Option<Vec<usize>>,
) -> Result<SnubTypeWitness, ConverseError> {
    let ordered: Vec<Corner> = match (iq + 5 - ip) % 5 {
        3 => (0..5).map(|k| corners[(ip + k) % 5]).collect(),
        2 => (0..5)
            .map(|k| {
                let c = corners[(ip + 5 - k) % 5];
                Corner {
                    face: c.face,
                    from: c.to,
                    to: c.from,
                }
            })
            .collect(),
        _ => return Err(ConverseError::NotSnubType),
    };
    let tri = |k: usize| poly.faces[ordered[k].face].cycle.len() == 3;
    if !(tri(1) && tri(2) && tri(4)) {
        return Err(ConverseError::NotSnubType);
    }
    let faces = [0, 1, 2, 3, 4].map(|k| ordered[k].face);
    Ok(SnubTypeWitness {
        vertex: 0,
        neighbours: [ordered[4].to, ordered[0].to, ordered[1].to, ordered[2].to, ordered[3].to],
        faces,
        p: poly.faces[faces[0]].cycle.len(),
        q: poly.faces[faces[3]].cycle.len(),
        special,
        congruent_pq: congruent(&poly.face_points(faces[0]), &poly.face_points(faces[3])),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationPair {
    pub sigma1: Isometry,
    pub sigma2: Isometry,
}

impl RotationPair {
    pub fn generators(&self) -> GeneratorTriple {
        GeneratorTriple::from_pair(self.sigma1, self.sigma2)
    }
}

fn face_vertex_set(poly: &SkeletalPolyhedron, f: usize) -> Vec<usize> {
    let mut s = poly.faces[f].cycle.clone();
    s.sort_unstable();
    s
}

/// The unique symmetries with `σ₁(v) = v₂` fixing `F_p` and `σ₂(v) = v₅`
/// fixing `F_q`.
pub fn find_rotations(
    poly: &SkeletalPolyhedron,
    witness: &SnubTypeWitness,
    sym: &FiniteGroup,
) -> Result<RotationPair, ConverseError> {
    let set = point_index(poly);
    let perms: Vec<Option<Vec<usize>>> = sym.elements.iter().map(|g| vertex_permutation(poly, &set, g)).collect();
    let pick = |which: &'static str, target: usize, face: usize| {
        let verts = face_vertex_set(poly, face);
        let hits: Vec<usize> = (0..sym.order())
            .filter(|&i| {
                perms[i].as_ref().is_some_and(|p| {
                    let mut image: Vec<usize> = verts.iter().map(|&x| p[x]).collect();
                    image.sort_unstable();
                    p[witness.vertex] == target && image == verts
                })
            })
            .collect();
        match hits.len() {
            1 => Ok(sym.elements[hits[0]]),
            0 => Err(ConverseError::NoSuchSymmetry(which)),
            count => Err(ConverseError::NonUnique { which, count }),
        }
    };
    let sigma1 = pick("sigma1", witness.neighbours[1], witness.faces[0])?;
    let sigma2 = pick("sigma2", witness.neighbours[4], witness.faces[3])?;
    if sigma1.order(witness.p) != Some(witness.p) {
        return Err(ConverseError::NoSuchSymmetry("sigma1 of order p"));
    }
    if sigma2.order(witness.q) != Some(witness.q) {
        return Err(ConverseError::NoSuchSymmetry("sigma2 of order q"));
    }
    if sigma1.compose(&sigma2).order(2) != Some(2) {
        return Err(ConverseError::NoSuchSymmetry("involution sigma0"));
    }
    Ok(RotationPair { sigma1, sigma2 })
}

/// Orders of the stabilizers of `K₀, K₁, K₂` in `A = ⟨σ₁, σ₂⟩` next to the
/// orders of `⟨σ₂⟩, ⟨σ₁σ₂⟩, ⟨σ₁⟩`, and whether the subgroups coincide.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilizerReport {
    pub found: [usize; 3],
    pub expected: [usize; 3],
    pub equal: [bool; 3],
}

impl StabilizerReport {
    pub fn passed(&self) -> bool {
        self.equal.iter().all(|e| *e)
    }
}

fn same_point_set(a: &[Vector3], b: &[Vector3]) -> bool {
    a.len() == b.len() && a.iter().all(|p| b.iter().any(|q| (p - q).amax() <= POINT_TOL))
}

pub fn stabilizer_report(group: &FiniteGroup, u: &Vector3) -> StabilizerReport {
    let [s1, s2, s0] = group.generator_indices.expect("group built from generators");
    let sigma1 = group.elements[s1];
    let k1 = [*u, sigma1.apply(u)];
    let k2: Vec<Vector3> = group.cyclic_subgroup(s1).iter().map(|&i| group.elements[i].apply(u)).collect();
    let k2 = {
        let mut set = PointSet::new();
        k2.into_iter().for_each(|p| {
            set.insert(p);
        });
        set.into_points()
    };
    let stab = |k: &[Vector3]| -> Vec<usize> {
        (0..group.order())
            .filter(|&i| {
                let image: Vec<Vector3> = k.iter().map(|p| group.elements[i].apply(p)).collect();
                same_point_set(&image, k)
            })
            .collect()
    };
    let sorted = |mut v: Vec<usize>| {
        v.sort_unstable();
        v
    };
    let found = [stab(&[*u]), stab(&k1), stab(&k2)];
    let expected = [s2, s0, s1].map(|i| sorted(group.cyclic_subgroup(i)));
    StabilizerReport {
        found: [0, 1, 2].map(|k| found[k].len()),
        expected: [0, 1, 2].map(|k| expected[k].len()),
        equal: [0, 1, 2].map(|k| found[k] == expected[k]),
    }
}

#[derive(Clone, Debug)]
pub struct ParentReconstruction {
    pub parent: SkeletalPolyhedron,
    pub group: FiniteGroup,
    pub centre: Vector3,
    pub stabilizers: StabilizerReport,
    pub parent_valid: bool,
    pub round_trip: SkeletalPolyhedron,
    pub round_trip_isomorphic: bool,
    /// `[G(P) : A]` when the full symmetry group is known.
    pub index: Option<usize>,
}

impl ParentReconstruction {
    /// `(|V|, |E|, |F|)` of the parent.
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.parent.vertices.len(), self.parent.edges.len(), self.parent.faces.len())
    }
}

/// Orbits `K₀ = u`, `K₁ = {u, σ₁u}`, `K₂ = ⟨σ₁⟩u` with `u` the centre of
/// `F_q`, checked against the stabilizer equalities, plus the round trip
/// `S_Q(v)`.
pub fn reconstruct_parent(
    poly: &SkeletalPolyhedron,
    witness: &SnubTypeWitness,
    rot: &RotationPair,
) -> Result<ParentReconstruction, ConverseError> {
    let gens = rot.generators();
    let group = FiniteGroup::close(&gens, DEFAULT_CAP)?;
    let fq = poly.face_points(witness.faces[3]);
    let centre = fq.iter().sum::<Vector3>() / fq.len() as f64;
    let stabilizers = stabilizer_report(&group, &centre);
    if let Some(k) = (0..3).find(|&k| !stabilizers.equal[k]) {
        return Err(ConverseError::StabilizerMismatch {
            element: k,
            expected: stabilizers.expected[k],
            found: stabilizers.found[k],
        });
    }
    let parent = build_snub(&group, &gens, centre)?;
    let round_trip = build_snub(&group, &gens, poly.vertices[witness.vertex])?;
    Ok(ParentReconstruction {
        parent_valid: validate(&parent).passed(),
        round_trip_isomorphic: isomorphic(&round_trip, poly),
        parent,
        group,
        centre,
        stabilizers,
        round_trip,
        index: None,
    })
}

/// Witness, symmetry detection, rotations and reconstruction in sequence.
/// For `3.3.3.3.3` the first labelling with unique rotations is used.
pub fn reconstruct(poly: &SkeletalPolyhedron) -> Result<ParentReconstruction, ConverseError> {
    let sym = detect_symmetries(poly)?;
    let mut first_err = None;
    for witness in SnubTypeWitness::candidates(poly)? {
        match find_rotations(poly, &witness, &sym) {
            Ok(rot) => {
                let mut r = reconstruct_parent(poly, &witness, &rot)?;
                r.index = Some(sym.order() / r.group.order());
                return Ok(r);
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    Err(first_err.unwrap_or(ConverseError::NotSnubType))
}
