//! Finite isometry groups: closure, stabilizers and the type set of a point.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::catalog::GeneratorTriple;
use crate::geometry::{isometry_key, points_equal, Isometry, PointSet, Vector3, POINT_TOL};

pub const DEFAULT_CAP: usize = 10_000;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum GroupError {
    #[error("group closure exceeded {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("element set is not closed under composition")]
    NotClosed,
    #[error("point is fixed by the whole group")]
    CenterPoint,
    #[error("point is fixed by exactly two generators")]
    InconsistentFixing,
}

/// Enumerated group with a Cayley table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub elements: Vec<Isometry>,
    /// Indices of `s1, s2, s0` when built from a generator triple.
    pub generator_indices: Option<[usize; 3]>,
    cayley: Vec<usize>,
    inverses: Vec<usize>,
}

struct ElementIndex {
    buckets: HashMap<[i64; 12], Vec<usize>>,
}

impl ElementIndex {
    fn new() -> Self {
        Self {
            buckets: HashMap::new(),
        }
    }

    fn find(&self, elements: &[Isometry], g: &Isometry) -> Option<usize> {
        if let Some(ids) = self.buckets.get(&isometry_key(g)) {
            if let Some(&i) = ids.iter().find(|&&i| elements[i].approx_eq(g, POINT_TOL)) {
                return Some(i);
            }
        }
        elements.iter().position(|e| e.approx_eq(g, POINT_TOL))
    }

    fn insert(&mut self, g: &Isometry, i: usize) {
        self.buckets.entry(isometry_key(g)).or_default().push(i);
    }
}

impl FiniteGroup {
    /// Breadth-first closure of `⟨s1, s2⟩`, right-multiplying by `s1`
    /// before `s2`.
    pub fn close(gens: &GeneratorTriple, cap: usize) -> Result<Self, GroupError> {
        let mut elements = vec![Isometry::identity()];
        let mut index = ElementIndex::new();
        index.insert(&elements[0], 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in [&gens.s1, &gens.s2] {
                let g = elements[i].compose(s);
                if index.find(&elements, &g).is_none() {
                    if elements.len() == cap {
                        return Err(GroupError::GroupTooLarge { cap });
                    }
                    index.insert(&g, elements.len());
                    queue.push_back(elements.len());
                    elements.push(g);
                }
            }
        }
        let mut group = Self::with_table(elements, index)?;
        let find = |g: &Isometry| group.index_of(g).ok_or(GroupError::NotClosed);
        group.generator_indices = Some([find(&gens.s1)?, find(&gens.s2)?, find(&gens.s0)?]);
        Ok(group)
    }

    /// Group from an explicit element list; the identity is moved to the
    /// front and closure is verified.
    pub fn from_elements(mut elements: Vec<Isometry>) -> Result<Self, GroupError> {
        let id = elements
            .iter()
            .position(|g| g.is_identity(POINT_TOL))
            .ok_or(GroupError::NotClosed)?;
        elements.swap(0, id);
        let mut index = ElementIndex::new();
        for (i, g) in elements.iter().enumerate() {
            index.insert(g, i);
        }
        Self::with_table(elements, index)
    }

    fn with_table(elements: Vec<Isometry>, index: ElementIndex) -> Result<Self, GroupError> {
        let n = elements.len();
        let mut cayley = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let g = elements[i].compose(&elements[j]);
                cayley[i * n + j] = index.find(&elements, &g).ok_or(GroupError::NotClosed)?;
            }
        }
        let inverses = (0..n)
            .map(|i| (0..n).find(|&j| cayley[i * n + j] == 0).ok_or(GroupError::NotClosed))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            elements,
            generator_indices: None,
            cayley,
            inverses,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Index of `elements[i] ∘ elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.cayley[i * self.order() + j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }

    pub fn index_of(&self, g: &Isometry) -> Option<usize> {
        self.elements.iter().position(|e| e.approx_eq(g, POINT_TOL))
    }

    /// Indices of `⟨elements[i]⟩` in power order, starting at the identity.
    pub fn cyclic_subgroup(&self, i: usize) -> Vec<usize> {
        let mut out = vec![0];
        let mut acc = i;
        while acc != 0 {
            out.push(acc);
            acc = self.mul(acc, i);
        }
        out
    }

    pub fn element_order(&self, i: usize) -> usize {
        self.cyclic_subgroup(i).len()
    }

    pub fn stabilizer(&self, p: &Vector3) -> Vec<usize> {
        stabilizer(self, p)
    }

    /// Distinct images of `p`, in element order.
    pub fn orbit(&self, p: &Vector3) -> Vec<Vector3> {
        let mut set = PointSet::new();
        for g in &self.elements {
            set.insert(g.apply(p));
        }
        set.into_points()
    }

    /// True when `⟨a⟩ ∩ ⟨b⟩ = {1}` for each pair of generators.
    pub fn has_intersection_property(&self) -> bool {
        let Some([s1, s2, s0]) = self.generator_indices else {
            return false;
        };
        let sub = |i| self.cyclic_subgroup(i);
        let trivial = |a: Vec<usize>, b: Vec<usize>| a.iter().filter(|x| b.contains(x)).count() == 1;
        trivial(sub(s1), sub(s2)) && trivial(sub(s1), sub(s0)) && trivial(sub(s2), sub(s0))
    }

    /// Whether every row and column of the Cayley table is a permutation.
    pub fn is_latin_square(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            (0..n).all(|j| {
                let r = std::mem::replace(&mut row[self.mul(i, j)], true);
                let c = std::mem::replace(&mut col[self.mul(j, i)], true);
                !r && !c
            })
        })
    }
}

pub fn stabilizer(g: &FiniteGroup, p: &Vector3) -> Vec<usize> {
    g.elements
        .iter()
        .enumerate()
        .filter(|(_, e)| points_equal(&e.apply(p), p))
        .map(|(i, _)| i)
        .collect()
}

pub fn satisfies_ipc(g: &FiniteGroup, v: &Vector3) -> bool {
    stabilizer(g, v) == [0]
}

/// The set `I_v ⊆ {0, 1, 2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TypeSet(u8);

impl TypeSet {
    pub const FULL: TypeSet = TypeSet(0b111);
    pub const S0_FIXED: TypeSet = TypeSet(0b110);
    pub const S1_FIXED: TypeSet = TypeSet(0b100);
    pub const S2_FIXED: TypeSet = TypeSet(0b010);

    pub fn contains(&self, i: usize) -> bool {
        i < 3 && self.0 & (1 << i) != 0
    }

    pub fn members(&self) -> Vec<usize> {
        (0..3).filter(|&i| self.contains(i)).collect()
    }

    pub fn from_members(members: &[usize]) -> Option<TypeSet> {
        let bits = members.iter().try_fold(0u8, |acc, &i| (i < 3).then(|| acc | 1 << i))?;
        [Self::FULL, Self::S0_FIXED, Self::S1_FIXED, Self::S2_FIXED]
            .into_iter()
            .find(|t| t.0 == bits)
    }

    pub fn is_full(&self) -> bool {
        *self == Self::FULL
    }
}

impl fmt::Display for TypeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.members().iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

pub fn type_set(gens: &GeneratorTriple, v: &Vector3) -> Result<TypeSet, GroupError> {
    let fixed = [0, 1, 2].map(|i| points_equal(&gens.get(i).apply(v), v));
    match fixed {
        [true, true, true] => Err(GroupError::CenterPoint),
        [false, false, false] => Ok(TypeSet::FULL),
        [true, false, false] => Ok(TypeSet::S0_FIXED),
        [false, true, false] => Ok(TypeSet::S1_FIXED),
        [false, false, true] => Ok(TypeSet::S2_FIXED),
        _ => Err(GroupError::InconsistentFixing),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    fn group(name: &str) -> FiniteGroup {
        FiniteGroup::close(&lookup(name).unwrap().gens, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn orders_of_small_groups() {
        assert_eq!(group("{3,3}").order(), 12);
        assert_eq!(group("{4,3}_3").order(), 24);
        assert_eq!(group("{10,5}_3").order(), 120);
    }

    #[test]
    fn identity_first_and_generators_indexed() {
        let g = group("{4,3}");
        assert!(g.elements[0].is_identity(1e-15));
        let [s1, s2, s0] = g.generator_indices.unwrap();
        assert_eq!((s1, s2), (1, 2));
        assert_eq!(g.mul(s1, s2), s0);
        assert_eq!(g.element_order(s1), 4);
    }

    #[test]
    fn cap_is_enforced() {
        let gens = lookup("{10,5}_3").unwrap().gens;
        assert_eq!(FiniteGroup::close(&gens, 50).unwrap_err(), GroupError::GroupTooLarge { cap: 50 });
    }

    #[test]
    fn stabilizers() {
        let e = lookup("{4,3}_3").unwrap();
        let g = group("{4,3}_3");
        assert_eq!(stabilizer(&g, &e.cone.seed), vec![0]);
        assert_eq!(stabilizer(&g, &Vector3::zeros()).len(), 24);
        let v = Vector3::new(0.5, 0.3, 2f64.sqrt() / 10.0);
        let s0 = g.generator_indices.unwrap()[2];
        assert_eq!(stabilizer(&g, &v), vec![0, s0]);
        assert!(satisfies_ipc(&group("{4,3}"), &lookup("{4,3}").unwrap().cone.seed));
        assert!(!satisfies_ipc(&g, &Vector3::zeros()));
    }

    #[test]
    fn type_sets() {
        let e = lookup("{4,3}_3").unwrap();
        assert_eq!(type_set(&e.gens, &e.cone.seed), Ok(TypeSet::FULL));
        let v = Vector3::new(0.5, 0.3, 2f64.sqrt() / 10.0);
        assert_eq!(type_set(&e.gens, &v), Ok(TypeSet::S0_FIXED));
        assert_eq!(type_set(&e.gens, &Vector3::zeros()), Err(GroupError::CenterPoint));
        assert_eq!(TypeSet::S0_FIXED.to_string(), "{1,2}");
        assert_eq!(TypeSet::from_members(&[2]), Some(TypeSet::S1_FIXED));
        assert_eq!(TypeSet::from_members(&[0]), None);
    }

    #[test]
    fn from_elements_rebuilds_table() {
        let g = group("{3,3}");
        let mut els = g.elements.clone();
        els.reverse();
        let h = FiniteGroup::from_elements(els).unwrap();
        assert_eq!(h.order(), 12);
        assert!(h.elements[0].is_identity(1e-15));
        assert!(h.is_latin_square());
        let not_closed = vec![Isometry::identity(), g.elements[1]];
        assert_eq!(FiniteGroup::from_elements(not_closed).unwrap_err(), GroupError::NotClosed);
    }
}
