//! Explicitly enumerated permutation groups and their subgroups.
//!
//! A [`FiniteGroup`] stores every element, sorted lexicographically by image
//! sequence. Subgroups are membership bitsets over that canonical order, so
//! intersection and inclusion are word-parallel and element lists come out
//! in canonical order for free.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Caps applied by enumeration routines before they give up with
/// [`Error::ResourceLimit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_order: usize,
    pub max_lattice_nodes: usize,
    /// Witness candidates examined per compatibility query.
    pub max_candidate_checks: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 250_000,
            max_lattice_nodes: 100_000,
            max_candidate_checks: 100_000,
        }
    }
}

/// A subgroup of some [`FiniteGroup`], as a membership set over the parent's
/// canonical element indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Arc<FixedBitSet>,
    order: usize,
}

impl Subgroup {
    pub(crate) fn from_bits(bits: FixedBitSet) -> Self {
        let order = bits.count_ones(..);
        Subgroup {
            members: Arc::new(bits),
            order,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of elements in the parent group.
    pub fn parent_order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, element: usize) -> bool {
        self.members.contains(element)
    }

    /// Member indices in canonical order.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn member_vec(&self) -> Vec<usize> {
        self.members.ones().collect()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mut bits = (*self.members).clone();
        bits.intersect_with(&other.members);
        Subgroup::from_bits(bits)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

/// Subgroups order by size, then lexicographically by member list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.members.ones().cmp(other.members.ones()))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.ones()).finish()
    }
}

/// The orbits of a subgroup on the point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    orbit_of: Vec<usize>,
    orbits: Vec<Vec<usize>>,
}

impl OrbitPartition {
    /// Index of the orbit containing `point`.
    pub fn orbit_index(&self, point: usize) -> usize {
        self.orbit_of[point]
    }

    pub fn orbit_of(&self, point: usize) -> &[usize] {
        &self.orbits[self.orbit_of[point]]
    }

    /// Orbits sorted by least point, each sorted ascending.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

/// A finite group of permutations with all elements enumerated.
#[derive(Clone)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Permutation>,
    lookup: HashMap<Permutation, usize>,
    identity: usize,
    inverses: Vec<usize>,
    table: Option<Vec<u32>>,
}

/// Groups up to this order keep a full multiplication table.
const MUL_TABLE_MAX_ORDER: usize = 1024;

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.elements.len())
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Closure of `generators` under composition, in canonical order.
    pub fn generate(degree: usize, generators: &[Permutation], max_order: usize) -> Result<Self> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let id = Permutation::identity(degree);
        let mut seen: HashMap<Permutation, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut elements = vec![id];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let next = g.compose(&elements[i]);
                if seen.contains_key(&next) {
                    continue;
                }
                if elements.len() >= max_order {
                    return Err(Error::ResourceLimit {
                        what: "group order",
                        limit: max_order,
                    });
                }
                seen.insert(next.clone(), ());
                queue.push_back(elements.len());
                elements.push(next);
            }
        }
        Ok(FiniteGroup::from_closed_set(degree, elements))
    }

    fn from_closed_set(degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        let lookup: HashMap<Permutation, usize> = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let identity = lookup[&Permutation::identity(degree)];
        let inverses = elements.iter().map(|p| lookup[&p.inverse()]).collect();
        let n = elements.len();
        let table = (n <= MUL_TABLE_MAX_ORDER).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(lookup[&a.compose(b)] as u32);
                }
            }
            t
        });
        FiniteGroup {
            degree,
            elements,
            lookup,
            identity,
            inverses,
            table,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// All elements in canonical (lexicographic) order.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &Permutation {
        &self.elements[index]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.lookup.get(p).copied()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Index of `a ∘ b` (apply `b` first).
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.lookup[&self.elements[a].compose(&self.elements[b])],
        }
    }

    #[inline]
    pub fn apply(&self, a: usize, point: usize) -> usize {
        self.elements[a].apply(point)
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.elements[a].commutes_with(&self.elements[b])
    }

    pub fn whole(&self) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order());
        bits.insert_range(..);
        Subgroup::from_bits(bits)
    }

    pub fn trivial(&self) -> Subgroup {
        self.subset_unchecked([self.identity])
    }

    pub(crate) fn subset_unchecked(&self, members: impl IntoIterator<Item = usize>) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order());
        bits.extend(members);
        Subgroup::from_bits(bits)
    }

    /// Wraps an explicit member set, verifying that it is a subgroup.
    pub fn subgroup_from_members(&self, members: impl IntoIterator<Item = usize>) -> Result<Subgroup> {
        let mut bits = FixedBitSet::with_capacity(self.order());
        for m in members {
            if m >= self.order() {
                return Err(Error::ElementNotInGroup);
            }
            bits.insert(m);
        }
        let s = Subgroup::from_bits(bits);
        if !self.is_closed(&s) {
            return Err(Error::PreconditionUnmet(
                "member set is not closed under composition and inverse".into(),
            ));
        }
        Ok(s)
    }

    /// Closure and inverse-closure, checked element by element.
    pub fn is_closed(&self, s: &Subgroup) -> bool {
        if !s.contains(self.identity) {
            return false;
        }
        let members = s.member_vec();
        members.iter().all(|&a| s.contains(self.inverses[a]))
            && members
                .iter()
                .all(|&a| members.iter().all(|&b| s.contains(self.mul(a, b))))
    }

    /// Subgroup generated by element indices.
    pub fn generated_subgroup(&self, generators: &[usize]) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order());
        bits.insert(self.identity);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in generators {
                let y = self.mul(g, x);
                if !bits.put(y) {
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_bits(bits)
    }

    /// Subgroup generated by permutations, which must be group elements.
    pub fn subgroup_generated_by(&self, generators: &[Permutation]) -> Result<Subgroup> {
        let idx = generators
            .iter()
            .map(|g| self.index_of(g).ok_or(Error::ElementNotInGroup))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.generated_subgroup(&idx))
    }

    /// Elements commuting with every element of `subset` (by index).
    pub fn centralizer_of_indices(&self, subset: &[usize]) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.order());
        for (i, p) in self.elements.iter().enumerate() {
            if subset.iter().all(|&s| p.commutes_with(&self.elements[s])) {
                bits.insert(i);
            }
        }
        Subgroup::from_bits(bits)
    }

    /// `{ξ : ξs = sξ for all s ∈ subset}`; the centralizer of `∅` is the group.
    pub fn centralizer(&self, subset: &[Permutation]) -> Result<Subgroup> {
        let idx = subset
            .iter()
            .map(|g| self.index_of(g).ok_or(Error::ElementNotInGroup))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.centralizer_of_indices(&idx))
    }

    pub fn centre(&self) -> Subgroup {
        let all: Vec<usize> = (0..self.order()).collect();
        self.centralizer_of_indices(&all)
    }

    /// Centre of a subgroup, `Z(S) = S ∩ C(S)`.
    pub fn centre_of(&self, s: &Subgroup) -> Subgroup {
        let members = s.member_vec();
        self.subset_unchecked(
            members
                .iter()
                .copied()
                .filter(|&a| members.iter().all(|&b| self.commute(a, b))),
        )
    }

    /// Sorted orbit of `point` under `sub`.
    pub fn orbit(&self, sub: &Subgroup, point: usize) -> Vec<usize> {
        let mut hit = vec![false; self.degree];
        for g in sub.members() {
            hit[self.apply(g, point)] = true;
        }
        hit.iter().enumerate().filter_map(|(i, &h)| h.then_some(i)).collect()
    }

    pub fn orbits(&self, sub: &Subgroup) -> OrbitPartition {
        let mut orbit_of = vec![usize::MAX; self.degree];
        let mut orbits = Vec::new();
        for p in 0..self.degree {
            if orbit_of[p] != usize::MAX {
                continue;
            }
            let orbit = self.orbit(sub, p);
            for &q in &orbit {
                orbit_of[q] = orbits.len();
            }
            orbits.push(orbit);
        }
        OrbitPartition { orbit_of, orbits }
    }

    /// `{g ∈ sub : g(point) = point}`.
    pub fn stabilizer(&self, sub: &Subgroup, point: usize) -> Result<Subgroup> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        Ok(self.subset_unchecked(sub.members().filter(|&g| self.apply(g, point) == point)))
    }

    /// Setwise stabilizer `{g ∈ sub : g(set) = set}` of a sorted point set.
    pub fn set_stabilizer(&self, sub: &Subgroup, set: &[usize]) -> Subgroup {
        let mut inside = vec![false; self.degree];
        for &p in set {
            inside[p] = true;
        }
        self.subset_unchecked(sub.members().filter(|&g| set.iter().all(|&p| inside[self.apply(g, p)])))
    }

    /// The product set `{ab : a ∈ A, b ∈ B}` as a member set (not necessarily a subgroup).
    pub fn product_members(&self, a: &Subgroup, b: &Subgroup) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.order());
        let bs = b.member_vec();
        for x in a.members() {
            for &y in &bs {
                bits.insert(self.mul(x, y));
            }
        }
        bits
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn s3() -> FiniteGroup {
        FiniteGroup::generate(3, &[p(&[1, 0, 2]), p(&[1, 2, 0])], 1000).unwrap()
    }

    #[test]
    fn generation_examples() {
        assert_eq!(FiniteGroup::generate(3, &[], 10).unwrap().order(), 1);
        assert_eq!(FiniteGroup::generate(3, &[p(&[1, 0, 2])], 10).unwrap().order(), 2);
        assert_eq!(s3().order(), 6);
    }

    #[test]
    fn generation_errors() {
        assert!(matches!(
            FiniteGroup::generate(3, &[p(&[1, 0])], 10),
            Err(Error::DegreeMismatch { expected: 3, found: 2 })
        ));
        assert!(matches!(
            FiniteGroup::generate(3, &[p(&[1, 0, 2]), p(&[1, 2, 0])], 5),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let g = s3();
        let imgs: Vec<&[usize]> = g.elements().iter().map(|e| e.images()).collect();
        assert_eq!(
            imgs,
            vec![
                &[0, 1, 2][..],
                &[0, 2, 1],
                &[1, 0, 2],
                &[1, 2, 0],
                &[2, 0, 1],
                &[2, 1, 0]
            ]
        );
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn centralizer_examples() {
        let g = s3();
        assert_eq!(g.centralizer(&[Permutation::identity(3)]).unwrap().order(), 6);
        let c = g.centralizer(&[p(&[1, 2, 0])]).unwrap();
        assert_eq!(c.member_vec(), vec![0, 3, 4]);
        assert!(g.centre().is_trivial());
        assert_eq!(g.centralizer(&[]).unwrap(), g.whole());
        assert!(matches!(
            g.centralizer(&[p(&[0, 1, 2, 3])]),
            Err(Error::ElementNotInGroup)
        ));
    }

    #[test]
    fn centre_of_small_groups() {
        let one = FiniteGroup::generate(3, &[], 10).unwrap();
        assert_eq!(one.centre(), one.whole());
        let two = FiniteGroup::generate(2, &[p(&[1, 0])], 10).unwrap();
        assert_eq!(two.centre(), two.whole());
    }

    #[test]
    fn stabilizer_of_point_zero() {
        let g = s3();
        let st = g.stabilizer(&g.whole(), 0).unwrap();
        assert_eq!(st.member_vec(), vec![0, 1]);
        assert!(g.stabilizer(&g.trivial(), 2).unwrap().is_trivial());
        assert!(matches!(
            g.stabilizer(&g.whole(), 3),
            Err(Error::PointOutOfRange { .. })
        ));
    }

    #[test]
    fn membership_validation() {
        let g = s3();
        assert!(g.subgroup_from_members([0, 3, 4]).is_ok());
        assert!(g.subgroup_from_members([0, 1, 2]).is_err());
        assert!(g.subgroup_from_members([0, 9]).is_err());
    }

    #[test]
    fn subgroups_order_by_size_then_members() {
        let g = s3();
        let a = g.subgroup_from_members([0, 1]).unwrap();
        let b = g.subgroup_from_members([0, 2]).unwrap();
        let c = g.subgroup_from_members([0, 3, 4]).unwrap();
        let mut v = vec![c.clone(), b.clone(), g.whole(), a.clone(), g.trivial()];
        v.sort();
        assert_eq!(v, vec![g.trivial(), a, b, c, g.whole()]);
    }
}
