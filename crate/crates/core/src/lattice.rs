//! Commutants and the lattice of self-bicommutant subgroups.
//!
//! Every self-bicommutant subgroup is a commutant, and every commutant is an
//! intersection of element centralizers, so the lattice is enumerated as the
//! intersection closure of `{C(g) : g ∈ Ξ}`.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::theory::GlobalTheory;

/// `H′`, the centralizer of `H` in `Ξ`.
pub fn commutant(theory: &GlobalTheory, h: &Subgroup) -> Result<Subgroup> {
    theory.check_member(h)?;
    Ok(theory.commutant_of(h))
}

/// `H″`.
pub fn bicommutant(theory: &GlobalTheory, h: &Subgroup) -> Result<Subgroup> {
    let c = commutant(theory, h)?;
    Ok(theory.commutant_of(&c))
}

/// Whether `H = H″`. Subgroups of another theory are never self-bicommutant here.
pub fn is_self_bicommutant(theory: &GlobalTheory, h: &Subgroup) -> bool {
    bicommutant(theory, h).is_ok_and(|b| &b == h)
}

pub(crate) fn require_sbc(theory: &GlobalTheory, h: &Subgroup) -> Result<()> {
    theory.check_member(h)?;
    if !is_self_bicommutant(theory, h) {
        return Err(Error::NotSelfBicommutant);
    }
    Ok(())
}

/// `H ∨ K := (H′ ∩ K′)′`.
pub fn join(theory: &GlobalTheory, h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
    require_sbc(theory, h)?;
    require_sbc(theory, k)?;
    let hc = theory.commutant_of(h);
    let kc = theory.commutant_of(k);
    Ok(theory.commutant_of(&hc.intersection(&kc)))
}

/// `H ∧ K := H ∩ K`.
pub fn meet(theory: &GlobalTheory, h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
    require_sbc(theory, h)?;
    require_sbc(theory, k)?;
    Ok(h.intersection(k))
}

/// `K ≤ H′`. Computed from both sides, which always agree.
pub fn is_orthogonal(theory: &GlobalTheory, h: &Subgroup, k: &Subgroup) -> bool {
    if theory.check_member(h).is_err() || theory.check_member(k).is_err() {
        return false;
    }
    let left = k.is_subgroup_of(&theory.commutant_of(h));
    debug_assert_eq!(left, h.is_subgroup_of(&theory.commutant_of(k)));
    left
}

/// `H ∩ H′ = {1}`.
pub fn is_orthocomplemented(theory: &GlobalTheory, h: &Subgroup) -> bool {
    theory.check_member(h).is_ok() && h.intersection(&theory.commutant_of(h)).is_trivial()
}

/// Orthogonal, with each of `H`, `K` equal to the other's commutant inside `H ∨ K`.
pub fn is_orthocomplementary(theory: &GlobalTheory, h: &Subgroup, k: &Subgroup) -> bool {
    if !is_orthogonal(theory, h, k) {
        return false;
    }
    let Ok(p) = join(theory, h, k) else {
        return false;
    };
    theory.commutant_of(h).intersection(&p) == *k && theory.commutant_of(k).intersection(&p) == *h
}

/// `H ∨ (H′ ∧ K) = K` for `H ≤ K`.
pub fn check_orthomodular(theory: &GlobalTheory, h: &Subgroup, k: &Subgroup) -> Result<bool> {
    require_sbc(theory, h)?;
    require_sbc(theory, k)?;
    if !h.is_subgroup_of(k) {
        return Err(Error::NotNested);
    }
    let inner = theory.commutant_of(h).intersection(k);
    Ok(join(theory, h, &inner)? == *k)
}

/// The commutant of `H` within `P`, `H′ ∧ P`.
pub fn relative_commutant(theory: &GlobalTheory, h: &Subgroup, p: &Subgroup) -> Result<Subgroup> {
    require_sbc(theory, h)?;
    require_sbc(theory, p)?;
    if !h.is_subgroup_of(p) {
        return Err(Error::NotNested);
    }
    Ok(theory.commutant_of(h).intersection(p))
}

/// `H·K = {hk}` for orthogonal `H`, `K`, checked to be a subgroup.
pub fn product_set(theory: &GlobalTheory, h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
    require_sbc(theory, h)?;
    require_sbc(theory, k)?;
    if !is_orthogonal(theory, h, k) {
        return Err(Error::NotOrthogonal);
    }
    let bits = theory.group().product_members(h, k);
    let s = Subgroup::from_bits(bits);
    if !theory.group().is_closed(&s) {
        return Err(Error::PreconditionUnmet("product set is not a subgroup".into()));
    }
    Ok(s)
}

/// `h ⊗ k := hk`.
pub fn tensor_element(theory: &GlobalTheory, h: usize, k: usize) -> usize {
    theory.group().mul(h, k)
}

/// The self-bicommutant subgroups of a theory with their order structure.
///
/// Node `0` is `{1}` and the last node is `Ξ`; nodes are sorted by order, then
/// by member list.
#[derive(Debug, Clone)]
pub struct SbcLattice {
    nodes: Vec<Subgroup>,
    index: HashMap<Subgroup, usize>,
    commutant: Vec<usize>,
    /// `up[i]` holds every `j` with `nodes[i] ⊆ nodes[j]`.
    up: Vec<FixedBitSet>,
    hasse: Vec<(usize, usize)>,
}

impl SbcLattice {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Subgroup] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &Subgroup {
        &self.nodes[id]
    }

    pub fn id_of(&self, h: &Subgroup) -> Option<usize> {
        self.index.get(h).copied()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Id of `nodes[id]′`.
    pub fn commutant_id(&self, id: usize) -> usize {
        self.commutant[id]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn meet_id(&self, a: usize, b: usize) -> usize {
        self.index[&self.nodes[a].intersection(&self.nodes[b])]
    }

    pub fn join_id(&self, a: usize, b: usize) -> usize {
        self.commutant[self.meet_id(self.commutant[a], self.commutant[b])]
    }

    /// Covering pairs `(lower, upper)` of the inclusion order.
    pub fn hasse_edges(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    /// Stops at the first failure of distributivity.
    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (b..n).all(|c| {
                    self.meet_id(a, self.join_id(b, c)) == self.join_id(self.meet_id(a, b), self.meet_id(a, c))
                })
            })
        })
    }

    /// Triples `(a, b, c)` with `a ∧ (b ∨ c) ≠ (a ∧ b) ∨ (a ∧ c)`.
    pub fn distributivity_violations(&self, max_reported: usize) -> DistributivityReport {
        let n = self.len();
        let mut report = DistributivityReport::default();
        for a in 0..n {
            for b in 0..n {
                for c in b..n {
                    report.checked += 1;
                    let lhs = self.meet_id(a, self.join_id(b, c));
                    let rhs = self.join_id(self.meet_id(a, b), self.meet_id(a, c));
                    if lhs != rhs {
                        report.violations += 1;
                        if report.witnesses.len() < max_reported {
                            report.witnesses.push((a, b, c));
                        }
                    }
                }
            }
        }
        report
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DistributivityReport {
    pub checked: usize,
    pub violations: usize,
    pub witnesses: Vec<(usize, usize, usize)>,
}

/// Intersection closure of the element centralizers.
pub fn enumerate_self_bicommutant(theory: &GlobalTheory) -> Result<SbcLattice> {
    let limit = theory.limits().max_lattice_nodes;
    let mut generators: Vec<Subgroup> = Vec::new();
    let mut seen: HashMap<Subgroup, ()> = HashMap::new();
    for g in 0..theory.order() {
        let c = theory.element_centralizer(g);
        if seen.insert(c.clone(), ()).is_none() {
            generators.push(c);
        }
    }
    let mut nodes = generators.clone();
    let mut cursor = 0;
    while cursor < nodes.len() {
        let current = nodes[cursor].clone();
        cursor += 1;
        for c in &generators {
            let m = current.intersection(c);
            if seen.contains_key(&m) {
                continue;
            }
            if nodes.len() >= limit {
                return Err(Error::ResourceLimit {
                    what: "lattice nodes",
                    limit,
                });
            }
            seen.insert(m.clone(), ());
            nodes.push(m);
        }
    }
    nodes.sort();
    let index: HashMap<Subgroup, usize> = nodes.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let commutant = nodes.iter().map(|n| index[&theory.commutant_of(n)]).collect();
    let n = nodes.len();
    let mut up = vec![FixedBitSet::with_capacity(n); n];
    let mut down = vec![FixedBitSet::with_capacity(n); n];
    for i in 0..n {
        for j in i..n {
            if nodes[i].is_subgroup_of(&nodes[j]) {
                up[i].insert(j);
                down[j].insert(i);
            }
        }
    }
    let mut hasse = Vec::new();
    for (i, above) in up.iter().enumerate() {
        for j in above.ones().filter(|&j| j != i) {
            let mut between = above.clone();
            between.intersect_with(&down[j]);
            if between.count_ones(..) == 2 {
                hasse.push((i, j));
            }
        }
    }
    Ok(SbcLattice {
        nodes,
        index,
        commutant,
        up,
        hasse,
    })
}
