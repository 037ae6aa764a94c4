//! Validated global theories: a centreless group acting transitively and
//! faithfully on `0..degree`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result, TheoryDefect};
use crate::group::{FiniteGroup, Limits, OrbitPartition, Subgroup};
use crate::perm::Permutation;

/// Groups up to this order keep a per-element centralizer table
/// (`order²` bits) so that commutants reduce to bitset intersections.
const CENTRALIZER_TABLE_MAX_ORDER: usize = 4096;

/// A group of global transformations together with its space of global states.
///
/// Commutants and orbit partitions are memoised internally; the caches are
/// behind mutexes so a theory can be shared across threads.
pub struct GlobalTheory {
    group: FiniteGroup,
    limits: Limits,
    centralizer_table: Option<Vec<FixedBitSet>>,
    commutants: Mutex<HashMap<Subgroup, Subgroup>>,
    partitions: Mutex<HashMap<Subgroup, Arc<OrbitPartition>>>,
}

impl std::fmt::Debug for GlobalTheory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GlobalTheory")
            .field("degree", &self.group.degree())
            .field("order", &self.group.order())
            .finish()
    }
}

/// Checks transitivity, trivial centre and faithfulness, collecting every
/// failed condition.
pub fn validate_global_theory(group: FiniteGroup, degree: usize) -> Result<GlobalTheory> {
    GlobalTheory::with_limits(group, degree, Limits::default())
}

impl GlobalTheory {
    pub fn with_limits(group: FiniteGroup, degree: usize, limits: Limits) -> Result<Self> {
        if group.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: group.degree(),
            });
        }
        if group.order() > limits.max_order {
            return Err(Error::ResourceLimit {
                what: "group order",
                limit: limits.max_order,
            });
        }
        let mut defects = Vec::new();
        let orbits = group.orbits(&group.whole()).len();
        if orbits != 1 {
            defects.push(TheoryDefect::NotTransitive { orbits });
        }
        let centre = group.centre();
        if !centre.is_trivial() {
            defects.push(TheoryDefect::NotCentreless {
                centre_order: centre.order(),
            });
        }
        let kernel = group.elements().iter().filter(|p| p.is_identity()).count();
        if kernel != 1 {
            defects.push(TheoryDefect::NotFaithful { kernel_order: kernel });
        }
        if !defects.is_empty() {
            return Err(Error::InvalidTheory(defects));
        }
        let centralizer_table = (group.order() <= CENTRALIZER_TABLE_MAX_ORDER).then(|| {
            (0..group.order())
                .map(|i| group.centralizer_of_indices(&[i]).bits().clone())
                .collect()
        });
        Ok(GlobalTheory {
            group,
            limits,
            centralizer_table,
            commutants: Mutex::new(HashMap::new()),
            partitions: Mutex::new(HashMap::new()),
        })
    }

    /// Generates the group and validates it in one step.
    pub fn from_generators(degree: usize, generators: &[Permutation], limits: Limits) -> Result<Self> {
        let group = FiniteGroup::generate(degree, generators, limits.max_order)?;
        GlobalTheory::with_limits(group, degree, limits)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn whole(&self) -> Subgroup {
        self.group.whole()
    }

    pub fn trivial(&self) -> Subgroup {
        self.group.trivial()
    }

    pub(crate) fn check_member(&self, h: &Subgroup) -> Result<()> {
        if h.parent_order() != self.order() {
            return Err(Error::SubgroupNotInTheory);
        }
        Ok(())
    }

    pub(crate) fn check_point(&self, point: usize) -> Result<()> {
        if point >= self.degree() {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.degree(),
            });
        }
        Ok(())
    }

    /// Centralizer of a single element.
    pub fn element_centralizer(&self, element: usize) -> Subgroup {
        match &self.centralizer_table {
            Some(t) => Subgroup::from_bits(t[element].clone()),
            None => self.group.centralizer_of_indices(&[element]),
        }
    }

    /// `H′`, memoised. The checked entry point is [`crate::lattice::commutant`].
    pub(crate) fn commutant_of(&self, h: &Subgroup) -> Subgroup {
        if let Some(c) = self.commutants.lock().unwrap().get(h) {
            return c.clone();
        }
        let c = match &self.centralizer_table {
            Some(t) => {
                let mut bits = self.group.whole().bits().clone();
                for m in h.members() {
                    bits.intersect_with(&t[m]);
                }
                Subgroup::from_bits(bits)
            }
            None => {
                let members: Vec<usize> = h.members().filter(|&m| m != self.group.identity()).collect();
                self.group.centralizer_of_indices(&members)
            }
        };
        self.commutants.lock().unwrap().insert(h.clone(), c.clone());
        c
    }

    /// Orbits of `h` on the global states, memoised.
    pub fn orbit_partition(&self, h: &Subgroup) -> Arc<OrbitPartition> {
        if let Some(p) = self.partitions.lock().unwrap().get(h) {
            return p.clone();
        }
        let p = Arc::new(self.group.orbits(h));
        self.partitions.lock().unwrap().insert(h.clone(), p.clone());
        p
    }

    /// `{g ∈ sub : g(point) = point}`.
    pub fn stabilizer(&self, sub: &Subgroup, point: usize) -> Result<Subgroup> {
        self.check_member(sub)?;
        self.group.stabilizer(sub, point)
    }
}
