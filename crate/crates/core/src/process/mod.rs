//! Pure and full process theories over a bounded set of systems.
//!
//! A [`ProcessTheory`] fixes a finite, downward-closed set of unital systems
//! (those whose transformation group has trivial centre, so that the trivial
//! system is a unit for them) and tabulates their tensor products, the tensor
//! products of their pure states, and the system-environment pairs they form.
//! Systems, pairs and pure states are then referred to by index.

mod full;
mod instance;
mod pure;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lattice::SbcLattice;
use crate::states::LocalState;
use crate::systems::{self, System};
use crate::theory::GlobalTheory;

pub use full::Process;
pub use instance::{GenerationReport, ProcessInstance};
pub use pure::PureProcess;

/// Which unital systems a process theory is built over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// Every unital system.
    All,
    /// Unital systems whose transformation group has at most this order.
    MaxTransfOrder(usize),
    /// The largest order threshold giving at most this many pair objects.
    ObjectCap(usize),
}

/// A system-environment pair `(𝓗, 𝓔)` of compatible systems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemEnvironmentPair {
    pub system: usize,
    pub environment: usize,
    /// `𝓗 ⊗ 𝓔`.
    pub total: usize,
    states: Vec<LocalState>,
    /// Pure states of `total` restricting to each pair state.
    purifications: Vec<Vec<usize>>,
    /// `Transf(𝓗)′`-orbit index to pair-state index.
    by_orbit: HashMap<usize, usize>,
}

impl SystemEnvironmentPair {
    /// `States(𝓗, 𝓔)`, sorted.
    pub fn states(&self) -> &[LocalState] {
        &self.states
    }

    /// Indices (into the pure states of `𝓗 ⊗ 𝓔`) of the purifications of a state.
    pub fn purifications(&self, state: usize) -> &[usize] {
        &self.purifications[state]
    }
}

/// A state of a pair, carried by one chosen purification. Two pair states
/// are equal when their restrictions agree, whatever the purification.
#[derive(Debug, Clone, Copy)]
pub struct PairState {
    pub pair: usize,
    /// Index into the pair's states.
    pub state: usize,
    /// Index into the pure states of the pair's total system.
    pub purification: usize,
}

impl PartialEq for PairState {
    fn eq(&self, other: &Self) -> bool {
        self.pair == other.pair && self.state == other.state
    }
}

impl Eq for PairState {}

pub struct ProcessTheory<'t> {
    theory: &'t GlobalTheory,
    systems: Vec<System>,
    index: HashMap<System, usize>,
    tensor: Vec<Vec<Option<usize>>>,
    /// Flattened `ρ ⊗ σ` tables for every defined tensor, `[i * |B| + j]`.
    state_tensor: HashMap<(usize, usize), Vec<usize>>,
    /// `Transf(s)′`-orbit index to pure-state index, per system.
    state_lookup: Vec<HashMap<usize, usize>>,
    pairs: Vec<SystemEnvironmentPair>,
    pair_index: HashMap<(usize, usize), usize>,
}

impl std::fmt::Debug for ProcessTheory<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProcessTheory")
            .field("systems", &self.systems.len())
            .field("pairs", &self.pairs.len())
            .finish()
    }
}

type TensorGrid = Vec<Vec<Option<System>>>;

/// Unital systems of the theory with their full tensor table.
fn unital_systems(theory: &GlobalTheory, lattice: &SbcLattice) -> Result<(Vec<System>, TensorGrid)> {
    let all: Vec<System> = systems::enumerate_systems(theory, lattice)
        .into_iter()
        .filter(|s| systems::is_unital(theory, s))
        .collect();
    let mut table = vec![vec![None; all.len()]; all.len()];
    for i in 0..all.len() {
        for j in i..all.len() {
            if systems::are_compatible(theory, &all[i], &all[j])?.is_some() {
                let t = systems::tensor_systems(theory, &all[i], &all[j])?;
                table[i][j] = Some(t.clone());
                table[j][i] = Some(t);
            }
        }
    }
    Ok((all, table))
}

impl<'t> ProcessTheory<'t> {
    pub fn new(theory: &'t GlobalTheory, lattice: &SbcLattice, bound: Bound) -> Result<Self> {
        let (all, table) = unital_systems(theory, lattice)?;
        let threshold = match bound {
            Bound::All => usize::MAX,
            Bound::MaxTransfOrder(t) => t,
            Bound::ObjectCap(cap) => {
                let mut orders: Vec<usize> = all.iter().map(|s| s.transf().order()).collect();
                orders.sort_unstable();
                orders.dedup();
                let count = |t: usize| {
                    table
                        .iter()
                        .flatten()
                        .flatten()
                        .filter(|s| s.transf().order() <= t)
                        .count()
                };
                orders.into_iter().rev().find(|&t| count(t) <= cap).unwrap_or(0)
            }
        };
        let keep: Vec<usize> = (0..all.len())
            .filter(|&i| all[i].transf().order() <= threshold)
            .collect();
        let systems: Vec<System> = keep.iter().map(|&i| all[i].clone()).collect();
        let index: HashMap<System, usize> = systems.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let tensor: Vec<Vec<Option<usize>>> = keep
            .iter()
            .map(|&i| {
                keep.iter()
                    .map(|&j| table[i][j].as_ref().and_then(|s| index.get(s).copied()))
                    .collect()
            })
            .collect();

        let state_lookup = systems
            .iter()
            .map(|s| {
                let part = theory.orbit_partition(&theory.commutant_of(s.transf()));
                s.pure_states()
                    .iter()
                    .enumerate()
                    .map(|(k, st)| (part.orbit_index(st.representative()), k))
                    .collect()
            })
            .collect();

        let mut pt = ProcessTheory {
            theory,
            systems,
            index,
            tensor,
            state_tensor: HashMap::new(),
            state_lookup,
            pairs: Vec::new(),
            pair_index: HashMap::new(),
        };
        pt.fill_state_tensors()?;
        pt.fill_pairs();
        Ok(pt)
    }

    fn fill_state_tensors(&mut self) -> Result<()> {
        let n = self.systems.len();
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = self.tensor[a][b] else { continue };
                let (sa, sb) = (&self.systems[a], &self.systems[b]);
                let table = systems::tensor_table(self.theory, sa, sb)?.ok_or(Error::IncompatibleSystems)?;
                if table.system != self.systems[ab] {
                    return Err(Error::PreconditionUnmet(
                        "tensor table disagrees with the system tensor".into(),
                    ));
                }
                let mut flat = Vec::with_capacity(sa.pure_states().len() * sb.pure_states().len());
                for i in 0..sa.pure_states().len() {
                    for j in 0..sb.pure_states().len() {
                        flat.push(table.state(i, j)?);
                    }
                }
                self.state_tensor.insert((a, b), flat);
            }
        }
        Ok(())
    }

    fn fill_pairs(&mut self) {
        let n = self.systems.len();
        for h in 0..n {
            for e in 0..n {
                let Some(total) = self.tensor[h][e] else { continue };
                let owner = self.systems[h].transf().clone();
                let part = self.theory.orbit_partition(&self.theory.commutant_of(&owner));
                let mut by_orbit: HashMap<usize, usize> = HashMap::new();
                let mut reps: Vec<(usize, Vec<usize>)> = Vec::new();
                for (k, st) in self.systems[total].pure_states().iter().enumerate() {
                    let o = part.orbit_index(st.representative());
                    match by_orbit.get(&o) {
                        Some(&i) => reps[i].1.push(k),
                        None => {
                            by_orbit.insert(o, reps.len());
                            reps.push((o, vec![k]));
                        }
                    }
                }
                let mut order: Vec<usize> = (0..reps.len()).collect();
                order.sort_by_key(|&i| part.orbits()[reps[i].0][0]);
                let states: Vec<LocalState> = order
                    .iter()
                    .map(|&i| crate::states::restrict_unchecked(self.theory, &owner, part.orbits()[reps[i].0][0]))
                    .collect();
                let purifications = order.iter().map(|&i| reps[i].1.clone()).collect();
                let by_orbit = order.iter().enumerate().map(|(pos, &i)| (reps[i].0, pos)).collect();
                self.pair_index.insert((h, e), self.pairs.len());
                self.pairs.push(SystemEnvironmentPair {
                    system: h,
                    environment: e,
                    total,
                    states,
                    purifications,
                    by_orbit,
                });
            }
        }
    }

    pub fn theory(&self) -> &'t GlobalTheory {
        self.theory
    }

    /// Systems in the bounded set; index `0` is the trivial system.
    pub fn systems(&self) -> &[System] {
        &self.systems
    }

    pub fn system(&self, id: usize) -> &System {
        &self.systems[id]
    }

    pub fn system_id(&self, s: &System) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn unit(&self) -> usize {
        0
    }

    /// `a ⊗ b`, when defined and inside the bound.
    pub fn tensor(&self, a: usize, b: usize) -> Option<usize> {
        self.tensor.get(a).and_then(|row| row.get(b)).copied().flatten()
    }

    pub(crate) fn tensor_or_err(&self, a: usize, b: usize) -> Result<usize> {
        self.tensor(a, b).ok_or(Error::IncompatibleSystems)
    }

    /// Index of `ρ ⊗ σ` in the pure states of `a ⊗ b`.
    pub fn tensor_states(&self, a: usize, b: usize, rho: usize, sigma: usize) -> Result<usize> {
        let table = self.state_tensor.get(&(a, b)).ok_or(Error::IncompatibleSystems)?;
        let nb = self.systems[b].pure_states().len();
        if rho >= self.systems[a].pure_states().len() || sigma >= nb {
            return Err(Error::StateNotInSystem);
        }
        Ok(table[rho * nb + sigma])
    }

    /// Index of the pure state of `s` containing `point`.
    pub fn state_at(&self, s: usize, point: usize) -> Option<usize> {
        let t = self.theory;
        let part = t.orbit_partition(&t.commutant_of(self.systems[s].transf()));
        self.state_lookup[s].get(&part.orbit_index(point)).copied()
    }

    /// All `(k, m)` with `k ⊗ m = s`.
    pub fn factorisations(&self, s: usize) -> Vec<(usize, usize)> {
        let n = self.systems.len();
        (0..n)
            .flat_map(|k| (0..n).map(move |m| (k, m)))
            .filter(|&(k, m)| self.tensor[k][m] == Some(s))
            .collect()
    }

    pub fn pairs(&self) -> &[SystemEnvironmentPair] {
        &self.pairs
    }

    pub fn pair(&self, id: usize) -> &SystemEnvironmentPair {
        &self.pairs[id]
    }

    pub fn pair_id(&self, system: usize, environment: usize) -> Option<usize> {
        self.pair_index.get(&(system, environment)).copied()
    }

    /// Pair id of `(𝓗, I)`.
    pub fn pure_object(&self, system: usize) -> usize {
        self.pair_index[&(system, 0)]
    }

    /// `(𝓗⊗𝓚, 𝓔⊗𝓕)`, defined when `𝓗⊗𝓔` is compatible with `𝓚⊗𝓕`.
    pub fn pair_tensor(&self, p: usize, q: usize) -> Option<usize> {
        let (a, b) = (&self.pairs[p], &self.pairs[q]);
        self.tensor(a.total, b.total)?;
        let h = self.tensor(a.system, b.system)?;
        let e = self.tensor(a.environment, b.environment)?;
        self.pair_id(h, e)
    }

    /// `States(𝓗, 𝓔)`.
    pub fn pair_states(&self, pair: usize) -> &[LocalState] {
        &self.pairs[pair].states
    }

    /// The pair state with the given index, carried by its first purification.
    pub fn pair_state(&self, pair: usize, state: usize) -> PairState {
        PairState {
            pair,
            state,
            purification: self.pairs[pair].purifications[state][0],
        }
    }

    /// The pair state represented by a pure state of the pair's total system.
    pub fn pair_state_of_purification(&self, pair: usize, purification: usize) -> Result<PairState> {
        let p = &self.pairs[pair];
        let rep = self.systems[p.total]
            .pure_states()
            .get(purification)
            .ok_or(Error::StateNotInPair)?
            .representative();
        let state = self.pair_state_index(pair, rep).ok_or(Error::StateNotInPair)?;
        Ok(PairState {
            pair,
            state,
            purification,
        })
    }

    /// Index of the pair state whose restriction contains `point`.
    pub(crate) fn pair_state_index(&self, pair: usize, point: usize) -> Option<usize> {
        let t = self.theory;
        let p = &self.pairs[pair];
        let part = t.orbit_partition(&t.commutant_of(self.systems[p.system].transf()));
        p.by_orbit.get(&part.orbit_index(point)).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::enumerate_self_bicommutant;
    use crate::models;

    #[test]
    fn grid_catalogue() {
        let m = models::symmetric_product(&[3, 3]).unwrap();
        let l = enumerate_self_bicommutant(&m.theory).unwrap();
        let pt = ProcessTheory::new(&m.theory, &l, Bound::All).unwrap();
        assert_eq!(pt.systems().len(), 4);
        assert_eq!(pt.pairs().len(), 9);
        let w = pt.systems().len() - 1;
        assert_eq!(pt.factorisations(w).len(), 4);
        for p in 0..pt.pairs().len() {
            let pair = pt.pair(p);
            let n = pt.pair_states(p).len();
            let expect = pt.system(pair.system).pure_states().len();
            assert_eq!(n, expect, "mixed states never appear on the grid");
        }
        let capped = ProcessTheory::new(&m.theory, &l, Bound::ObjectCap(8)).unwrap();
        assert_eq!(capped.pairs().len(), 5);
        let capped = ProcessTheory::new(&m.theory, &l, Bound::ObjectCap(4)).unwrap();
        assert_eq!(capped.pairs().len(), 1);
        let empty = ProcessTheory::new(&m.theory, &l, Bound::ObjectCap(0)).unwrap();
        assert!(empty.pairs().is_empty());
    }

    fn grid() -> models::Model {
        models::symmetric_product(&[3, 3]).unwrap()
    }

    #[test]
    fn grid_instance_generation_and_effects() {
        let m = grid();
        let l = enumerate_self_bicommutant(&m.theory).unwrap();
        let pt = ProcessTheory::new(&m.theory, &l, Bound::All).unwrap();
        let inst = ProcessInstance::build(&pt).unwrap();
        eprintln!(
            "morphisms {} compose {} tensor {}",
            inst.morphisms().len(),
            inst.compose_entries().len(),
            inst.tensor_entries().len()
        );
        let report = pt.verify_generation(&inst).unwrap();
        assert!(report.holds(), "{report:?}");
        for p in 0..pt.pairs().len() {
            let effects = pt.enumerate_generalised_effects(p).unwrap();
            assert_eq!(effects.len(), 1);
        }
    }

    #[test]
    fn pure_processes_on_rows() {
        let m = grid();
        let l = enumerate_self_bicommutant(&m.theory).unwrap();
        let pt = ProcessTheory::new(&m.theory, &l, Bound::All).unwrap();
        let rows = pt
            .system_id(&crate::systems::make_system(&m.theory, &m.factor(0), 0).unwrap())
            .unwrap();
        let id = pt.pure_identity(rows);
        assert_eq!(pt.pure_table(&id).unwrap(), vec![0, 1, 2]);
        for p in pt.enumerate_pure_processes(rows) {
            let table = pt.pure_table(&p).unwrap();
            let mut sorted = table.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), table.len(), "pure processes are injective");
        }
    }
}
