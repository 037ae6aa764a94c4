//! Systems, their compatibility and their partial tensor product.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::lattice::{self, SbcLattice};
use crate::states::{self, LocalState};
use crate::theory::GlobalTheory;

/// A self-bicommutant subgroup with one orbit of pure local states.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct System {
    transf: Subgroup,
    pure_orbit: Vec<LocalState>,
}

impl System {
    pub fn transf(&self) -> &Subgroup {
        &self.transf
    }

    /// Pure states, sorted by point list.
    pub fn pure_states(&self) -> &[LocalState] {
        &self.pure_orbit
    }

    pub fn contains_state(&self, state: &LocalState) -> bool {
        self.pure_orbit.binary_search(state).is_ok()
    }

    /// Index of a pure state in [`Self::pure_states`].
    pub fn state_index(&self, state: &LocalState) -> Option<usize> {
        self.pure_orbit.binary_search(state).ok()
    }

    /// The pure state containing a global state, if any.
    pub fn state_at(&self, point: usize) -> Option<&LocalState> {
        self.pure_orbit.iter().find(|s| s.contains(point))
    }

    pub fn is_trivial(&self) -> bool {
        self.transf.is_trivial()
    }
}

/// `I := ({1}, {Θ})`.
pub fn trivial_system(theory: &GlobalTheory) -> System {
    system_unchecked(theory, &theory.trivial(), 0)
}

/// `(H, H(Restr_H ψ))` without checking purity.
pub(crate) fn system_unchecked(theory: &GlobalTheory, h: &Subgroup, psi: usize) -> System {
    let g = theory.group();
    let hc = theory.commutant_of(h);
    let part = theory.orbit_partition(&hc);
    let classes: BTreeSet<usize> = h.members().map(|a| part.orbit_index(g.apply(a, psi))).collect();
    let mut pure_orbit: Vec<LocalState> = classes
        .into_iter()
        .map(|c| states::restrict_unchecked(theory, h, part.orbits()[c][0]))
        .collect();
    pure_orbit.sort();
    System {
        transf: h.clone(),
        pure_orbit,
    }
}

pub fn make_system(theory: &GlobalTheory, h: &Subgroup, psi: usize) -> Result<System> {
    lattice::require_sbc(theory, h)?;
    theory.check_point(psi)?;
    if !states::product_verdict(theory, h, psi).pure {
        return Err(Error::NotProductState(psi));
    }
    Ok(system_unchecked(theory, h, psi))
}

/// Every system of the theory, ordered by transformation group then states.
pub fn enumerate_systems(theory: &GlobalTheory, lat: &SbcLattice) -> Vec<System> {
    let mut out = Vec::new();
    for h in lat.nodes() {
        let mut covered: BTreeSet<LocalState> = BTreeSet::new();
        for s in states::pure_local_states(theory, h).expect("lattice node") {
            if covered.contains(&s) {
                continue;
            }
            let sys = system_unchecked(theory, h, s.representative());
            covered.extend(sys.pure_orbit.iter().cloned());
            out.push(sys);
        }
    }
    out.sort();
    out
}

/// Whether `I` is compatible with the system, i.e. `Z(Transf 𝓗) = {1}`.
///
/// Only these systems carry the unit of the tensor product, so the process
/// theories are built over them.
pub fn is_unital(theory: &GlobalTheory, s: &System) -> bool {
    theory.group().centre_of(&s.transf).is_trivial()
}

/// Data shared by the compatibility search and the state tensor.
struct PairContext<'a> {
    theory: &'a GlobalTheory,
    h: &'a Subgroup,
    k: &'a Subgroup,
    p: Subgroup,
}

impl<'a> PairContext<'a> {
    fn new(theory: &'a GlobalTheory, a: &'a System, b: &'a System) -> Option<Self> {
        let (h, k) = (&a.transf, &b.transf);
        if !lattice::is_orthocomplementary(theory, h, k) {
            return None;
        }
        let p = lattice::join(theory, h, k).ok()?;
        Some(PairContext { theory, h, k, p })
    }

    /// `ψ` is product over `H ∨ K` and `P′ψ` is product over `H` and `K`.
    fn is_product_pair(&self, psi: usize) -> bool {
        let t = self.theory;
        if !states::product_verdict(t, &self.p, psi).pure {
            return false;
        }
        let g = t.group();
        let pc = t.orbit_partition(&t.commutant_of(&self.p));
        let hc = t.orbit_partition(&t.commutant_of(self.h));
        let kc = t.orbit_partition(&t.commutant_of(self.k));
        let s_h = self
            .h
            .members()
            .filter(|&a| hc.orbit_index(g.apply(a, psi)) == hc.orbit_index(psi))
            .count();
        let s_k = self
            .k
            .members()
            .filter(|&b| kc.orbit_index(g.apply(b, psi)) == kc.orbit_index(psi))
            .count();
        // hkψ ∈ P′ψ  ⟺  kψ ∈ P′h⁻¹ψ
        let mut hits = vec![0usize; pc.len()];
        for b in self.k.members() {
            hits[pc.orbit_index(g.apply(b, psi))] += 1;
        }
        let joint: usize = self
            .h
            .members()
            .map(|a| hits[pc.orbit_index(g.apply(g.inverse(a), psi))])
            .sum();
        joint == s_h * s_k
    }

    fn candidates(&self, rho: &LocalState, sigma: &LocalState) -> Vec<LocalState> {
        let mut found: BTreeSet<LocalState> = BTreeSet::new();
        for &psi in rho.points() {
            if sigma.contains(psi) && self.is_product_pair(psi) {
                found.insert(states::restrict_unchecked(self.theory, &self.p, psi));
            }
        }
        found.into_iter().collect()
    }
}

/// A global witness for the compatibility of two systems, the least one in
/// point order.
pub fn are_compatible(theory: &GlobalTheory, a: &System, b: &System) -> Result<Option<usize>> {
    let Some(ctx) = PairContext::new(theory, a, b) else {
        return Ok(None);
    };
    let limit = theory.limits().max_candidate_checks;
    let hc = theory.orbit_partition(&theory.commutant_of(&a.transf));
    let kc = theory.orbit_partition(&theory.commutant_of(&b.transf));
    let in_a: BTreeSet<usize> = a
        .pure_orbit
        .iter()
        .map(|s| hc.orbit_index(s.representative()))
        .collect();
    let in_b: BTreeSet<usize> = b
        .pure_orbit
        .iter()
        .map(|s| kc.orbit_index(s.representative()))
        .collect();
    let mut checks = 0;
    for psi in 0..theory.degree() {
        if !in_a.contains(&hc.orbit_index(psi)) || !in_b.contains(&kc.orbit_index(psi)) {
            continue;
        }
        checks += 1;
        if checks > limit {
            return Err(Error::ResourceLimit {
                what: "compatibility candidates",
                limit,
            });
        }
        if ctx.is_product_pair(psi) {
            return Ok(Some(psi));
        }
    }
    Ok(None)
}

/// `𝓗 ⊗ 𝓚 = (H ∨ K, (H ∨ K)Restr_{H∨K}(ψ))` for a compatibility witness `ψ`.
pub fn tensor_systems(theory: &GlobalTheory, a: &System, b: &System) -> Result<System> {
    let psi = are_compatible(theory, a, b)?.ok_or(Error::IncompatibleSystems)?;
    let p = lattice::join(theory, &a.transf, &b.transf)?;
    Ok(system_unchecked(theory, &p, psi))
}

/// All pure states of `H ∨ K` that are product over `H` and `K` and restrict
/// to `ρ` and `σ`. When the systems are compatible there is exactly one, and
/// it is a pure state of `𝓐 ⊗ 𝓑`.
pub fn tensor_candidates(
    theory: &GlobalTheory,
    a: &System,
    b: &System,
    rho: &LocalState,
    sigma: &LocalState,
) -> Result<Vec<LocalState>> {
    if !a.contains_state(rho) || !b.contains_state(sigma) {
        return Err(Error::StateNotInSystem);
    }
    let ctx = PairContext::new(theory, a, b).ok_or(Error::IncompatibleSystems)?;
    Ok(ctx.candidates(rho, sigma))
}

/// `ρ ⊗ σ`, the unique candidate of [`tensor_candidates`].
pub fn tensor_pure_states(
    theory: &GlobalTheory,
    a: &System,
    b: &System,
    rho: &LocalState,
    sigma: &LocalState,
) -> Result<LocalState> {
    let ab = tensor_systems(theory, a, b)?;
    let c = tensor_candidates(theory, a, b, rho, sigma)?;
    unique_in(&ab, c).map(|k| ab.pure_orbit[k].clone())
}

fn unique_in(ab: &System, mut c: Vec<LocalState>) -> Result<usize> {
    if c.len() != 1 {
        return Err(Error::PreconditionUnmet(format!(
            "expected exactly one tensor candidate, found {}",
            c.len()
        )));
    }
    ab.state_index(&c.pop().expect("one candidate"))
        .ok_or_else(|| Error::PreconditionUnmet("tensor candidate outside the tensor system".into()))
}

/// `𝓐 ⊗ 𝓑` with every tensor-candidate set, computed in one pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorTable {
    pub system: System,
    pub witness: usize,
    /// `candidates[i * |B| + j]` for the `i`-th state of `A` and `j`-th of `B`.
    pub candidates: Vec<Vec<LocalState>>,
    width: usize,
}

impl TensorTable {
    /// Index of `ρᵢ ⊗ σⱼ` in the pure states of the tensor system.
    pub fn state(&self, i: usize, j: usize) -> Result<usize> {
        unique_in(&self.system, self.candidates[i * self.width + j].clone())
    }
}

/// `None` when the systems are incompatible.
pub fn tensor_table(theory: &GlobalTheory, a: &System, b: &System) -> Result<Option<TensorTable>> {
    let Some(witness) = are_compatible(theory, a, b)? else {
        return Ok(None);
    };
    let ctx = PairContext::new(theory, a, b).ok_or(Error::IncompatibleSystems)?;
    let system = system_unchecked(theory, &ctx.p, witness);
    let mut candidates = Vec::with_capacity(a.pure_orbit.len() * b.pure_orbit.len());
    for rho in &a.pure_orbit {
        for sigma in &b.pure_orbit {
            candidates.push(ctx.candidates(rho, sigma));
        }
    }
    Ok(Some(TensorTable {
        system,
        witness,
        candidates,
        width: b.pure_orbit.len(),
    }))
}

/// Consequences of strict associativity and commutativity for one triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativityReport {
    pub a_c_compatible: bool,
    pub b_c_compatible: bool,
    pub a_bc_compatible: bool,
    pub b_ac_compatible: bool,
    /// `(𝓐⊗𝓑)⊗𝓒 = 𝓐⊗(𝓑⊗𝓒) = 𝓑⊗(𝓐⊗𝓒)`.
    pub bracketings_equal: bool,
}

impl AssociativityReport {
    pub fn holds(&self) -> bool {
        self.a_c_compatible
            && self.b_c_compatible
            && self.a_bc_compatible
            && self.b_ac_compatible
            && self.bracketings_equal
    }
}

pub fn check_associativity_triple(
    theory: &GlobalTheory,
    a: &System,
    b: &System,
    c: &System,
) -> Result<AssociativityReport> {
    let unmet = |what: &str| Error::PreconditionUnmet(what.to_string());
    let ab = tensor_systems(theory, a, b).map_err(|_| unmet("A ⊗ B is undefined"))?;
    let ab_c = tensor_systems(theory, &ab, c).map_err(|_| unmet("(A ⊗ B) ⊗ C is undefined"))?;
    let compatible = |x: &System, y: &System| -> Result<bool> { Ok(are_compatible(theory, x, y)?.is_some()) };
    let a_c_compatible = compatible(a, c)?;
    let b_c_compatible = compatible(b, c)?;
    let mut a_bc = None;
    let mut b_ac = None;
    let mut a_bc_compatible = false;
    let mut b_ac_compatible = false;
    if b_c_compatible {
        let bc = tensor_systems(theory, b, c)?;
        a_bc_compatible = compatible(a, &bc)?;
        if a_bc_compatible {
            a_bc = Some(tensor_systems(theory, a, &bc)?);
        }
    }
    if a_c_compatible {
        let ac = tensor_systems(theory, a, c)?;
        b_ac_compatible = compatible(b, &ac)?;
        if b_ac_compatible {
            b_ac = Some(tensor_systems(theory, b, &ac)?);
        }
    }
    let bracketings_equal = a_bc.as_ref() == Some(&ab_c) && b_ac.as_ref() == Some(&ab_c);
    Ok(AssociativityReport {
        a_c_compatible,
        b_c_compatible,
        a_bc_compatible,
        b_ac_compatible,
        bracketings_equal,
    })
}
