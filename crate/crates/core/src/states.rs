//! Local states as commutant orbits, and product-state detection.

use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::theory::GlobalTheory;

/// `Restr_H(ψ) = H′ψ`, remembered together with its owner `H`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalState {
    owner: Subgroup,
    points: Vec<usize>,
}

impl LocalState {
    pub fn owner(&self) -> &Subgroup {
        &self.owner
    }

    /// The orbit, sorted ascending.
    pub fn points(&self) -> &[usize] {
        &self.points
    }

    /// Least point of the orbit, used as the canonical representative.
    pub fn representative(&self) -> usize {
        self.points[0]
    }

    pub fn contains(&self, point: usize) -> bool {
        self.points.binary_search(&point).is_ok()
    }
}

/// Outcome of the product-state test at one global state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PurityVerdict {
    pub point: usize,
    pub state: LocalState,
    pub pure: bool,
    /// `Stab_H(H′ψ)` for the action of `H` on local states.
    pub local_stabilizer: Subgroup,
    /// `Stab_H′(Hψ)`.
    pub complement_stabilizer: Subgroup,
    /// `Stab_{H·H′}(ψ)`.
    pub joint_stabilizer: Subgroup,
    /// Number of pairs `(h, k) ∈ H × H′` with `hkψ = ψ`.
    pub joint_pairs: usize,
    /// Whether `Stab_{H·H′}(ψ) = Stab_H(ψ)·Stab_H′(ψ)`.
    pub weak_equation: bool,
}

impl PurityVerdict {
    /// The two tests disagree; never happens in the other direction.
    pub fn criteria_disagree(&self) -> bool {
        self.pure != self.weak_equation
    }
}

/// `Restr_H(ψ) := H′ψ`.
pub fn restrict(theory: &GlobalTheory, h: &Subgroup, psi: usize) -> Result<LocalState> {
    theory.check_member(h)?;
    theory.check_point(psi)?;
    Ok(restrict_unchecked(theory, h, psi))
}

pub(crate) fn restrict_unchecked(theory: &GlobalTheory, h: &Subgroup, psi: usize) -> LocalState {
    let hc = theory.commutant_of(h);
    let part = theory.orbit_partition(&hc);
    LocalState {
        owner: h.clone(),
        points: part.orbit_of(psi).to_vec(),
    }
}

/// `h(H′ψ) = H′(hψ)` for `h ∈ H`.
pub fn act_local(theory: &GlobalTheory, h: &Subgroup, elem: usize, state: &LocalState) -> Result<LocalState> {
    theory.check_member(h)?;
    if elem >= theory.order() || !h.contains(elem) {
        return Err(Error::ElementNotInOwner);
    }
    if &state.owner != h {
        return Err(Error::TypeMismatch("local state has a different owner".into()));
    }
    Ok(act_unchecked(theory, elem, state))
}

pub(crate) fn act_unchecked(theory: &GlobalTheory, elem: usize, state: &LocalState) -> LocalState {
    let g = theory.group();
    let mut points: Vec<usize> = state.points.iter().map(|&p| g.apply(elem, p)).collect();
    points.sort_unstable();
    debug_assert_eq!(
        points,
        restrict_unchecked(theory, &state.owner, g.apply(elem, state.representative())).points
    );
    LocalState {
        owner: state.owner.clone(),
        points,
    }
}

/// `Restr_K(λ)` for `K ≤ owner(λ)`, via any representative of `λ`.
pub fn iterated_restrict(theory: &GlobalTheory, k: &Subgroup, state: &LocalState) -> Result<LocalState> {
    theory.check_member(k)?;
    if !k.is_subgroup_of(&state.owner) {
        return Err(Error::NotNested);
    }
    Ok(restrict_unchecked(theory, k, state.representative()))
}

/// Decides whether `ψ` is a product state over `H`.
///
/// Every `(h, k) ∈ H × H′` with `hkψ = ψ` lies in
/// `Stab_H(H′ψ) × Stab_H′(Hψ)`, and `ψ` is a product state exactly when the
/// two sets coincide, i.e. when `(H·H′)ψ` is isomorphic, as a pointed
/// `H × H′`-set, to the product of the two restricted orbits.
pub fn is_product_state(theory: &GlobalTheory, h: &Subgroup, psi: usize) -> Result<PurityVerdict> {
    theory.check_member(h)?;
    theory.check_point(psi)?;
    Ok(product_verdict(theory, h, psi))
}

pub(crate) fn product_verdict(theory: &GlobalTheory, h: &Subgroup, psi: usize) -> PurityVerdict {
    let g = theory.group();
    let hc = theory.commutant_of(h);
    let state = restrict_unchecked(theory, h, psi);
    let h_part = theory.orbit_partition(h);
    let hc_part = theory.orbit_partition(&hc);
    let psi_in_hc = hc_part.orbit_index(psi);
    let psi_in_h = h_part.orbit_index(psi);

    let local_stabilizer = g.subset_unchecked(
        h.members()
            .filter(|&a| hc_part.orbit_index(g.apply(a, psi)) == psi_in_hc),
    );
    let complement_stabilizer = g.subset_unchecked(
        hc.members()
            .filter(|&b| h_part.orbit_index(g.apply(b, psi)) == psi_in_h),
    );

    // hkψ = ψ  ⟺  kψ = h⁻¹ψ
    let mut hits = vec![0usize; theory.degree()];
    for b in hc.members() {
        hits[g.apply(b, psi)] += 1;
    }
    let joint_pairs: usize = h.members().map(|a| hits[g.apply(g.inverse(a), psi)]).sum();
    let pure = joint_pairs == local_stabilizer.order() * complement_stabilizer.order();

    let fixes = |x: usize| g.apply(x, psi) == psi;
    let mut joint = g.product_members(h, &hc);
    let all: Vec<usize> = joint.ones().collect();
    for x in all {
        if !fixes(x) {
            joint.set(x, false);
        }
    }
    let joint_stabilizer = Subgroup::from_bits(joint);
    let h_fix = g.subset_unchecked(h.members().filter(|&a| fixes(a)));
    let hc_fix = g.subset_unchecked(hc.members().filter(|&b| fixes(b)));
    let weak_equation = g.product_members(&h_fix, &hc_fix) == *joint_stabilizer.bits();

    PurityVerdict {
        point: psi,
        state,
        pure,
        local_stabilizer,
        complement_stabilizer,
        joint_stabilizer,
        joint_pairs,
        weak_equation,
    }
}

/// `StatesPure(H)`, ordered by least point.
///
/// Purity is tested on the least point of each `H′`-orbit; the suites check
/// that it is constant along orbits.
pub fn pure_local_states(theory: &GlobalTheory, h: &Subgroup) -> Result<Vec<LocalState>> {
    theory.check_member(h)?;
    let hc = theory.commutant_of(h);
    let part = theory.orbit_partition(&hc);
    Ok(part
        .orbits()
        .iter()
        .filter(|o| product_verdict(theory, h, o[0]).pure)
        .map(|o| LocalState {
            owner: h.clone(),
            points: o.clone(),
        })
        .collect())
}

/// `(Stab_H(λ), Stab_Ξ(ψ) ∩ H)` for a pure `λ`; the two always coincide.
pub fn pure_stabilizer(theory: &GlobalTheory, h: &Subgroup, state: &LocalState) -> Result<(Subgroup, Subgroup)> {
    theory.check_member(h)?;
    if &state.owner != h {
        return Err(Error::TypeMismatch("local state has a different owner".into()));
    }
    let psi = state.representative();
    let verdict = product_verdict(theory, h, psi);
    if !verdict.pure {
        return Err(Error::NotPure);
    }
    let g = theory.group();
    let on_point = g.subset_unchecked(h.members().filter(|&a| g.apply(a, psi) == psi));
    Ok((verdict.local_stabilizer, on_point))
}
