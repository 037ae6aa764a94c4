use std::collections::BTreeMap;

use crate::error::{Error, Result};

use super::{PairState, ProcessTheory};

/// `(u, σ; 𝓜) : (𝓗, 𝓔) → (𝓚, 𝓔 ⊗ 𝓜)`, the map `ρ ↦ Restr_𝓚(u(ρ ⊗ σ))`.
///
/// The ancilla `𝓛` is compatible with `𝓗 ⊗ 𝓔`, `σ` is a pure state of `𝓛`,
/// `u ∈ Transf(𝓗 ⊗ 𝓛)` and `𝓗 ⊗ 𝓛 = 𝓚 ⊗ 𝓜`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Process {
    /// Domain pair id.
    pub domain: usize,
    pub ancilla: usize,
    pub prep: usize,
    pub transform: usize,
    /// `𝓚`.
    pub system: usize,
    /// `𝓜`.
    pub discarded: usize,
    /// Codomain pair id, `(𝓚, 𝓔 ⊗ 𝓜)`.
    pub codomain: usize,
}

impl ProcessTheory<'_> {
    /// Validates the typing constraints and builds `(u, σ; 𝓜)`.
    pub fn process(
        &self,
        domain: usize,
        ancilla: usize,
        prep: usize,
        transform: usize,
        system: usize,
        discarded: usize,
    ) -> Result<Process> {
        let pair = self.pairs.get(domain).ok_or(Error::OutsideBound)?;
        self.tensor_or_err(pair.total, ancilla)?;
        let hl = self.tensor_or_err(pair.system, ancilla)?;
        if self.tensor(system, discarded) != Some(hl) {
            return Err(Error::TypeMismatch(
                "system ⊗ ancilla differs from codomain ⊗ discarded".into(),
            ));
        }
        if prep >= self.system(ancilla).pure_states().len() {
            return Err(Error::StateNotInSystem);
        }
        if transform >= self.theory.order() || !self.system(hl).transf().contains(transform) {
            return Err(Error::ElementNotInOwner);
        }
        let env = self.tensor(pair.environment, discarded).ok_or(Error::OutsideBound)?;
        let codomain = self.pair_id(system, env).ok_or(Error::OutsideBound)?;
        Ok(Process {
            domain,
            ancilla,
            prep,
            transform,
            system,
            discarded,
            codomain,
        })
    }

    /// `(1, 1; I)`.
    pub fn identity_process(&self, pair: usize) -> Process {
        let h = self.pairs[pair].system;
        self.process(pair, self.unit(), 0, self.theory.group().identity(), h, self.unit())
            .expect("identity is always well typed")
    }

    /// `⊤ = (1, 1; 𝓗) : (𝓗, 𝓔) → (I, 𝓔 ⊗ 𝓗)`.
    pub fn discard(&self, pair: usize) -> Process {
        let h = self.pairs[pair].system;
        self.process(pair, self.unit(), 0, self.theory.group().identity(), self.unit(), h)
            .expect("discarding is always well typed")
    }

    /// Applies a process through the purification carried by `rho`.
    pub fn apply_process(&self, p: &Process, rho: &PairState) -> Result<PairState> {
        if rho.pair != p.domain {
            return Err(Error::TypeMismatch("state lives on a different pair".into()));
        }
        let pair = &self.pairs[p.domain];
        if rho.state >= pair.states.len() || !pair.purifications[rho.state].contains(&rho.purification) {
            return Err(Error::StateNotInPair);
        }
        let joint = self.tensor_states(pair.total, p.ancilla, rho.purification, p.prep)?;
        let big = self.tensor_or_err(pair.total, p.ancilla)?;
        let point = self.system(big).pure_states()[joint].representative();
        let moved = self.theory.group().apply(p.transform, point);
        let cod_total = self.pairs[p.codomain].total;
        let purification = self
            .state_at(cod_total, moved)
            .ok_or_else(|| Error::PreconditionUnmet("output is not a pure state of the codomain".into()))?;
        let state = self.pair_state_index(p.codomain, moved).ok_or(Error::StateNotInPair)?;
        Ok(PairState {
            pair: p.codomain,
            state,
            purification,
        })
    }

    /// The state map over the domain pair's states, via first purifications.
    pub fn process_table(&self, p: &Process) -> Result<Vec<usize>> {
        (0..self.pairs[p.domain].states.len())
            .map(|s| Ok(self.apply_process(p, &self.pair_state(p.domain, s))?.state))
            .collect()
    }

    /// `(v, τ; 𝓒) ∘ (u, σ; 𝓑) := (vu, σ ⊗ τ; 𝓑 ⊗ 𝓒)`.
    pub fn compose_process(&self, q: &Process, p: &Process) -> Result<Process> {
        if q.domain != p.codomain {
            return Err(Error::TypeMismatch(
                "codomain of the first process is not the domain of the second".into(),
            ));
        }
        let ancilla = self.tensor_or_err(p.ancilla, q.ancilla)?;
        let prep = self.tensor_states(p.ancilla, q.ancilla, p.prep, q.prep)?;
        let transform = self.theory.group().mul(q.transform, p.transform);
        let discarded = self.tensor_or_err(p.discarded, q.discarded)?;
        let r = self.process(p.domain, ancilla, prep, transform, q.system, discarded)?;
        if r.codomain != q.codomain {
            return Err(Error::TypeMismatch("composite codomain differs".into()));
        }
        Ok(r)
    }

    /// `(u, σ; 𝓑) ⊗ (v, τ; 𝓓) := (uv, σ ⊗ τ; 𝓑 ⊗ 𝓓)`.
    pub fn tensor_processes(&self, p: &Process, q: &Process) -> Result<Process> {
        let domain = self.pair_tensor(p.domain, q.domain).ok_or(Error::IncompatibleSystems)?;
        let codomain = self
            .pair_tensor(p.codomain, q.codomain)
            .ok_or(Error::IncompatibleSystems)?;
        let ancilla = self.tensor_or_err(p.ancilla, q.ancilla)?;
        let prep = self.tensor_states(p.ancilla, q.ancilla, p.prep, q.prep)?;
        let transform = self.theory.group().mul(p.transform, q.transform);
        let system = self.tensor_or_err(p.system, q.system)?;
        let discarded = self.tensor_or_err(p.discarded, q.discarded)?;
        let r = self.process(domain, ancilla, prep, transform, system, discarded)?;
        if r.codomain != codomain {
            return Err(Error::TypeMismatch("tensor codomain differs".into()));
        }
        Ok(r)
    }

    /// Every process out of a pair whose codomain lies inside the bound.
    pub fn enumerate_processes(&self, domain: usize) -> Vec<Process> {
        let pair = &self.pairs[domain];
        let mut out = Vec::new();
        for ancilla in 0..self.systems.len() {
            if self.tensor(pair.total, ancilla).is_none() {
                continue;
            }
            let Some(hl) = self.tensor(pair.system, ancilla) else {
                continue;
            };
            for (k, m) in self.factorisations(hl) {
                let Some(env) = self.tensor(pair.environment, m) else {
                    continue;
                };
                let Some(codomain) = self.pair_id(k, env) else { continue };
                for prep in 0..self.system(ancilla).pure_states().len() {
                    for transform in self.system(hl).transf().members() {
                        out.push(Process {
                            domain,
                            ancilla,
                            prep,
                            transform,
                            system: k,
                            discarded: m,
                            codomain,
                        });
                    }
                }
            }
        }
        out
    }

    /// Processes out of a pair with codomain system `I`, one per distinct
    /// state map. Their codomain environments may differ.
    pub fn enumerate_generalised_effects(&self, pair: usize) -> Result<Vec<Process>> {
        let mut seen: BTreeMap<Vec<usize>, Process> = BTreeMap::new();
        for p in self.enumerate_processes(pair) {
            if p.system != self.unit() {
                continue;
            }
            let table = self.process_table(&p)?;
            seen.entry(table).or_insert(p);
        }
        Ok(seen.into_values().collect())
    }
}
