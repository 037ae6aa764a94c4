use crate::error::{Error, Result};

use super::full::Process;
use super::ProcessTheory;

/// `(u, σ) : 𝓗 → 𝓗 ⊗ 𝓛`, the map `ρ ↦ u(ρ ⊗ σ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PureProcess {
    pub domain: usize,
    pub ancilla: usize,
    /// Index of `σ` in the ancilla's pure states.
    pub prep: usize,
    /// `u ∈ Transf(𝓗 ⊗ 𝓛)`, as a group element index.
    pub transform: usize,
}

impl ProcessTheory<'_> {
    /// Validates and builds `(u, σ)`.
    pub fn pure_process(&self, domain: usize, ancilla: usize, prep: usize, transform: usize) -> Result<PureProcess> {
        let cod = self.tensor_or_err(domain, ancilla)?;
        if prep >= self.system(ancilla).pure_states().len() {
            return Err(Error::StateNotInSystem);
        }
        if transform >= self.theory.order() || !self.system(cod).transf().contains(transform) {
            return Err(Error::ElementNotInOwner);
        }
        Ok(PureProcess {
            domain,
            ancilla,
            prep,
            transform,
        })
    }

    pub fn pure_codomain(&self, p: &PureProcess) -> usize {
        self.tensor(p.domain, p.ancilla).expect("validated pure process")
    }

    /// `(1, 1)` on a system.
    pub fn pure_identity(&self, system: usize) -> PureProcess {
        PureProcess {
            domain: system,
            ancilla: self.unit(),
            prep: 0,
            transform: self.theory.group().identity(),
        }
    }

    /// `ρ ↦ u(ρ ⊗ σ)` on pure-state indices.
    pub fn apply_pure(&self, p: &PureProcess, rho: usize) -> Result<usize> {
        if rho >= self.system(p.domain).pure_states().len() {
            return Err(Error::StateNotInSystem);
        }
        let cod = self.pure_codomain(p);
        let joint = self.tensor_states(p.domain, p.ancilla, rho, p.prep)?;
        let point = self.system(cod).pure_states()[joint].representative();
        let moved = self.theory.group().apply(p.transform, point);
        self.state_at(cod, moved)
            .ok_or_else(|| Error::PreconditionUnmet("transformed state is not a pure state of the codomain".into()))
    }

    /// The state map as a table over the domain's pure states.
    pub fn pure_table(&self, p: &PureProcess) -> Result<Vec<usize>> {
        (0..self.system(p.domain).pure_states().len())
            .map(|rho| self.apply_pure(p, rho))
            .collect()
    }

    /// `(v, τ) ∘ (u, σ) := (vu, σ ⊗ τ)`.
    pub fn compose_pure(&self, q: &PureProcess, p: &PureProcess) -> Result<PureProcess> {
        if q.domain != self.pure_codomain(p) {
            return Err(Error::TypeMismatch(
                "codomain of the first process is not the domain of the second".into(),
            ));
        }
        let ancilla = self.tensor_or_err(p.ancilla, q.ancilla)?;
        let prep = self.tensor_states(p.ancilla, q.ancilla, p.prep, q.prep)?;
        let transform = self.theory.group().mul(q.transform, p.transform);
        self.pure_process(p.domain, ancilla, prep, transform)
    }

    /// `(u, σ) ⊗ (v, τ) := (uv, σ ⊗ τ)`.
    pub fn tensor_pure_processes(&self, p: &PureProcess, q: &PureProcess) -> Result<PureProcess> {
        let domain = self.tensor_or_err(p.domain, q.domain)?;
        self.tensor_or_err(self.pure_codomain(p), self.pure_codomain(q))?;
        let ancilla = self.tensor_or_err(p.ancilla, q.ancilla)?;
        let prep = self.tensor_states(p.ancilla, q.ancilla, p.prep, q.prep)?;
        let transform = self.theory.group().mul(p.transform, q.transform);
        self.pure_process(domain, ancilla, prep, transform)
    }

    /// Every pure process out of a system, in canonical order.
    pub fn enumerate_pure_processes(&self, domain: usize) -> Vec<PureProcess> {
        let mut out = Vec::new();
        for ancilla in 0..self.systems().len() {
            let Some(cod) = self.tensor(domain, ancilla) else {
                continue;
            };
            for prep in 0..self.system(ancilla).pure_states().len() {
                for transform in self.system(cod).transf().members() {
                    out.push(PureProcess {
                        domain,
                        ancilla,
                        prep,
                        transform,
                    });
                }
            }
        }
        out
    }

    /// `(u, σ; I) : (𝓗, I) → (𝓗 ⊗ 𝓛, I)`.
    pub fn embed_pure(&self, p: &PureProcess) -> Result<Process> {
        let cod = self.pure_codomain(p);
        self.process(
            self.pure_object(p.domain),
            p.ancilla,
            p.prep,
            p.transform,
            cod,
            self.unit(),
        )
    }
}
