//! Theory documents read from JSON.

use std::collections::BTreeMap;
use std::path::Path;

use emergent_core::{Error, GlobalTheory, Limits, Permutation, Subgroup};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheorySpec {
    pub degree: usize,
    pub generators: Generators,
    #[serde(default)]
    pub subgroups: BTreeMap<String, Vec<usize>>,
    #[serde(default)]
    pub limits: SpecLimits,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generators {
    pub global: Vec<Permutation>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecLimits {
    pub max_order: Option<usize>,
}

/// A validated theory with its named subgroups resolved.
pub struct Loaded {
    pub theory: GlobalTheory,
    pub named: Vec<(String, Subgroup)>,
}

impl TheorySpec {
    pub fn parse(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Generates and validates the theory. A command-line order cap takes
    /// precedence over the document's.
    pub fn load(&self, max_order: Option<usize>) -> Result<Loaded, Error> {
        let mut limits = Limits::default();
        if let Some(m) = max_order.or(self.limits.max_order) {
            limits.max_order = m;
        }
        let theory = GlobalTheory::from_generators(self.degree, &self.generators.global, limits)?;
        let mut named = Vec::new();
        for (name, idx) in &self.subgroups {
            let mut gens = Vec::new();
            for &i in idx {
                let g = self
                    .generators
                    .global
                    .get(i)
                    .ok_or_else(|| Error::Parse(format!("subgroup {name:?}: generator index {i} out of range")))?;
                gens.push(g.clone());
            }
            named.push((name.clone(), theory.group().subgroup_generated_by(&gens)?));
        }
        Ok(Loaded { theory, named })
    }
}
