//! Axioms of strict symmetric partially-monoidal categories, checked on
//! explicit finite instances.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::lattice::enumerate_self_bicommutant;
use crate::process::{Bound, ProcessInstance, ProcessTheory};
use crate::theory::GlobalTheory;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Morphism {
    pub dom: usize,
    pub cod: usize,
    pub label: String,
}

/// Objects, morphisms and partial composition and tensor tables.
///
/// Compositions are keyed `(g, f) ↦ g ∘ f`; tensors `(f, g) ↦ f ⊗ g`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FiniteCategoryInstance {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<Option<usize>>,
    compose: BTreeMap<(usize, usize), usize>,
    object_tensor: BTreeMap<(usize, usize), usize>,
    morphism_tensor: BTreeMap<(usize, usize), usize>,
    unit: Option<usize>,
}

impl FiniteCategoryInstance {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, label: impl Into<String>) -> usize {
        self.objects.push(label.into());
        self.identity.push(None);
        self.objects.len() - 1
    }

    pub fn add_morphism(&mut self, dom: usize, cod: usize, label: impl Into<String>) -> usize {
        self.morphisms.push(Morphism {
            dom,
            cod,
            label: label.into(),
        });
        self.morphisms.len() - 1
    }

    /// Adds a morphism and records it as the identity of `object`.
    pub fn add_identity(&mut self, object: usize) -> usize {
        let label = format!("id_{}", self.objects[object]);
        let m = self.add_morphism(object, object, label);
        self.identity[object] = Some(m);
        m
    }

    pub fn set_compose(&mut self, g: usize, f: usize, gf: usize) {
        self.compose.insert((g, f), gf);
    }

    pub fn set_object_tensor(&mut self, a: usize, b: usize, ab: usize) {
        self.object_tensor.insert((a, b), ab);
    }

    pub fn set_morphism_tensor(&mut self, f: usize, g: usize, fg: usize) {
        self.morphism_tensor.insert((f, g), fg);
    }

    pub fn remove_morphism_tensor(&mut self, f: usize, g: usize) -> Option<usize> {
        self.morphism_tensor.remove(&(f, g))
    }

    pub fn remove_object_tensor(&mut self, a: usize, b: usize) -> Option<usize> {
        self.object_tensor.remove(&(a, b))
    }

    pub fn set_unit(&mut self, unit: usize) {
        self.unit = Some(unit);
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn identity(&self, object: usize) -> Option<usize> {
        self.identity[object]
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g, f)).copied()
    }

    pub fn object_tensor(&self, a: usize, b: usize) -> Option<usize> {
        self.object_tensor.get(&(a, b)).copied()
    }

    pub fn morphism_tensor(&self, f: usize, g: usize) -> Option<usize> {
        self.morphism_tensor.get(&(f, g)).copied()
    }

    /// Morphisms `a → b`.
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&m| self.morphisms[m].dom == a && self.morphisms[m].cod == b)
            .collect()
    }

    fn out_of(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.objects.len()];
        for (m, mor) in self.morphisms.iter().enumerate() {
            out[mor.dom].push(m);
        }
        out
    }

    /// `class[a]` is the least object isomorphic to `a`.
    pub fn isomorphism_classes(&self) -> Vec<usize> {
        let n = self.objects.len();
        let mut class: Vec<usize> = (0..n).collect();
        for a in 0..n {
            for b in 0..a {
                if class[b] == b && self.isomorphic(a, b) {
                    class[a] = b;
                    break;
                }
            }
        }
        class
    }

    fn isomorphic(&self, a: usize, b: usize) -> bool {
        let (Some(ia), Some(ib)) = (self.identity[a], self.identity[b]) else {
            return false;
        };
        let back = self.hom(b, a);
        self.hom(a, b).into_iter().any(|f| {
            back.iter()
                .any(|&g| self.compose(g, f) == Some(ia) && self.compose(f, g) == Some(ib))
        })
    }
}

/// A failed axiom, with the objects or morphisms that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Violation {
    IdentityMissing {
        object: usize,
    },
    CompositionMissing {
        g: usize,
        f: usize,
    },
    CompositionTyping {
        g: usize,
        f: usize,
    },
    IdentityLaw {
        morphism: usize,
    },
    Associativity {
        f: usize,
        g: usize,
        h: usize,
    },
    /// `f ⊗ g` is missing although both object tensors are defined.
    Fullness {
        f: usize,
        g: usize,
    },
    TensorTyping {
        f: usize,
        g: usize,
    },
    TensorIdentity {
        a: usize,
        b: usize,
    },
    Interchange {
        f: usize,
        f2: usize,
        g: usize,
        g2: usize,
    },
    /// Tensor-definedness differs between `(a, b)` and the isomorphic `(a2, b2)`.
    Repleteness {
        a: usize,
        b: usize,
        a2: usize,
        b2: usize,
    },
    /// Some but not all bracketings and orderings of the triple are defined.
    AssociativityDefinedness {
        a: usize,
        b: usize,
        c: usize,
    },
    Strictness {
        a: usize,
        b: usize,
        c: usize,
    },
    MorphismAssociativity {
        f: usize,
        g: usize,
        h: usize,
    },
    UnitMissing,
    UnitLaw {
        object: usize,
    },
    UnitMorphism {
        morphism: usize,
    },
    ObjectSymmetry {
        a: usize,
        b: usize,
    },
    MorphismSymmetry {
        f: usize,
        g: usize,
    },
}

impl Violation {
    pub fn name(&self) -> &'static str {
        match self {
            Violation::IdentityMissing { .. } => "IdentityMissing",
            Violation::CompositionMissing { .. } => "CompositionMissing",
            Violation::CompositionTyping { .. } => "CompositionTyping",
            Violation::IdentityLaw { .. } => "IdentityLaw",
            Violation::Associativity { .. } => "Associativity",
            Violation::Fullness { .. } => "Fullness",
            Violation::TensorTyping { .. } => "TensorTyping",
            Violation::TensorIdentity { .. } => "TensorIdentity",
            Violation::Interchange { .. } => "Interchange",
            Violation::Repleteness { .. } => "Repleteness",
            Violation::AssociativityDefinedness { .. } => "AssociativityDefinedness",
            Violation::Strictness { .. } => "Strictness",
            Violation::MorphismAssociativity { .. } => "MorphismAssociativity",
            Violation::UnitMissing => "UnitMissing",
            Violation::UnitLaw { .. } => "UnitLaw",
            Violation::UnitMorphism { .. } => "UnitMorphism",
            Violation::ObjectSymmetry { .. } => "ObjectSymmetry",
            Violation::MorphismSymmetry { .. } => "MorphismSymmetry",
        }
    }
}

/// Every violated axiom; empty iff the instance is a strict symmetric
/// partially-monoidal category.
pub fn check_partially_monoidal(inst: &FiniteCategoryInstance) -> Vec<Violation> {
    let mut out = Vec::new();
    check_category(inst, &mut out);
    check_fullness(inst, &mut out);
    check_repleteness(inst, &mut out);
    check_associativity(inst, &mut out);
    check_unit(inst, &mut out);
    check_symmetry(inst, &mut out);
    out
}

fn check_category(inst: &FiniteCategoryInstance, out: &mut Vec<Violation>) {
    let mors = &inst.morphisms;
    for (object, id) in inst.identity.iter().enumerate() {
        match id {
            Some(i) if mors[*i].dom == object && mors[*i].cod == object => {}
            _ => out.push(Violation::IdentityMissing { object }),
        }
    }
    let outs = inst.out_of();
    for f in 0..mors.len() {
        for &g in &outs[mors[f].cod] {
            match inst.compose(g, f) {
                None => out.push(Violation::CompositionMissing { g, f }),
                Some(gf) if mors[gf].dom != mors[f].dom || mors[gf].cod != mors[g].cod => {
                    out.push(Violation::CompositionTyping { g, f })
                }
                Some(_) => {}
            }
        }
        let (Some(ia), Some(ib)) = (inst.identity[mors[f].dom], inst.identity[mors[f].cod]) else {
            continue;
        };
        if inst.compose(ib, f) != Some(f) || inst.compose(f, ia) != Some(f) {
            out.push(Violation::IdentityLaw { morphism: f });
        }
    }
    for f in 0..mors.len() {
        for &g in &outs[mors[f].cod] {
            let Some(gf) = inst.compose(g, f) else { continue };
            for &h in &outs[mors[g].cod] {
                let (Some(hg), Some(h_gf)) = (inst.compose(h, g), inst.compose(h, gf)) else {
                    continue;
                };
                if inst.compose(hg, f) != Some(h_gf) {
                    out.push(Violation::Associativity { f, g, h });
                }
            }
        }
    }
}

fn check_fullness(inst: &FiniteCategoryInstance, out: &mut Vec<Violation>) {
    let mors = &inst.morphisms;
    for f in 0..mors.len() {
        for g in 0..mors.len() {
            let (a, c) = (mors[f].dom, mors[f].cod);
            let (b, d) = (mors[g].dom, mors[g].cod);
            let (Some(ab), Some(cd)) = (inst.object_tensor(a, b), inst.object_tensor(c, d)) else {
                continue;
            };
            match inst.morphism_tensor(f, g) {
                None => out.push(Violation::Fullness { f, g }),
                Some(fg) if mors[fg].dom != ab || mors[fg].cod != cd => out.push(Violation::TensorTyping { f, g }),
                Some(_) => {}
            }
        }
    }
    let n = inst.objects.len();
    for a in 0..n {
        for b in 0..n {
            let Some(ab) = inst.object_tensor(a, b) else { continue };
            let (Some(ia), Some(ib), Some(iab)) = (inst.identity[a], inst.identity[b], inst.identity[ab]) else {
                continue;
            };
            if let Some(t) = inst.morphism_tensor(ia, ib) {
                if t != iab {
                    out.push(Violation::TensorIdentity { a, b });
                }
            }
        }
    }
    let outs = inst.out_of();
    for (&(f, g), &fg) in &inst.morphism_tensor {
        for &f2 in &outs[mors[f].cod] {
            let Some(ff) = inst.compose(f2, f) else { continue };
            for &g2 in &outs[mors[g].cod] {
                let Some(gg) = inst.compose(g2, g) else { continue };
                let (Some(lhs), Some(top)) = (inst.morphism_tensor(ff, gg), inst.morphism_tensor(f2, g2)) else {
                    continue;
                };
                let Some(rhs) = inst.compose(top, fg) else { continue };
                if lhs != rhs {
                    out.push(Violation::Interchange { f, f2, g, g2 });
                }
            }
        }
    }
}

fn check_repleteness(inst: &FiniteCategoryInstance, out: &mut Vec<Violation>) {
    let class = inst.isomorphism_classes();
    let n = inst.objects.len();
    let mut seen: BTreeMap<(usize, usize), (usize, usize, bool)> = BTreeMap::new();
    let mut reported: Vec<(usize, usize)> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let key = (class[a], class[b]);
            let defined = inst.object_tensor(a, b).is_some();
            match seen.get(&key) {
                None => {
                    seen.insert(key, (a, b, defined));
                }
                Some(&(a0, b0, d0)) if d0 != defined && !reported.contains(&key) => {
                    reported.push(key);
                    let ((a, b), (a2, b2)) = if d0 { ((a0, b0), (a, b)) } else { ((a, b), (a0, b0)) };
                    out.push(Violation::Repleteness { a, b, a2, b2 });
                }
                Some(_) => {}
            }
        }
    }
}

fn check_associativity(inst: &FiniteCategoryInstance, out: &mut Vec<Violation>) {
    let n = inst.objects.len();
    let t = |x: Option<usize>, y: Option<usize>| match (x, y) {
        (Some(x), Some(y)) => inst.object_tensor(x, y),
        _ => None,
    };
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                let orders = [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)];
                let mut values = Vec::with_capacity(12);
                for &(x, y, z) in &orders {
                    values.push(t(t(Some(x), Some(y)), Some(z)));
                    values.push(t(Some(x), t(Some(y), Some(z))));
                }
                let defined = values.iter().filter(|v| v.is_some()).count();
                if defined != 0 && defined != values.len() {
                    out.push(Violation::AssociativityDefinedness { a, b, c });
                } else if defined == values.len() && values.iter().any(|v| *v != values[0]) {
                    out.push(Violation::Strictness { a, b, c });
                }
            }
        }
    }
    for (&(f, g), &fg) in &inst.morphism_tensor {
        for h in 0..inst.morphisms.len() {
            let Some(l) = inst.morphism_tensor(fg, h) else { continue };
            let Some(gh) = inst.morphism_tensor(g, h) else { continue };
            let Some(r) = inst.morphism_tensor(f, gh) else { continue };
            if l != r {
                out.push(Violation::MorphismAssociativity { f, g, h });
            }
        }
    }
}

fn check_unit(inst: &FiniteCategoryInstance, out: &mut Vec<Violation>) {
    if inst.objects.is_empty() {
        return;
    }
    let Some(u) = inst.unit else {
        out.push(Violation::UnitMissing);
        return;
    };
    for a in 0..inst.objects.len() {
        if inst.object_tensor(u, a) != Some(a) || inst.object_tensor(a, u) != Some(a) {
            out.push(Violation::UnitLaw { object: a });
        }
    }
    let Some(iu) = inst.identity[u] else { return };
    for f in 0..inst.morphisms.len() {
        let left = inst.morphism_tensor(iu, f);
        let right = inst.morphism_tensor(f, iu);
        if left.is_some_and(|x| x != f) || right.is_some_and(|x| x != f) {
            out.push(Violation::UnitMorphism { morphism: f });
        }
    }
}

fn check_symmetry(inst: &FiniteCategoryInstance, out: &mut Vec<Violation>) {
    let n = inst.objects.len();
    for a in 0..n {
        for b in a + 1..n {
            if inst.object_tensor(a, b) != inst.object_tensor(b, a) {
                out.push(Violation::ObjectSymmetry { a, b });
            }
        }
    }
    for (&(f, g), &fg) in &inst.morphism_tensor {
        if f < g {
            if let Some(gf) = inst.morphism_tensor(g, f) {
                if gf != fg {
                    out.push(Violation::MorphismSymmetry { f, g });
                }
            }
        }
    }
}

impl FiniteCategoryInstance {
    /// Converts a process instance, labelling objects by system and
    /// environment ids.
    pub fn from_processes(pt: &ProcessTheory<'_>, inst: &ProcessInstance) -> Self {
        let mut out = FiniteCategoryInstance::new();
        for &pair in inst.objects() {
            let p = pt.pair(pair);
            out.add_object(format!("({},{})", p.system, p.environment));
        }
        for (m, p) in inst.morphisms().iter().enumerate() {
            let label = format!(
                "u{} s{} L{} K{} M{}",
                p.transform, p.prep, p.ancilla, p.system, p.discarded
            );
            out.add_morphism(inst.dom(m), inst.cod(m), label);
        }
        for o in 0..inst.objects().len() {
            out.identity[o] = Some(inst.identity(o));
        }
        for (&(g, f), &h) in inst.compose_entries() {
            out.set_compose(g, f, h);
        }
        for (&(f, g), &h) in inst.tensor_entries() {
            out.set_morphism_tensor(f, g, h);
        }
        let n = inst.objects().len();
        for a in 0..n {
            for b in 0..n {
                if let Some(ab) = inst.object_tensor(a, b) {
                    out.set_object_tensor(a, b, ab);
                }
            }
        }
        out.unit = inst.unit();
        out
    }
}

/// The full process theory of `theory` restricted to at most `object_cap`
/// system-environment pairs.
pub fn extract_instance(theory: &GlobalTheory, object_cap: usize) -> Result<FiniteCategoryInstance> {
    let lattice = enumerate_self_bicommutant(theory)?;
    let pt = ProcessTheory::new(theory, &lattice, Bound::ObjectCap(object_cap))?;
    let inst = ProcessInstance::build(&pt)?;
    Ok(FiniteCategoryInstance::from_processes(&pt, &inst))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    /// `Z/2` as a discrete category with addition as tensor.
    fn z2() -> FiniteCategoryInstance {
        let mut c = FiniteCategoryInstance::new();
        let o = [c.add_object("0"), c.add_object("1")];
        let ids = [c.add_identity(o[0]), c.add_identity(o[1])];
        for i in 0..2 {
            c.set_compose(ids[i], ids[i], ids[i]);
            for j in 0..2 {
                c.set_object_tensor(o[i], o[j], o[(i + j) % 2]);
                c.set_morphism_tensor(ids[i], ids[j], ids[(i + j) % 2]);
            }
        }
        c.set_unit(o[0]);
        c
    }

    #[test]
    fn total_monoidal_instance_passes() {
        assert!(check_partially_monoidal(&z2()).is_empty());
    }

    #[test]
    fn deleted_tensor_entry_is_a_fullness_violation() {
        let mut c = z2();
        c.remove_morphism_tensor(1, 1);
        assert_eq!(check_partially_monoidal(&c), vec![Violation::Fullness { f: 1, g: 1 }]);
    }

    #[test]
    fn empty_instance_is_vacuously_valid() {
        let t = models::symmetric(3).unwrap().theory;
        let inst = extract_instance(&t, 0).unwrap();
        assert!(inst.objects().is_empty());
        assert!(check_partially_monoidal(&inst).is_empty());
    }

    #[test]
    fn small_theories_pass() {
        let t = models::symmetric(3).unwrap().theory;
        let inst = extract_instance(&t, usize::MAX).unwrap();
        assert_eq!(inst.objects().len(), 3);
        assert_eq!(check_partially_monoidal(&inst), vec![]);
        let one = extract_instance(&t, 1).unwrap();
        assert_eq!(one.objects().len(), 1);
        assert_eq!(one.morphisms().len(), 1);
    }

    #[test]
    fn grid_instance_passes() {
        let t = models::symmetric_product(&[3, 3]).unwrap().theory;
        let inst = extract_instance(&t, usize::MAX).unwrap();
        assert_eq!(inst.objects().len(), 9);
        assert_eq!(check_partially_monoidal(&inst), vec![]);
    }

    #[test]
    fn isomorphic_copy_breaks_repleteness() {
        let mut c = FiniteCategoryInstance::new();
        let (z, one, copy) = (c.add_object("0"), c.add_object("1"), c.add_object("1'"));
        let ids: Vec<usize> = [z, one, copy].iter().map(|&o| c.add_identity(o)).collect();
        let i = c.add_morphism(one, copy, "i");
        let j = c.add_morphism(copy, one, "j");
        for m in 0..5 {
            let (d, k) = (c.morphisms()[m].dom, c.morphisms()[m].cod);
            c.set_compose(ids[k], m, m);
            c.set_compose(m, ids[d], m);
            c.set_morphism_tensor(ids[0], m, m);
            c.set_morphism_tensor(m, ids[0], m);
        }
        c.set_compose(j, i, ids[1]);
        c.set_compose(i, j, ids[2]);
        for o in [z, one, copy] {
            c.set_object_tensor(z, o, o);
            c.set_object_tensor(o, z, o);
        }
        c.set_object_tensor(one, one, one);
        c.set_morphism_tensor(ids[1], ids[1], ids[1]);
        c.set_unit(z);
        assert_eq!(c.isomorphism_classes(), vec![0, 1, 1]);
        let v = check_partially_monoidal(&c);
        assert_eq!(v.len(), 1, "{v:?}");
        assert_eq!(v[0].name(), "Repleteness");
    }

    #[test]
    fn partial_bracketing_breaks_associativity_definedness() {
        let mut c = FiniteCategoryInstance::new();
        let names = ["0", "a", "b", "c", "ab", "abc"];
        let o: Vec<usize> = names.iter().map(|n| c.add_object(*n)).collect();
        let ids: Vec<usize> = o.iter().map(|&x| c.add_identity(x)).collect();
        for &x in &o {
            c.set_compose(ids[x], ids[x], ids[x]);
            c.set_object_tensor(0, x, x);
            c.set_object_tensor(x, 0, x);
            c.set_morphism_tensor(ids[0], ids[x], ids[x]);
            c.set_morphism_tensor(ids[x], ids[0], ids[x]);
        }
        for (x, y, xy) in [(1, 2, 4), (4, 3, 5)] {
            for (p, q) in [(x, y), (y, x)] {
                c.set_object_tensor(p, q, xy);
                c.set_morphism_tensor(ids[p], ids[q], ids[xy]);
            }
        }
        c.set_unit(0);
        assert_eq!(
            check_partially_monoidal(&c),
            vec![Violation::AssociativityDefinedness { a: 1, b: 2, c: 3 }]
        );
    }
}
