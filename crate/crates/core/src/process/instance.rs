use std::collections::{BTreeMap, HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::Result;

use super::{Process, ProcessTheory};

/// How many extra raw processes are kept per morphism, for substitution tests.
const ALTERNATES: usize = 3;

type Key = (usize, usize, Vec<usize>);

/// The finite category of processes between a chosen set of pairs, with
/// morphisms identified by their state maps.
///
/// Object `i` is the pair `objects()[i]`. Composition and tensor tables are
/// computed from the formulas on representatives and then looked up by state
/// map, so a missing entry means the formula left the instance.
#[derive(Debug, Clone)]
pub struct ProcessInstance {
    objects: Vec<usize>,
    object_of: HashMap<usize, usize>,
    morphisms: Vec<Process>,
    tables: Vec<Vec<usize>>,
    alternates: Vec<Vec<Process>>,
    classes: HashMap<Key, usize>,
    homs: BTreeMap<(usize, usize), Vec<usize>>,
    identity: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    tensor: HashMap<(usize, usize), usize>,
    object_tensor: HashMap<(usize, usize), usize>,
    unit: Option<usize>,
}

impl ProcessInstance {
    /// Every process between every pair of the theory.
    pub fn build(pt: &ProcessTheory<'_>) -> Result<Self> {
        Self::build_on(pt, (0..pt.pairs().len()).collect())
    }

    /// The pure fragment: objects `(𝓗, I)` only.
    pub fn build_pure(pt: &ProcessTheory<'_>) -> Result<Self> {
        Self::build_on(pt, (0..pt.systems().len()).map(|s| pt.pure_object(s)).collect())
    }

    fn build_on(pt: &ProcessTheory<'_>, objects: Vec<usize>) -> Result<Self> {
        let object_of: HashMap<usize, usize> = objects.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut inst = ProcessInstance {
            identity: Vec::new(),
            unit: object_of
                .get(&pt.pure_object_opt(pt.unit()).unwrap_or(usize::MAX))
                .copied(),
            objects,
            object_of,
            morphisms: Vec::new(),
            tables: Vec::new(),
            alternates: Vec::new(),
            classes: HashMap::new(),
            homs: BTreeMap::new(),
            compose: HashMap::new(),
            tensor: HashMap::new(),
            object_tensor: HashMap::new(),
        };
        for &pair in &inst.objects.clone() {
            for p in pt.enumerate_processes(pair) {
                if !inst.object_of.contains_key(&p.codomain) {
                    continue;
                }
                let table = pt.process_table(&p)?;
                inst.insert(p, table);
            }
        }
        for &pair in &inst.objects.clone() {
            let id = pt.identity_process(pair);
            let class = inst.classes[&(id.domain, id.codomain, pt.process_table(&id)?)];
            inst.identity.push(class);
        }
        let n = inst.objects.len();
        for a in 0..n {
            for b in 0..n {
                if let Some(t) = pt.pair_tensor(inst.objects[a], inst.objects[b]) {
                    if let Some(&o) = inst.object_of.get(&t) {
                        inst.object_tensor.insert((a, b), o);
                    }
                }
            }
        }
        inst.fill_compose(pt)?;
        inst.fill_tensor(pt)?;
        Ok(inst)
    }

    fn insert(&mut self, p: Process, table: Vec<usize>) {
        let key = (p.domain, p.codomain, table);
        match self.classes.get(&key) {
            Some(&c) => {
                if self.alternates[c].len() < ALTERNATES {
                    self.alternates[c].push(p);
                }
            }
            None => {
                let c = self.morphisms.len();
                let (d, k) = (self.object_of[&p.domain], self.object_of[&p.codomain]);
                self.homs.entry((d, k)).or_default().push(c);
                self.tables.push(key.2.clone());
                self.classes.insert(key, c);
                self.morphisms.push(p);
                self.alternates.push(Vec::new());
            }
        }
    }

    /// Class of an arbitrary process, if it lies in the instance.
    pub fn class_of(&self, pt: &ProcessTheory<'_>, p: &Process) -> Result<Option<usize>> {
        if !self.object_of.contains_key(&p.domain) || !self.object_of.contains_key(&p.codomain) {
            return Ok(None);
        }
        Ok(self.classes.get(&(p.domain, p.codomain, pt.process_table(p)?)).copied())
    }

    fn fill_compose(&mut self, pt: &ProcessTheory<'_>) -> Result<()> {
        for f in 0..self.morphisms.len() {
            let cod = self.object_of[&self.morphisms[f].codomain];
            for g in self.out_of(cod) {
                if let Ok(c) = pt.compose_process(&self.morphisms[g], &self.morphisms[f]) {
                    if let Some(h) = self.class_of(pt, &c)? {
                        self.compose.insert((g, f), h);
                    }
                }
            }
        }
        Ok(())
    }

    fn fill_tensor(&mut self, pt: &ProcessTheory<'_>) -> Result<()> {
        let n = self.morphisms.len();
        for f in 0..n {
            for g in 0..n {
                let (a, b) = (self.dom(f), self.dom(g));
                let (c, d) = (self.cod(f), self.cod(g));
                if !self.object_tensor.contains_key(&(a, b)) || !self.object_tensor.contains_key(&(c, d)) {
                    continue;
                }
                if let Ok(t) = pt.tensor_processes(&self.morphisms[f], &self.morphisms[g]) {
                    if let Some(h) = self.class_of(pt, &t)? {
                        self.tensor.insert((f, g), h);
                    }
                }
            }
        }
        Ok(())
    }

    fn out_of(&self, object: usize) -> Vec<usize> {
        self.homs
            .range((object, 0)..(object + 1, 0))
            .flat_map(|(_, v)| v.iter().copied())
            .collect()
    }

    /// Pair ids of the objects.
    pub fn objects(&self) -> &[usize] {
        &self.objects
    }

    pub fn object_of_pair(&self, pair: usize) -> Option<usize> {
        self.object_of.get(&pair).copied()
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    /// One representative process per morphism.
    pub fn morphisms(&self) -> &[Process] {
        &self.morphisms
    }

    pub fn table(&self, m: usize) -> &[usize] {
        &self.tables[m]
    }

    /// Other raw processes with the same type and state map.
    pub fn alternates(&self, m: usize) -> &[Process] {
        &self.alternates[m]
    }

    pub fn dom(&self, m: usize) -> usize {
        self.object_of[&self.morphisms[m].domain]
    }

    pub fn cod(&self, m: usize) -> usize {
        self.object_of[&self.morphisms[m].codomain]
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        self.homs.get(&(a, b)).map_or(&[], Vec::as_slice)
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identity[object]
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g, f)).copied()
    }

    pub fn tensor(&self, f: usize, g: usize) -> Option<usize> {
        self.tensor.get(&(f, g)).copied()
    }

    /// Every `(g, f) ↦ g ∘ f` entry.
    pub fn compose_entries(&self) -> &HashMap<(usize, usize), usize> {
        &self.compose
    }

    /// Every `(f, g) ↦ f ⊗ g` entry.
    pub fn tensor_entries(&self) -> &HashMap<(usize, usize), usize> {
        &self.tensor
    }

    pub fn object_tensor(&self, a: usize, b: usize) -> Option<usize> {
        self.object_tensor.get(&(a, b)).copied()
    }

    /// Smallest set containing `seeds` and closed under the composition and
    /// tensor tables.
    pub fn closure(&self, seeds: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let n = self.morphisms.len();
        let mut set = FixedBitSet::with_capacity(n);
        let mut members: Vec<usize> = Vec::new();
        let mut queue: VecDeque<usize> = VecDeque::new();
        for s in seeds {
            if !set.put(s) {
                queue.push_back(s);
            }
        }
        while let Some(m) = queue.pop_front() {
            members.push(m);
            let mut found = Vec::new();
            for &x in &members {
                found.extend(self.compose(m, x));
                found.extend(self.compose(x, m));
                found.extend(self.tensor(m, x));
                found.extend(self.tensor(x, m));
            }
            for y in found {
                if !set.put(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }
}

/// The two closure equalities of the purification principle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationReport {
    /// Morphisms between pure objects.
    pub pure_fragment: usize,
    /// Closure of transformations and pure states.
    pub generated_pure: usize,
    pub pure_equal: bool,
    pub all_morphisms: usize,
    /// Closure of the pure fragment and all discarding maps.
    pub generated_full: usize,
    pub full_equal: bool,
}

impl GenerationReport {
    pub fn holds(&self) -> bool {
        self.pure_equal && self.full_equal
    }
}

impl ProcessTheory<'_> {
    /// `(u, 1; I) : (𝓗, I) → (𝓗, I)` for every `u ∈ Transf(𝓗)`.
    pub fn transformations(&self, system: usize) -> Vec<Process> {
        let obj = self.pure_object(system);
        self.system(system)
            .transf()
            .members()
            .map(|u| {
                self.process(obj, self.unit(), 0, u, system, self.unit())
                    .expect("well typed")
            })
            .collect()
    }

    /// `(1, σ; I) : (I, I) → (𝓗, I)` for every pure `σ` of `𝓗`.
    pub fn state_preparations(&self, system: usize) -> Vec<Process> {
        let obj = self.pure_object(self.unit());
        (0..self.system(system).pure_states().len())
            .map(|s| {
                self.process(obj, system, s, self.theory.group().identity(), system, self.unit())
                    .expect("well typed")
            })
            .collect()
    }

    pub(crate) fn pure_object_opt(&self, system: usize) -> Option<usize> {
        self.pair_id(system, 0)
    }

    /// Checks both closure equalities on a full instance.
    pub fn verify_generation(&self, inst: &ProcessInstance) -> Result<GenerationReport> {
        let pure_objects: FixedBitSet = {
            let mut b = FixedBitSet::with_capacity(inst.objects().len());
            for s in 0..self.systems().len() {
                if let Some(o) = inst.object_of_pair(self.pure_object(s)) {
                    b.insert(o);
                }
            }
            b
        };
        let mut seeds = Vec::new();
        for s in 0..self.systems().len() {
            for p in self.transformations(s).iter().chain(self.state_preparations(s).iter()) {
                seeds.extend(inst.class_of(self, p)?);
            }
        }
        let pure_closure = inst.closure(seeds.iter().copied());
        let n = inst.morphisms().len();
        let mut fragment = FixedBitSet::with_capacity(n);
        for m in 0..n {
            if pure_objects.contains(inst.dom(m)) && pure_objects.contains(inst.cod(m)) {
                fragment.insert(m);
            }
        }
        let mut full_seeds: Vec<usize> = pure_closure.ones().collect();
        for &pair in inst.objects() {
            full_seeds.extend(inst.class_of(self, &self.discard(pair))?);
        }
        let full_closure = inst.closure(full_seeds);
        Ok(GenerationReport {
            pure_fragment: fragment.count_ones(..),
            generated_pure: pure_closure.count_ones(..),
            pure_equal: pure_closure == fragment,
            all_morphisms: n,
            generated_full: full_closure.count_ones(..),
            full_equal: full_closure.count_ones(..) == n,
        })
    }
}
