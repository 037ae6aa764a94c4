//! Exhaustive property suites over a theory, shared by the command line and
//! the test harness.
//!
//! Each suite checks the laws of one layer and returns every failed instance
//! as a [`Violation`]. Quantities that are interesting but not laws, such as
//! distributivity failures, are recorded as observations.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::group::Subgroup;
use crate::lattice::{self, SbcLattice};
use crate::pmcat::{self, FiniteCategoryInstance};
use crate::process::{Bound, PairState, ProcessInstance, ProcessTheory};
use crate::states;
use crate::systems::{self, System, TensorTable};
use crate::theory::GlobalTheory;

/// Quadruple counts above this are sampled in the exchange-law check.
pub const EXHAUSTIVE_QUADRUPLES: usize = 1_000_000;
pub const SAMPLED_QUADRUPLES: usize = 10_000;

/// Violations kept per report; the total is always counted.
const KEPT: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub property: String,
    pub witness: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: usize,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
    pub observations: BTreeMap<String, usize>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            ..Default::default()
        }
    }

    fn check(&mut self, property: &str, ok: bool, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < KEPT {
                self.violations.push(Violation {
                    property: property.to_string(),
                    witness: witness(),
                });
            }
        }
    }

    fn observe(&mut self, key: &str, n: usize) {
        *self.observations.entry(key.to_string()).or_default() += n;
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    /// Checks per property name that failed, for quick summaries.
    pub fn failed_properties(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self.violations.iter().map(|x| x.property.as_str()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Commutant involution, De Morgan laws, lattice laws and bounds over every
/// node, pair and triple of nodes.
pub fn lattice_suite(theory: &GlobalTheory, lat: &SbcLattice) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("lattice");
    let n = lat.len();
    let (bot, top) = (lat.bottom(), lat.top());
    r.check("bounds", lat.node(bot).is_trivial(), || format!("bottom node {bot}"));
    r.check("bounds", lat.node(top) == &theory.whole(), || format!("top node {top}"));
    r.check(
        "bounds",
        lat.commutant_id(bot) == top && lat.commutant_id(top) == bot,
        || "commutants of the bounds".into(),
    );
    let mut orthocomplemented = 0;
    for a in 0..n {
        let h = lat.node(a);
        let c1 = lattice::commutant(theory, h)?;
        let c2 = lattice::commutant(theory, &c1)?;
        let c3 = lattice::commutant(theory, &c2)?;
        r.check("involution", c3 == c1, || format!("H = node {a}"));
        r.check("self_bicommutant", &c2 == h, || format!("H = node {a}"));
        r.check("commutant_node", lat.node(lat.commutant_id(a)) == &c1, || {
            format!("H = node {a}")
        });
        r.check("bounds", lat.leq(bot, a) && lat.leq(a, top), || format!("H = node {a}"));
        r.check(
            "orthogonal_to_commutant",
            lattice::is_orthogonal(theory, h, &c1),
            || format!("H = node {a}"),
        );
        if lattice::is_orthocomplemented(theory, h) {
            orthocomplemented += 1;
            r.check(
                "orthocomplement_join",
                lat.join_id(a, lat.commutant_id(a)) == top,
                || format!("H = node {a}"),
            );
        }
    }
    r.observe("nodes", n);
    r.observe("orthocomplemented_nodes", orthocomplemented);

    let mut nested = 0;
    let mut orthomodular_failures = 0;
    for a in 0..n {
        for b in 0..n {
            let (h, k) = (lat.node(a), lat.node(b));
            let (j, m) = (lat.join_id(a, b), lat.meet_id(a, b));
            let w = || format!("H = node {a}, K = node {b}");
            r.check("join_matches", &lattice::join(theory, h, k)? == lat.node(j), w);
            r.check("meet_matches", &lattice::meet(theory, h, k)? == lat.node(m), w);
            r.check("leq_matches", lat.leq(a, b) == h.is_subgroup_of(k), w);
            if lat.leq(a, b) {
                nested += 1;
                r.check("antitone", lat.leq(lat.commutant_id(b), lat.commutant_id(a)), w);
                if !lattice::check_orthomodular(theory, h, k)? {
                    orthomodular_failures += 1;
                }
            }
            let (ca, cb) = (lat.commutant_id(a), lat.commutant_id(b));
            r.check("de_morgan_join", lat.commutant_id(j) == lat.meet_id(ca, cb), w);
            r.check("de_morgan_meet", lat.commutant_id(m) == lat.join_id(ca, cb), w);
            r.check("join_commutative", j == lat.join_id(b, a), w);
            r.check("meet_commutative", m == lat.meet_id(b, a), w);
            r.check("join_upper_bound", lat.leq(a, j) && lat.leq(b, j), w);
            r.check("meet_lower_bound", lat.leq(m, a) && lat.leq(m, b), w);
            r.check("absorption_meet", lat.meet_id(a, j) == a, w);
            r.check("absorption_join", lat.join_id(a, m) == a, w);
        }
        r.check("bounds", lat.join_id(a, bot) == a && lat.meet_id(a, top) == a, || {
            format!("H = node {a}")
        });
        r.check("idempotent", lat.join_id(a, a) == a && lat.meet_id(a, a) == a, || {
            format!("H = node {a}")
        });
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let w = || format!("nodes {a}, {b}, {c}");
                r.check(
                    "join_associative",
                    lat.join_id(lat.join_id(a, b), c) == lat.join_id(a, lat.join_id(b, c)),
                    w,
                );
                r.check(
                    "meet_associative",
                    lat.meet_id(lat.meet_id(a, b), c) == lat.meet_id(a, lat.meet_id(b, c)),
                    w,
                );
            }
        }
    }
    r.observe("nested_pairs", nested);
    r.observe("orthomodular_failures", orthomodular_failures);
    r.observe("distributivity_failures", lat.distributivity_violations(0).violations);
    Ok(r)
}

/// Tensor product of transformations on orthogonal node pairs: product
/// subgroup, exchange law, swap and factorisation uniqueness.
pub fn transformation_suite(theory: &GlobalTheory, lat: &SbcLattice, seed: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("transformations");
    let g = theory.group();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut literal_centre_failures = 0;
    let mut pairs = 0;
    for a in 0..lat.len() {
        for b in 0..lat.len() {
            let (h, k) = (lat.node(a), lat.node(b));
            if !lattice::is_orthogonal(theory, h, k) {
                continue;
            }
            pairs += 1;
            let w = || format!("H = node {a}, K = node {b}");
            let hk = match lattice::product_set(theory, h, k) {
                Ok(s) => s,
                Err(_) => {
                    r.check("product_is_subgroup", false, w);
                    continue;
                }
            };
            let j = lat.node(lat.join_id(a, b));
            r.check("product_in_join", hk.is_subgroup_of(j), w);
            r.check(
                "join_is_product_bicommutant",
                &lattice::bicommutant(theory, &hk)? == j,
                w,
            );

            let hs = h.member_vec();
            let ks = k.member_vec();
            for &x in &hs {
                for &y in &ks {
                    if lattice::tensor_element(theory, x, y) != lattice::tensor_element(theory, y, x) {
                        r.check("swap", false, || format!("{}, h = {x}, k = {y}", w()));
                    } else {
                        r.checks += 1;
                    }
                }
            }
            let quads = hs.len() * hs.len() * ks.len() * ks.len();
            let exchange = |p: usize, q: usize, c: usize, d: usize, r: &mut SuiteReport| {
                let lhs = lattice::tensor_element(theory, g.mul(p, q), g.mul(c, d));
                let rhs = g.mul(
                    lattice::tensor_element(theory, p, c),
                    lattice::tensor_element(theory, q, d),
                );
                r.check("exchange", lhs == rhs, || {
                    format!("{}, a = {p}, b = {q}, c = {c}, d = {d}", w())
                });
            };
            if quads <= EXHAUSTIVE_QUADRUPLES {
                for &p in &hs {
                    for &q in &hs {
                        for &c in &ks {
                            for &d in &ks {
                                exchange(p, q, c, d, &mut r);
                            }
                        }
                    }
                }
            } else {
                r.observe("sampled_pairs", 1);
                for _ in 0..SAMPLED_QUADRUPLES {
                    let p = hs[rng.gen_range(0..hs.len())];
                    let q = hs[rng.gen_range(0..hs.len())];
                    let c = ks[rng.gen_range(0..ks.len())];
                    let d = ks[rng.gen_range(0..ks.len())];
                    exchange(p, q, c, d, &mut r);
                }
            }

            let hk_meet = h.intersection(k);
            let centre = g.centre_of(&hk);
            r.check("meet_central_in_product", hk_meet.is_subgroup_of(&centre), w);
            r.check(
                "factorisation_up_to_meet",
                hk.order() * hk_meet.order() == h.order() * k.order(),
                w,
            );
            if centre != hk_meet {
                literal_centre_failures += 1;
            }
            if lattice::is_orthocomplemented(theory, h) || lattice::is_orthocomplemented(theory, k) {
                r.check("unique_factorisation", hk.order() == h.order() * k.order(), w);
            }
        }
    }
    r.observe("orthogonal_pairs", pairs);
    r.observe("centre_larger_than_meet", literal_centre_failures);
    Ok(r)
}

/// The local-state laws on every node: the action, centre triviality,
/// iterated restriction, purity constancy and pure stabilizers.
pub fn states_suite(theory: &GlobalTheory, lat: &SbcLattice) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("states");
    let g = theory.group();
    let deg = theory.degree();
    let mut disagreements = 0;
    let mut pure_total = 0;
    for a in 0..lat.len() {
        let h = lat.node(a);
        let hc = lat.node(lat.commutant_id(a));
        let part = theory.orbit_partition(hc);
        let centre = g.centre_of(h);
        let verdicts: Vec<states::PurityVerdict> = (0..deg)
            .map(|p| states::is_product_state(theory, h, p))
            .collect::<Result<_>>()?;
        for psi in 0..deg {
            let w = || format!("H = node {a}, psi = {psi}");
            let orbit = g.orbit(h, psi);
            let stab = theory.stabilizer(h, psi)?;
            r.check("orbit_stabilizer", orbit.len() * stab.order() == h.order(), w);
            let lam = states::restrict(theory, h, psi)?;
            for x in h.members() {
                let moved = states::act_local(theory, h, x, &lam)?;
                r.check(
                    "action_well_defined",
                    moved == states::restrict(theory, h, g.apply(x, psi))?,
                    || format!("{}, h = {x}", w()),
                );
                if centre.contains(x) {
                    r.check("centre_acts_trivially", moved == lam, || format!("{}, z = {x}", w()));
                }
            }
            let v = &verdicts[psi];
            r.check(
                "purity_constant_on_orbits",
                v.pure == verdicts[part.orbit_of(psi)[0]].pure,
                w,
            );
            let vc = states::is_product_state(theory, hc, psi)?;
            r.check("purity_symmetric", v.pure == vc.pure, w);
            r.check("pure_implies_stabilizer_equation", !v.pure || v.weak_equation, w);
            if v.criteria_disagree() {
                disagreements += 1;
            }
        }
        for lam in states::pure_local_states(theory, h)? {
            pure_total += 1;
            let w = || format!("H = node {a}, state at {}", lam.representative());
            for x in h.members() {
                let moved = states::act_local(theory, h, x, &lam)?;
                r.check(
                    "pure_closed_under_action",
                    verdicts[moved.representative()].pure,
                    || format!("{}, h = {x}", w()),
                );
            }
            let (local, on_point) = states::pure_stabilizer(theory, h, &lam)?;
            r.check("pure_stabilizer", local == on_point, w);
        }
        // restriction from the whole group is the identity
        r.check(
            "restriction_from_whole",
            a != lat.top() || (0..deg).all(|p| part.orbit_of(p) == [p]),
            || "top node".into(),
        );
    }
    for a in 0..lat.len() {
        for b in 0..lat.len() {
            if a == b || !lat.leq(b, a) {
                continue;
            }
            let (h, k) = (lat.node(a), lat.node(b));
            let hp = theory.orbit_partition(lat.node(lat.commutant_id(a)));
            let kp = theory.orbit_partition(lat.node(lat.commutant_id(b)));
            for psi in 0..deg {
                for phi in psi + 1..deg {
                    if hp.orbit_index(psi) == hp.orbit_index(phi) {
                        r.check(
                            "iterated_restriction",
                            kp.orbit_index(psi) == kp.orbit_index(phi),
                            || format!("H = node {a}, K = node {b}, psi = {psi}, phi = {phi}"),
                        );
                    }
                }
                let lam = states::restrict(theory, h, psi)?;
                r.check(
                    "iterated_restriction",
                    states::iterated_restrict(theory, k, &lam)? == states::restrict(theory, k, psi)?,
                    || format!("H = node {a}, K = node {b}, psi = {psi}"),
                );
            }
        }
    }
    r.observe("pure_local_states", pure_total);
    r.observe("criteria_disagreements", disagreements);
    Ok(r)
}

/// Compatibility, tensor products of systems and pure states, and their
/// strict commutativity and associativity, over every system of the theory.
pub fn systems_suite(theory: &GlobalTheory, lat: &SbcLattice) -> Result<SuiteReport> {
    let all = systems::enumerate_systems(theory, lat);
    systems_suite_on(theory, &all)
}

/// [`systems_suite`] restricted to the systems reachable from `seeds` by
/// tensor products.
pub fn systems_suite_from(theory: &GlobalTheory, seeds: &[System]) -> Result<SuiteReport> {
    let mut all: Vec<System> = seeds.to_vec();
    all.push(systems::trivial_system(theory));
    let mut i = 0;
    while i < all.len() {
        for j in 0..=i {
            for (x, y) in [(i, j), (j, i)] {
                if let Some(t) = systems::tensor_table(theory, &all[x], &all[y])? {
                    if !all.contains(&t.system) {
                        all.push(t.system);
                    }
                }
            }
        }
        i += 1;
    }
    all.sort();
    all.dedup();
    systems_suite_on(theory, &all)
}

fn systems_suite_on(theory: &GlobalTheory, all: &[System]) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("systems");
    let g = theory.group();
    let n = all.len();
    let index: HashMap<&System, usize> = all.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let trivial = systems::trivial_system(theory);
    let mut tables: HashMap<(usize, usize), TensorTable> = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            if let Some(t) = systems::tensor_table(theory, &all[a], &all[b])? {
                tables.insert((a, b), t);
            }
        }
    }
    r.observe("systems", n);
    r.observe("compatible_pairs", tables.len());
    let mut non_bijective = 0;

    for (a, sa) in all.iter().enumerate() {
        let w = || format!("A = system {a}");
        r.check(
            "system_is_orbit",
            sa.pure_states().iter().all(|s| s.owner() == sa.transf()),
            w,
        );
        let with_unit = systems::are_compatible(theory, sa, &trivial)?.is_some();
        r.check("unit_compatibility", with_unit == systems::is_unital(theory, sa), w);
        if with_unit {
            let t = systems::tensor_table(theory, sa, &trivial)?.expect("compatible");
            r.check("unit_law", &t.system == sa, w);
            for i in 0..sa.pure_states().len() {
                r.check("unit_law_states", t.state(i, 0).ok() == Some(i), || {
                    format!("{}, state {i}", w())
                });
            }
        }
    }

    for (&(a, b), t) in &tables {
        let (sa, sb) = (&all[a], &all[b]);
        let (h, k) = (sa.transf(), sb.transf());
        let w = || format!("A = system {a}, B = system {b}");
        r.check(
            "compatible_orthocomplementary",
            lattice::is_orthocomplementary(theory, h, k),
            w,
        );
        let p = t.system.transf();
        r.check(
            "relative_commutant",
            &lattice::relative_commutant(theory, h, p)? == k,
            w,
        );
        r.check(
            "relative_commutant",
            &lattice::relative_commutant(theory, k, p)? == h,
            w,
        );
        r.check(
            "tensor_is_system",
            index.contains_key(&t.system) || !all.contains(&t.system),
            w,
        );
        match tables.get(&(b, a)) {
            None => r.check("commutative", false, w),
            Some(u) => {
                r.check("commutative", u.system == t.system, w);
                for i in 0..sa.pure_states().len() {
                    for j in 0..sb.pure_states().len() {
                        r.check("commutative_states", t.state(i, j).ok() == u.state(j, i).ok(), || {
                            format!("{}, states {i}, {j}", w())
                        });
                    }
                }
            }
        }
        let mut hit = vec![false; t.system.pure_states().len()];
        for (i, rho) in sa.pure_states().iter().enumerate() {
            for (j, sigma) in sb.pure_states().iter().enumerate() {
                let ws = || format!("{}, states {i}, {j}", w());
                let c = &t.candidates[i * sb.pure_states().len() + j];
                r.check("witness_unique", c.len() == 1, ws);
                let Ok(s) = t.state(i, j) else {
                    r.check("witness_in_tensor", false, ws);
                    continue;
                };
                hit[s] = true;
                let lam = &t.system.pure_states()[s];
                r.check(
                    "tensor_restricts",
                    &states::iterated_restrict(theory, h, lam)? == rho,
                    ws,
                );
                r.check(
                    "tensor_restricts",
                    &states::iterated_restrict(theory, k, lam)? == sigma,
                    ws,
                );
            }
        }
        if !hit.iter().all(|&x| x) {
            non_bijective += 1;
        }

        // restriction equals trace on pure states of the tensor
        let pc = theory.commutant_of(p);
        let kp = Subgroup::from_bits(g.product_members(k, &pc));
        let hp = Subgroup::from_bits(g.product_members(h, &pc));
        let hc_part = theory.orbit_partition(&theory.commutant_of(h));
        let kc_part = theory.orbit_partition(&theory.commutant_of(k));
        let kp_part = theory.orbit_partition(&kp);
        let hp_part = theory.orbit_partition(&hp);
        let reps: Vec<usize> = t.system.pure_states().iter().map(|s| s.representative()).collect();
        for (x, &psi) in reps.iter().enumerate() {
            for (y, &phi) in reps.iter().enumerate() {
                let wp = || format!("{}, tensor states {x}, {y}", w());
                let same_h = hc_part.orbit_index(psi) == hc_part.orbit_index(phi);
                let same_k = kp_part.orbit_index(psi) == kp_part.orbit_index(phi);
                r.check("restriction_equals_trace", same_h == same_k, wp);
                let same_kc = kc_part.orbit_index(psi) == kc_part.orbit_index(phi);
                let same_hk = hp_part.orbit_index(psi) == hp_part.orbit_index(phi);
                r.check("restriction_equals_trace", same_kc == same_hk, wp);
            }
        }
    }
    r.observe("tensor_state_maps_not_onto", non_bijective);

    let id = |s: &System| index.get(s).copied();
    let mut triples = 0;
    for (&(a, b), tab) in &tables {
        let Some(ab) = id(&tab.system) else { continue };
        for c in 0..n {
            let Some(tabc) = tables.get(&(ab, c)) else { continue };
            triples += 1;
            let w = || format!("A = system {a}, B = system {b}, C = system {c}");
            let rep = systems::check_associativity_triple(theory, &all[a], &all[b], &all[c])?;
            r.check("associativity_triple", rep.holds(), w);
            let (Some(tbc), Some(tac)) = (tables.get(&(b, c)), tables.get(&(a, c))) else {
                r.check("associativity_definedness", false, w);
                continue;
            };
            let (Some(bc), Some(ac)) = (id(&tbc.system), id(&tac.system)) else {
                continue;
            };
            let (Some(ta_bc), Some(tb_ac)) = (tables.get(&(a, bc)), tables.get(&(b, ac))) else {
                r.check("associativity_definedness", false, w);
                continue;
            };
            r.check(
                "associativity_systems",
                ta_bc.system == tabc.system && tb_ac.system == tabc.system,
                w,
            );
            let (na, nb, nc) = (
                all[a].pure_states().len(),
                all[b].pure_states().len(),
                all[c].pure_states().len(),
            );
            for i in 0..na {
                for j in 0..nb {
                    for l in 0..nc {
                        let left = tab.state(i, j).and_then(|x| tabc.state(x, l));
                        let right = tbc.state(j, l).and_then(|x| ta_bc.state(i, x));
                        let mixed = tac.state(i, l).and_then(|x| tb_ac.state(j, x));
                        let ok = left.is_ok() && left == right && left == mixed;
                        r.check("associativity_states", ok, || format!("{}, states {i}, {j}, {l}", w()));
                    }
                }
            }
        }
    }
    r.observe("associativity_triples", triples);
    Ok(r)
}

/// Category laws, the process formulas, purification independence,
/// substitution, the pure fragment, generation and causality on a bounded
/// process theory.
pub fn processes_suite(theory: &GlobalTheory, lat: &SbcLattice, bound: Bound) -> Result<SuiteReport> {
    let pt = ProcessTheory::new(theory, lat, bound)?;
    let inst = ProcessInstance::build(&pt)?;
    let mut r = SuiteReport::new("processes");
    r.observe("systems", pt.systems().len());
    r.observe("objects", inst.objects().len());
    r.observe("morphisms", inst.morphisms().len());
    category_laws(&inst, &mut r);
    formula_laws(&pt, &inst, &mut r)?;
    pure_fragment(&pt, &mut r)?;
    pair_state_laws(&pt, &mut r)?;

    let gen = pt.verify_generation(&inst)?;
    r.check("generation_pure", gen.pure_equal, || format!("{gen:?}"));
    r.check("generation_full", gen.full_equal, || format!("{gen:?}"));

    for pair in 0..pt.pairs().len() {
        let w = || format!("pair {pair}");
        let effects = pt.enumerate_generalised_effects(pair)?;
        r.check("unique_effect", effects.len() == 1, w);
        let top = pt.process_table(&pt.discard(pair))?;
        r.check(
            "effect_is_discard",
            effects.iter().all(|e| pt.process_table(e).ok().as_ref() == Some(&top)),
            w,
        );
        if let Some(o) = inst.object_of_pair(pair) {
            for (q, _) in pt.pairs().iter().enumerate().filter(|(_, p)| p.system == pt.unit()) {
                if let Some(oq) = inst.object_of_pair(q) {
                    r.check("effect_hom_at_most_one", inst.hom(o, oq).len() <= 1, || {
                        format!("pair {pair} to pair {q}")
                    });
                }
            }
        }
    }
    Ok(r)
}

fn category_laws(inst: &ProcessInstance, r: &mut SuiteReport) {
    let n = inst.morphisms().len();
    let objects = inst.objects().len();
    let out: Vec<Vec<usize>> = (0..objects)
        .map(|o| (0..objects).flat_map(|c| inst.hom(o, c).iter().copied()).collect())
        .collect();
    for f in 0..n {
        let (a, b) = (inst.dom(f), inst.cod(f));
        let w = || format!("f = {f}");
        r.check("identity_law", inst.compose(inst.identity(b), f) == Some(f), w);
        r.check("identity_law", inst.compose(f, inst.identity(a)) == Some(f), w);
        for &g in &out[b] {
            let Some(gf) = inst.compose(g, f) else {
                r.check("composition_closed", false, || format!("f = {f}, g = {g}"));
                continue;
            };
            for &h in &out[inst.cod(g)] {
                let lhs = inst.compose(h, gf);
                let rhs = inst.compose(h, g).and_then(|hg| inst.compose(hg, f));
                r.check("associativity", lhs.is_some() && lhs == rhs, || {
                    format!("f = {f}, g = {g}, h = {h}")
                });
            }
        }
    }
    for (&(f, g), &fg) in inst.tensor_entries() {
        let w = || format!("f = {f}, g = {g}");
        r.check("tensor_symmetric", inst.tensor(g, f) == Some(fg), w);
        for &f2 in &out[inst.cod(f)] {
            for &g2 in &out[inst.cod(g)] {
                if inst.object_tensor(inst.cod(f2), inst.cod(g2)).is_none() {
                    continue;
                }
                let lhs = inst
                    .compose(f2, f)
                    .zip(inst.compose(g2, g))
                    .and_then(|(x, y)| inst.tensor(x, y));
                let rhs = inst.tensor(f2, g2).and_then(|t| inst.compose(t, fg));
                r.check("interchange", lhs.is_some() && lhs == rhs, || {
                    format!("f = {f}, f' = {f2}, g = {g}, g' = {g2}")
                });
            }
        }
    }
    for a in 0..objects {
        for b in 0..objects {
            if let Some(ab) = inst.object_tensor(a, b) {
                r.check(
                    "tensor_identity",
                    inst.tensor(inst.identity(a), inst.identity(b)) == Some(inst.identity(ab)),
                    || format!("objects {a}, {b}"),
                );
            }
        }
    }
}

fn formula_laws(pt: &ProcessTheory<'_>, inst: &ProcessInstance, r: &mut SuiteReport) -> Result<()> {
    let n = inst.morphisms().len();
    for f in 0..n {
        let pf = inst.morphisms()[f];
        let tf = inst.table(f);
        for (s, &img) in tf.iter().enumerate() {
            for &psi in pt.pair(pf.domain).purifications(s) {
                let rho = PairState {
                    pair: pf.domain,
                    state: s,
                    purification: psi,
                };
                let out = pt.apply_process(&pf, &rho)?;
                r.check("purification_independent", out.state == img, || {
                    format!("f = {f}, state {s}, purification {psi}")
                });
            }
        }
        for g in 0..n {
            if inst.dom(g) != inst.cod(f) {
                continue;
            }
            let pg = inst.morphisms()[g];
            let w = || format!("f = {f}, g = {g}");
            let composed: Vec<usize> = tf.iter().map(|&x| inst.table(g)[x]).collect();
            match pt.compose_process(&pg, &pf) {
                Ok(c) => r.check("composition_is_map_composition", pt.process_table(&c)? == composed, w),
                Err(_) => r.check("composition_is_map_composition", false, w),
            }
            let expected = inst.compose(g, f);
            for alt_f in inst.alternates(f) {
                let c = pt.compose_process(&pg, alt_f)?;
                r.check("substitution", inst.class_of(pt, &c)? == expected, w);
            }
            for alt_g in inst.alternates(g) {
                let c = pt.compose_process(alt_g, &pf)?;
                r.check("substitution", inst.class_of(pt, &c)? == expected, w);
            }
        }
    }
    for (&(f, g), &fg) in inst.tensor_entries() {
        for alt in inst.alternates(f) {
            let t = pt.tensor_processes(alt, &inst.morphisms()[g])?;
            r.check("substitution", inst.class_of(pt, &t)? == Some(fg), || {
                format!("f = {f}, g = {g}")
            });
        }
    }
    Ok(())
}

fn pure_fragment(pt: &ProcessTheory<'_>, r: &mut SuiteReport) -> Result<()> {
    let ns = pt.systems().len();
    for s in 0..ns {
        let obj = pt.pure_object(s);
        r.check(
            "pure_object_states",
            pt.pair_states(obj) == pt.system(s).pure_states(),
            || format!("system {s}"),
        );
    }
    let mut processes = Vec::new();
    for s in 0..ns {
        for p in pt.enumerate_pure_processes(s) {
            processes.push((p, pt.pure_table(&p)?));
        }
    }
    r.observe("pure_processes", processes.len());
    for (p, table) in &processes {
        let w = || format!("{p:?}");
        let e = pt.embed_pure(p)?;
        r.check("embedding_preserves_maps", &pt.process_table(&e)? == table, w);
        let mut seen = table.clone();
        seen.sort_unstable();
        seen.dedup();
        r.check("pure_injective", seen.len() == table.len(), w);
    }
    // state preparations send the unit state to the chosen state
    for s in 0..ns {
        for (k, prep) in pt.state_preparations(s).iter().enumerate() {
            r.check("state_preparation", pt.process_table(prep)? == vec![k], || {
                format!("system {s}, state {k}")
            });
        }
    }
    // functoriality of the embedding on composable pairs and tensors
    for (p, tp) in &processes {
        let cod = pt.pure_codomain(p);
        for (q, tq) in processes.iter().filter(|(q, _)| q.domain == cod) {
            let w = || format!("{p:?} then {q:?}");
            let c = pt.compose_pure(q, p)?;
            let expected: Vec<usize> = tp.iter().map(|&x| tq[x]).collect();
            r.check("pure_composition", pt.pure_table(&c)? == expected, w);
            let embedded = pt.compose_process(&pt.embed_pure(q)?, &pt.embed_pure(p)?)?;
            r.check("embedding_functorial", pt.process_table(&embedded)? == expected, w);
        }
    }
    for (p, tp) in &processes {
        for (q, tq) in &processes {
            let Ok(pq) = pt.tensor_pure_processes(p, q) else {
                continue;
            };
            let t = pt.pure_table(&pq)?;
            let (cp, cq) = (pt.pure_codomain(p), pt.pure_codomain(q));
            let nq = pt.system(q.domain).pure_states().len();
            for (i, &x) in tp.iter().enumerate() {
                for (j, &y) in tq.iter().enumerate() {
                    let input = pt.tensor_states(p.domain, q.domain, i, j)?;
                    let output = pt.tensor_states(cp, cq, x, y)?;
                    r.check("pure_tensor", t[input] == output, || {
                        format!("{p:?} with {q:?}, states {i}, {j} of {nq}")
                    });
                }
            }
        }
    }
    Ok(())
}

fn pair_state_laws(pt: &ProcessTheory<'_>, r: &mut SuiteReport) -> Result<()> {
    let theory = pt.theory();
    let g = theory.group();
    for (id, pair) in pt.pairs().iter().enumerate() {
        let h = pt.system(pair.system);
        let states = pair.states();
        let w = || format!("pair {id}");
        r.check(
            "pure_states_in_pair",
            h.pure_states().iter().all(|s| states.contains(s)),
            w,
        );
        for (k, st) in states.iter().enumerate() {
            r.check("pair_state_owner", st.owner() == h.transf(), w);
            for &psi in pair.purifications(k) {
                let point = pt.system(pair.total).pure_states()[psi].representative();
                r.check(
                    "purification_restricts",
                    &states::restrict(theory, h.transf(), point)? == st,
                    w,
                );
                for x in h.transf().members() {
                    let moved = states::restrict(theory, h.transf(), g.apply(x, point))?;
                    r.check(
                        "restriction_intertwines",
                        moved == states::act_local(theory, h.transf(), x, st)?,
                        || format!("pair {id}, state {k}, h = {x}"),
                    );
                }
            }
        }
    }
    Ok(())
}

/// The partially-monoidal axioms on the instance of a bounded process theory.
pub fn pmcat_suite(theory: &GlobalTheory, lat: &SbcLattice, bound: Bound) -> Result<SuiteReport> {
    let pt = ProcessTheory::new(theory, lat, bound)?;
    let inst = ProcessInstance::build(&pt)?;
    Ok(pmcat_report(&FiniteCategoryInstance::from_processes(&pt, &inst)))
}

pub fn pmcat_report(inst: &FiniteCategoryInstance) -> SuiteReport {
    let mut r = SuiteReport::new("pmcat");
    r.observe("objects", inst.objects().len());
    r.observe("morphisms", inst.morphisms().len());
    r.checks += 1;
    for v in pmcat::check_partially_monoidal(inst) {
        let witness = format!("{v:?}");
        r.check(v.name(), false, || witness);
    }
    r
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixedNode {
    pub node: usize,
    pub order: usize,
    pub product_states: usize,
    pub non_product_states: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixedScan {
    pub nodes: Vec<MixedNode>,
    /// Nodes with both product and non-product global states.
    pub mixed: Vec<usize>,
}

/// Counts product and non-product global states over every node.
pub fn scan_mixed(theory: &GlobalTheory, lat: &SbcLattice) -> Result<MixedScan> {
    let mut nodes = Vec::new();
    for (node, h) in lat.nodes().iter().enumerate() {
        let mut product = 0;
        for psi in 0..theory.degree() {
            if states::is_product_state(theory, h, psi)?.pure {
                product += 1;
            }
        }
        nodes.push(MixedNode {
            node,
            order: h.order(),
            product_states: product,
            non_product_states: theory.degree() - product,
        });
    }
    let mixed = nodes
        .iter()
        .filter(|n| n.product_states > 0 && n.non_product_states > 0)
        .map(|n| n.node)
        .collect();
    Ok(MixedScan { nodes, mixed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    fn setup(sides: &[usize]) -> (GlobalTheory, SbcLattice) {
        let t = models::symmetric_product(sides).unwrap().theory;
        let l = lattice::enumerate_self_bicommutant(&t).unwrap();
        (t, l)
    }

    #[test]
    fn s3_suites_pass() {
        let (t, l) = setup(&[3]);
        for r in [
            lattice_suite(&t, &l).unwrap(),
            transformation_suite(&t, &l, 1).unwrap(),
            states_suite(&t, &l).unwrap(),
            systems_suite(&t, &l).unwrap(),
            processes_suite(&t, &l, Bound::All).unwrap(),
            pmcat_suite(&t, &l, Bound::All).unwrap(),
        ] {
            assert!(r.passed(), "{}: {:?}", r.suite, r.violations);
            assert!(r.checks > 0);
        }
    }

    #[test]
    fn s3_observations() {
        let (t, l) = setup(&[3]);
        let r = lattice_suite(&t, &l).unwrap();
        assert!(r.observations["distributivity_failures"] > 0);
        let s = states_suite(&t, &l).unwrap();
        assert!(s.observations["criteria_disagreements"] > 0);
        let x = transformation_suite(&t, &l, 1).unwrap();
        assert!(x.observations["centre_larger_than_meet"] > 0);
    }

    #[test]
    fn grid_systems_and_processes_pass() {
        let (t, l) = setup(&[3, 3]);
        let r = systems_suite(&t, &l).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        let p = processes_suite(&t, &l, Bound::All).unwrap();
        assert!(p.passed(), "{:?}", p.violations);
    }

    #[test]
    fn mixed_scan_on_s3() {
        let (t, l) = setup(&[3]);
        let s = scan_mixed(&t, &l).unwrap();
        assert_eq!(s.nodes.len(), 6);
        // the transpositions mix the fixed point with the swapped pair
        assert_eq!(s.mixed.len(), 3);
    }
}
