//! Acceptance criteria 1 to 12, one line per criterion.
//!
//! Runs without the libtest harness so the report is always printed; exits
//! non-zero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use common::Set;
use emergent_core::pmcat::{self, FiniteCategoryInstance, Violation};
use emergent_core::process::{Bound, ProcessInstance, ProcessTheory};
use emergent_core::quantum::{self, SectorDecomposition};
use emergent_core::suites::{self, SuiteReport};
use emergent_core::{lattice, models, states, systems, GlobalTheory, Result, SbcLattice, System};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Object cap giving the bounded process instances.
const BOUNDED_OBJECTS: usize = 9;

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

/// Collects failures while a criterion runs.
#[derive(Default)]
struct Tally {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn suite(&mut self, fixture: &str, r: &SuiteReport) {
        self.require(r.checks > 0, || format!("{fixture}: {} checked nothing", r.suite));
        self.require(r.passed(), || {
            let first = r.violations.first().map(|v| format!("{} ({})", v.property, v.witness));
            format!(
                "{fixture}: {} has {} violations, first {:?}",
                r.suite, r.violation_count, first
            )
        });
        self.notes.push(format!("{fixture} {} {} checks", r.suite, r.checks));
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(self) -> Outcome {
        if self.failures.is_empty() {
            Outcome::new(true, self.notes.join("; "))
        } else {
            Outcome::new(false, self.failures.join("; "))
        }
    }
}

fn t1() -> GlobalTheory {
    models::symmetric(3).unwrap().theory
}

fn t2() -> models::Model {
    models::symmetric_product(&[3, 3]).unwrap()
}

fn t3() -> models::Model {
    models::diagonal_cosets(3).unwrap()
}

fn t4() -> models::Model {
    models::symmetric_product(&[3, 3, 3]).unwrap()
}

fn t5() -> GlobalTheory {
    models::symmetric(4).unwrap().theory
}

fn lat(t: &GlobalTheory) -> SbcLattice {
    lattice::enumerate_self_bicommutant(t).unwrap()
}

fn criterion_1() -> Result<Outcome> {
    let mut tally = Tally::default();
    let limit = Duration::from_secs(10);
    for (name, t, want) in [("T1", t1(), 6), ("T2", t2().theory, 36)] {
        let start = Instant::now();
        let l = lat(&t);
        let ours: BTreeSet<Set> = l.nodes().iter().map(|h| common::to_set(&t, h)).collect();
        let group = common::elements(&t);
        let oracle: BTreeSet<Set> = common::self_bicommutant(t.degree(), &group).into_iter().collect();
        let took = start.elapsed();
        tally.require(l.len() == want, || {
            format!("{name}: {} nodes, expected {want}", l.len())
        });
        tally.require(ours == oracle, || {
            format!("{name}: differs from the brute-force oracle")
        });
        tally.require(ours.len() == l.len(), || format!("{name}: duplicate nodes"));
        tally.require(took < limit, || format!("{name}: {took:.2?} over {limit:?}"));
        tally.note(format!("{name} {} nodes = oracle, {took:.2?}", l.len()));
    }
    Ok(tally.finish())
}

/// Lattice laws recomputed on plain permutation sets, with the library's
/// node table checked against them.
fn oracle_lattice_laws(name: &str, t: &GlobalTheory, l: &SbcLattice, tally: &mut Tally) {
    let group = common::elements(t);
    let sets: Vec<Set> = l.nodes().iter().map(|h| common::to_set(t, h)).collect();
    let id: BTreeMap<&Set, usize> = sets.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let comm = |s: &Set| common::centralizer(&group, s);
    let commutants: Vec<Set> = sets.iter().map(comm).collect();
    let bottom = common::closure(t.degree(), &[]);
    let mut failures = 0usize;
    let mut checks = 0usize;
    let mut test = |ok: bool| {
        checks += 1;
        if !ok {
            failures += 1;
        }
    };
    for (a, h) in sets.iter().enumerate() {
        test(comm(&commutants[a]) == *h);
        test(comm(&comm(&commutants[a])) == commutants[a]);
        test(id.get(&commutants[a]) == Some(&l.commutant_id(a)));
        test(bottom.is_subset(h) && h.is_subset(&group));
    }
    test(comm(&bottom) == group && comm(&group) == bottom);
    for (a, h) in sets.iter().enumerate() {
        for (b, k) in sets.iter().enumerate() {
            let meet: Set = h.intersection(k).cloned().collect();
            let union: Set = h.union(k).cloned().collect();
            let join = comm(&comm(&union));
            test(id.get(&meet) == Some(&l.meet_id(a, b)));
            test(id.get(&join) == Some(&l.join_id(a, b)));
            let (hc, kc) = (&commutants[a], &commutants[b]);
            // (H ∨ K)′ = H′ ∧ K′ and (H ∧ K)′ = H′ ∨ K′
            test(comm(&join) == hc.intersection(kc).cloned().collect::<Set>());
            let cunion: Set = hc.union(kc).cloned().collect();
            test(comm(&meet) == comm(&comm(&cunion)));
            // H ∧ (H ∨ K) = H and H ∨ (H ∧ K) = H
            test(h.intersection(&join).cloned().collect::<Set>() == *h);
            let hm: Set = h.union(&meet).cloned().collect();
            test(comm(&comm(&hm)) == *h);
        }
    }
    tally.require(failures == 0, || format!("{name}: {failures} oracle law failures"));
    tally.note(format!("{name} oracle {checks} checks"));
}

fn criterion_2() -> Result<Outcome> {
    let mut tally = Tally::default();
    let start = Instant::now();
    for (name, t) in [("T1", t1()), ("T2", t2().theory), ("T5", t5())] {
        let l = lat(&t);
        tally.suite(name, &suites::lattice_suite(&t, &l)?);
        oracle_lattice_laws(name, &t, &l, &mut tally);
    }
    let took = start.elapsed();
    let limit = Duration::from_secs(30);
    tally.require(took < limit, || format!("{took:.2?} over {limit:?}"));
    Ok(tally.finish())
}

fn criterion_3() -> Result<Outcome> {
    let mut tally = Tally::default();
    for (name, t) in [("T1", t1()), ("T2", t2().theory)] {
        let l = lat(&t);
        let r = suites::transformation_suite(&t, &l, 0)?;
        tally.suite(name, &r);
        let sampled = r.observations.get("sampled_pairs").copied().unwrap_or(0);
        tally.note(format!(
            "{name} {} orthogonal pairs, {sampled} sampled at {} quadruples",
            r.observations.get("orthogonal_pairs").copied().unwrap_or(0),
            suites::SAMPLED_QUADRUPLES
        ));
    }
    Ok(tally.finish())
}

fn criterion_4() -> Result<Outcome> {
    let mut tally = Tally::default();
    let start = Instant::now();
    for (name, t) in [("T1", t1()), ("T2", t2().theory), ("T3", t3().theory)] {
        let l = lat(&t);
        tally.suite(name, &suites::states_suite(&t, &l)?);
        // purity is orbit-constant and agrees with the orbit-count oracle
        let group = common::elements(&t);
        let mut bad = 0;
        for h in l.nodes() {
            let s = common::to_set(&t, h);
            let hc = common::centralizer(&group, &s);
            for psi in 0..t.degree() {
                let pure = states::is_product_state(&t, h, psi)?.pure;
                if pure != common::is_product(&group, &s, psi) {
                    bad += 1;
                }
                for phi in common::orbit(&hc, psi) {
                    if states::is_product_state(&t, h, phi)?.pure != pure {
                        bad += 1;
                    }
                }
            }
        }
        tally.require(bad == 0, || {
            format!("{name}: {bad} purity disagreements with the oracle")
        });
    }
    let took = start.elapsed();
    let limit = Duration::from_secs(60);
    tally.require(took < limit, || format!("{took:.2?} over {limit:?}"));
    Ok(tally.finish())
}

fn criterion_5() -> Result<Outcome> {
    let mut tally = Tally::default();
    for (name, m, want) in [("T2", t2(), 9), ("T3", t3(), 0)] {
        let t = &m.theory;
        let h = m.factor(0);
        let group = common::elements(t);
        let s = common::to_set(t, &h);
        let mut ours = 0;
        let mut oracle = 0;
        for psi in 0..t.degree() {
            ours += usize::from(states::is_product_state(t, &h, psi)?.pure);
            oracle += usize::from(common::is_product(&group, &s, psi));
        }
        tally.require(ours == want && oracle == want, || {
            format!("{name}: {ours} product, oracle {oracle}, expected {want}")
        });
        tally.note(format!("{name} {ours}/{} product", t.degree()));
    }
    let m = t3();
    let none = systems::enumerate_systems(&m.theory, &lat(&m.theory))
        .iter()
        .all(|s| s.transf() != &m.factor(0));
    tally.require(none, || "T3: a system over S₃×1 exists".into());
    Ok(tally.finish())
}

/// Factor compatibility and exactly one tensor candidate for every pair of
/// pure states, for every pair of systems built from the factors.
fn factor_witnesses(name: &str, m: &models::Model, tally: &mut Tally) -> Result<()> {
    let t = &m.theory;
    let k = m.factor_generators.len();
    let factors: Vec<System> = (0..k)
        .map(|i| systems::make_system(t, &m.factor(i), 0))
        .collect::<Result<_>>()?;
    let mut pairs = 0;
    let mut bad = 0;
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let (a, b) = (&factors[i], &factors[j]);
            let Some(_) = systems::are_compatible(t, a, b)? else {
                tally.require(false, || format!("{name}: factors {i} and {j} are not compatible"));
                continue;
            };
            for rho in a.pure_states() {
                for sigma in b.pure_states() {
                    pairs += 1;
                    let c = systems::tensor_candidates(t, a, b, rho, sigma)?;
                    if c.len() != 1 {
                        bad += 1;
                    }
                }
            }
        }
    }
    tally.require(bad == 0, || {
        format!("{name}: {bad} state pairs without a unique candidate")
    });
    tally.note(format!("{name} {pairs} factor state pairs, 1 candidate each"));
    Ok(())
}

fn criterion_6() -> Result<Outcome> {
    let mut tally = Tally::default();
    for (name, m) in [("T2", t2()), ("T4", t4())] {
        let start = Instant::now();
        let l = lat(&m.theory);
        let r = suites::systems_suite(&m.theory, &l)?;
        tally.suite(name, &r);
        tally.require(
            r.observations.get("associativity_triples").copied().unwrap_or(0) > 0,
            || format!("{name}: no associativity triples"),
        );
        factor_witnesses(name, &m, &mut tally)?;
        let took = start.elapsed();
        let limit = Duration::from_secs(120);
        tally.require(took < limit, || format!("{name}: {took:.2?} over {limit:?}"));
        tally.note(format!("{name} {took:.2?}"));
    }
    Ok(tally.finish())
}

fn criterion_7() -> Result<Outcome> {
    let mut tally = Tally::default();
    let t = t2().theory;
    let r = suites::processes_suite(&t, &lat(&t), Bound::ObjectCap(BOUNDED_OBJECTS))?;
    tally.suite("T2", &r);
    tally.note(format!(
        "{} objects, {} morphisms",
        r.observations.get("objects").copied().unwrap_or(0),
        r.observations.get("morphisms").copied().unwrap_or(0)
    ));
    Ok(tally.finish())
}

fn criterion_8() -> Result<Outcome> {
    let mut tally = Tally::default();
    for (name, t) in [("T1", t1()), ("T2", t2().theory)] {
        let pt = ProcessTheory::new(&t, &lat(&t), Bound::ObjectCap(BOUNDED_OBJECTS))?;
        let inst = ProcessInstance::build(&pt)?;
        let g = pt.verify_generation(&inst)?;
        tally.require(g.pure_equal, || {
            format!(
                "{name}: pure fragment {} but generated {}",
                g.pure_fragment, g.generated_pure
            )
        });
        tally.require(g.full_equal, || {
            format!(
                "{name}: {} morphisms but generated {}",
                g.all_morphisms, g.generated_full
            )
        });
        tally.note(format!(
            "{name} pure {}/{}, full {}/{}",
            g.generated_pure, g.pure_fragment, g.generated_full, g.all_morphisms
        ));
    }
    Ok(tally.finish())
}

fn criterion_9() -> Result<Outcome> {
    let mut tally = Tally::default();
    let t = t2().theory;
    let pt = ProcessTheory::new(&t, &lat(&t), Bound::ObjectCap(BOUNDED_OBJECTS))?;
    for pair in 0..pt.pairs().len() {
        let effects = pt.enumerate_generalised_effects(pair)?;
        tally.require(effects.len() == 1, || format!("pair {pair}: {} effects", effects.len()));
        if let [e] = effects.as_slice() {
            let same = pt.process_table(e)? == pt.process_table(&pt.discard(pair))?;
            tally.require(same, || format!("pair {pair}: the effect is not discarding"));
        }
    }
    tally.note(format!("{} pair objects, 1 effect each", pt.pairs().len()));
    Ok(tally.finish())
}

/// Objects with identities, composition and tensor with the unit object 0
/// strict. Morphisms added later must be wired in by the caller.
fn with_objects(names: &[&str]) -> (FiniteCategoryInstance, Vec<usize>) {
    let mut c = FiniteCategoryInstance::new();
    let o: Vec<usize> = names.iter().map(|n| c.add_object(*n)).collect();
    let ids: Vec<usize> = o.iter().map(|&x| c.add_identity(x)).collect();
    for &x in &o {
        c.set_compose(ids[x], ids[x], ids[x]);
        c.set_object_tensor(0, x, x);
        c.set_object_tensor(x, 0, x);
        c.set_morphism_tensor(ids[0], ids[x], ids[x]);
        c.set_morphism_tensor(ids[x], ids[0], ids[x]);
    }
    c.set_unit(0);
    (c, ids)
}

/// Identity laws and unit tensors for a non-identity morphism.
fn wire(c: &mut FiniteCategoryInstance, ids: &[usize], m: usize) {
    let (d, k) = (c.morphisms()[m].dom, c.morphisms()[m].cod);
    c.set_compose(ids[k], m, m);
    c.set_compose(m, ids[d], m);
    c.set_morphism_tensor(ids[0], m, m);
    c.set_morphism_tensor(m, ids[0], m);
}

/// `ℤ₂` as a total strict monoidal category on objects `{0, 1}`, with the
/// `(id₁, id₁)` morphism tensor deleted.
fn fullness_corruption() -> FiniteCategoryInstance {
    let (mut c, ids) = with_objects(&["0", "1"]);
    c.set_object_tensor(1, 1, 0);
    c.set_morphism_tensor(ids[1], ids[1], ids[0]);
    c.remove_morphism_tensor(ids[1], ids[1]);
    c
}

/// `1 ≅ 1′` with `1 ⊗ 1` defined and `1 ⊗ 1′` not.
fn repleteness_corruption() -> FiniteCategoryInstance {
    let (mut c, ids) = with_objects(&["0", "1", "1'"]);
    let i = c.add_morphism(1, 2, "i");
    let j = c.add_morphism(2, 1, "j");
    wire(&mut c, &ids, i);
    wire(&mut c, &ids, j);
    c.set_compose(j, i, ids[1]);
    c.set_compose(i, j, ids[2]);
    c.set_object_tensor(1, 1, 1);
    c.set_morphism_tensor(ids[1], ids[1], ids[1]);
    c
}

/// `(a ⊗ b) ⊗ c` defined, in both orders at each step, with `b ⊗ c` and
/// `a ⊗ c` undefined.
fn associativity_corruption() -> FiniteCategoryInstance {
    let (mut c, ids) = with_objects(&["0", "a", "b", "c", "ab", "abc"]);
    for (x, y, xy) in [(1, 2, 4), (4, 3, 5)] {
        for (p, q) in [(x, y), (y, x)] {
            c.set_object_tensor(p, q, xy);
            c.set_morphism_tensor(ids[p], ids[q], ids[xy]);
        }
    }
    c
}

type Corruption = (&'static str, FiniteCategoryInstance, fn(&Violation) -> bool);

fn criterion_10() -> Result<Outcome> {
    let mut tally = Tally::default();
    for (name, t) in [("T1", t1()), ("T2", t2().theory)] {
        let inst = pmcat::extract_instance(&t, BOUNDED_OBJECTS)?;
        let v = pmcat::check_partially_monoidal(&inst);
        tally.require(v.is_empty(), || {
            format!("{name}: {} violations, first {:?}", v.len(), v.first())
        });
        tally.note(format!("{name} {} objects clean", inst.objects().len()));
    }
    let crafted: [Corruption; 3] = [
        ("Fullness", fullness_corruption(), |v| {
            matches!(v, Violation::Fullness { .. })
        }),
        ("Repleteness", repleteness_corruption(), |v| {
            matches!(v, Violation::Repleteness { .. })
        }),
        ("AssociativityDefinedness", associativity_corruption(), |v| {
            matches!(v, Violation::AssociativityDefinedness { .. })
        }),
    ];
    for (name, inst, is_kind) in crafted {
        let v = pmcat::check_partially_monoidal(&inst);
        let ok = v.len() == 1 && is_kind(&v[0]) && v[0].name() == name;
        tally.require(ok, || format!("{name} corruption gave {v:?}"));
        if ok {
            tally.note(format!("{name} corruption gives exactly [{}]", v[0].name()));
        }
    }
    Ok(tally.finish())
}

fn criterion_11() -> Result<Outcome> {
    let mut tally = Tally::default();
    let start = Instant::now();
    let square = quantum::check_special_pair_claims(&"2x2".parse()?)?;
    tally.require(square.orthocomplementary && square.join_full, || {
        format!("2x2: {square:?}")
    });
    let additive = quantum::check_special_pair_claims(&"2x1+1x3".parse()?)?;
    tally.require(additive.orthogonal && !additive.orthocomplementary, || {
        format!("2x1+1x3: {additive:?}")
    });

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = 0;
    for _ in 0..100 {
        let s = rng.gen_range(1..=5);
        let sectors: Vec<String> = (0..s)
            .map(|_| format!("{}x{}", rng.gen_range(1..=4), rng.gen_range(1..=4)))
            .collect();
        let text = sectors.join("+");
        let d: SectorDecomposition = match text.parse() {
            Ok(d) => d,
            // a single 1x1 sector has dimension 1 and is rejected
            Err(_) if s == 1 && text == "1x1" => continue,
            Err(e) => return Err(e),
        };
        if quantum::centre_rank(&d) != s - 1 {
            bad += 1;
        }
        let back = quantum::commutant_decomp(&quantum::commutant_decomp(&d));
        if back != d {
            bad += 1;
        }
        if quantum::commutant_decomp(&d).dimension() != d.dimension() {
            bad += 1;
        }
    }
    tally.require(bad == 0, || format!("{bad} random decomposition failures"));
    let took = start.elapsed();
    let limit = Duration::from_secs(1);
    tally.require(took < limit, || format!("{took:.2?} over {limit:?}"));
    tally.note(format!("claims hold, 100 random decompositions, {took:.2?}"));
    Ok(tally.finish())
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn criterion_12() -> Result<Outcome> {
    let mut tally = Tally::default();
    let cases: Vec<(Vec<String>, i32)> = vec![
        (
            vec![
                "lattice".into(),
                "--input".into(),
                fixture("s3.json"),
                "--format".into(),
                "dot".into(),
            ],
            0,
        ),
        (vec!["lattice".into(), "--input".into(), fixture("s4.json")], 0),
        (
            vec![
                "check".into(),
                "--suite".into(),
                "all".into(),
                "--input".into(),
                fixture("s3x3.json"),
            ],
            0,
        ),
        (vec!["systems".into(), "--input".into(), fixture("s3x3_diag.json")], 0),
        (vec!["systems".into(), "--input".into(), fixture("s3x3x3.json")], 0),
        (vec!["scan-mixed".into(), "--input".into(), fixture("s3.json")], 0),
        (vec!["quantum".into(), "--decomposition".into(), "2x1+1x3".into()], 0),
        (
            vec![
                "check".into(),
                "--suite".into(),
                "lattice".into(),
                "--input".into(),
                fixture("s4_named_swap.json"),
            ],
            1,
        ),
        (vec!["lattice".into(), "--input".into(), fixture("malformed.json")], 2),
        (
            vec!["lattice".into(), "--input".into(), fixture("not_a_permutation.json")],
            2,
        ),
        (
            vec!["systems".into(), "--input".into(), fixture("unknown_field.json")],
            2,
        ),
        (vec!["lattice".into(), "--input".into(), fixture("cyclic3.json")], 2),
        (
            vec![
                "check".into(),
                "--suite".into(),
                "states".into(),
                "--input".into(),
                fixture("intransitive.json"),
            ],
            2,
        ),
        (vec!["quantum".into(), "--decomposition".into(), "2x".into()], 2),
        (vec!["lattice".into(), "--input".into(), fixture("s6_capped.json")], 3),
    ];
    let files: BTreeSet<&String> = cases
        .iter()
        .flat_map(|(a, _)| a.iter().filter(|s| s.ends_with(".json")))
        .collect();
    for (args, want) in &cases {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_emergent"))
                .args(args)
                .output()
                .expect("binary runs")
        };
        let (a, b) = (run(), run());
        let code = a.status.code();
        tally.require(code == Some(*want), || {
            format!("{args:?}: exit {code:?}, expected {want}")
        });
        tally.require(a.stdout == b.stdout && a.status.code() == b.status.code(), || {
            format!("{args:?}: output differs between runs")
        });
        if *want <= 1 {
            tally.require(!a.stdout.is_empty(), || format!("{args:?}: no output"));
        }
    }
    tally.require(files.len() >= 6, || format!("only {} fixture files", files.len()));
    tally.note(format!(
        "{} invocations over {} fixture files, each run twice",
        cases.len(),
        files.len()
    ));
    Ok(tally.finish())
}

/// Title, runtime budget and check.
type Criterion = (&'static str, &'static str, fn() -> Result<Outcome>);

fn main() {
    let criteria: [Criterion; 12] = [
        ("lattice enumeration matches the oracle", "10s each", criterion_1),
        ("lattice laws", "30s", criterion_2),
        ("exchange law and swap", "none", criterion_3),
        ("local-state laws", "60s", criterion_4),
        ("purity landscape", "none", criterion_5),
        ("tensor of systems", "120s", criterion_6),
        ("category laws", "none", criterion_7),
        ("generated closures", "none", criterion_8),
        ("unique generalised effect", "none", criterion_9),
        ("partially monoidal checker", "none", criterion_10),
        ("sector-decomposition calculus", "1s", criterion_11),
        ("command-line contract", "none", criterion_12),
    ];
    let mut failed = 0;
    for (i, (title, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        let took = start.elapsed();
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {verdict} [{took:.2?}, budget {budget}] {title}: tolerance exact, {}",
            i + 1,
            outcome.detail
        );
        if !outcome.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} of 12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
