use emergent_core::process::Bound;
use emergent_core::{lattice, models, suites, systems, GlobalTheory};

fn assert_passes(r: &suites::SuiteReport) {
    assert!(
        r.passed(),
        "{}: {} violations, e.g. {:?}",
        r.suite,
        r.violation_count,
        r.violations.first()
    );
    assert!(r.checks > 0, "{}: nothing checked", r.suite);
}

fn all_suites(t: &GlobalTheory) {
    let l = lattice::enumerate_self_bicommutant(t).unwrap();
    assert_passes(&suites::lattice_suite(t, &l).unwrap());
    assert_passes(&suites::transformation_suite(t, &l, 11).unwrap());
    assert_passes(&suites::states_suite(t, &l).unwrap());
    assert_passes(&suites::systems_suite(t, &l).unwrap());
    assert_passes(&suites::processes_suite(t, &l, Bound::All).unwrap());
    assert_passes(&suites::pmcat_suite(t, &l, Bound::All).unwrap());
}

#[test]
fn symmetric_groups() {
    all_suites(&models::symmetric(3).unwrap().theory);
    all_suites(&models::symmetric(4).unwrap().theory);
}

#[test]
fn diagonal_cosets() {
    all_suites(&models::diagonal_cosets(3).unwrap().theory);
}

#[test]
fn cube_systems_from_factors() {
    let m = models::symmetric_product(&[3, 3, 3]).unwrap();
    let t = &m.theory;
    let seeds: Vec<_> = (0..3)
        .map(|i| systems::make_system(t, &m.factor(i), 0).unwrap())
        .collect();
    let r = suites::systems_suite_from(t, &seeds).unwrap();
    assert_passes(&r);
    // I, three factors, three pairs and the whole cube
    assert_eq!(r.observations["systems"], 8);
}

#[test]
fn cube_processes_bounded() {
    let t = models::symmetric_product(&[3, 3, 3]).unwrap().theory;
    let l = lattice::enumerate_self_bicommutant(&t).unwrap();
    let r = suites::processes_suite(&t, &l, Bound::ObjectCap(20)).unwrap();
    assert_passes(&r);
    assert_eq!(r.observations["objects"], 19);
    assert_passes(&suites::pmcat_suite(&t, &l, Bound::ObjectCap(20)).unwrap());
}

/// Every pair of the cube; slow without optimisations.
#[test]
#[ignore]
fn cube_processes_unbounded() {
    let t = models::symmetric_product(&[3, 3, 3]).unwrap().theory;
    let l = lattice::enumerate_self_bicommutant(&t).unwrap();
    assert_passes(&suites::processes_suite(&t, &l, Bound::All).unwrap());
}
