//! Brute-force oracles working directly on permutations, sharing nothing
//! with the library beyond the `Permutation` type.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use emergent_core::{GlobalTheory, Permutation, Subgroup};

pub type Set = BTreeSet<Permutation>;

/// The group generated by `gens`, by repeated right multiplication.
pub fn closure(degree: usize, gens: &[Permutation]) -> Set {
    let mut set = Set::new();
    let mut queue = VecDeque::from([Permutation::identity(degree)]);
    while let Some(x) = queue.pop_front() {
        if !set.insert(x.clone()) {
            continue;
        }
        for g in gens {
            let y = x.compose(g);
            if !set.contains(&y) {
                queue.push_back(y);
            }
        }
    }
    set
}

/// Every subgroup, found by adjoining one element at a time starting from
/// the trivial group.
pub fn all_subgroups(degree: usize, group: &Set) -> Vec<Set> {
    let mut found: BTreeSet<Set> = BTreeSet::new();
    let trivial = closure(degree, &[]);
    let mut queue = VecDeque::from([(trivial, Vec::<Permutation>::new())]);
    while let Some((s, gens)) = queue.pop_front() {
        if !found.insert(s.clone()) {
            continue;
        }
        for g in group {
            if s.contains(g) {
                continue;
            }
            let mut more = gens.clone();
            more.push(g.clone());
            let t = closure(degree, &more);
            if !found.contains(&t) {
                queue.push_back((t, more));
            }
        }
    }
    found.into_iter().collect()
}

pub fn centralizer(group: &Set, subset: &Set) -> Set {
    group
        .iter()
        .filter(|x| subset.iter().all(|y| x.compose(y) == y.compose(x)))
        .cloned()
        .collect()
}

/// Subgroups equal to their own bicommutant.
pub fn self_bicommutant(degree: usize, group: &Set) -> Vec<Set> {
    all_subgroups(degree, group)
        .into_iter()
        .filter(|h| &centralizer(group, &centralizer(group, h)) == h)
        .collect()
}

pub fn orbit(set: &Set, point: usize) -> BTreeSet<usize> {
    set.iter().map(|x| x.apply(point)).collect()
}

pub fn product(a: &Set, b: &Set) -> Set {
    let mut out = Set::new();
    for x in a {
        for y in b {
            out.insert(x.compose(y));
        }
    }
    out
}

/// `ψ` is product over `H` iff `|Hψ| · |H′ψ| = |(H·H′)ψ|`.
pub fn is_product(group: &Set, h: &Set, psi: usize) -> bool {
    let hc = centralizer(group, h);
    orbit(h, psi).len() * orbit(&hc, psi).len() == orbit(&product(h, &hc), psi).len()
}

/// Every element of the theory as a permutation.
pub fn elements(theory: &GlobalTheory) -> Set {
    theory.group().elements().iter().cloned().collect()
}

pub fn to_set(theory: &GlobalTheory, s: &Subgroup) -> Set {
    s.members().map(|i| theory.group().element(i).clone()).collect()
}

pub fn to_subgroup(theory: &GlobalTheory, s: &Set) -> Subgroup {
    let g = theory.group();
    g.subgroup_from_members(s.iter().map(|p| g.index_of(p).expect("element of the group")))
        .expect("oracle sets are subgroups")
}

pub fn perm(images: &[usize]) -> Permutation {
    Permutation::new(images.to_vec()).expect("valid permutation")
}
