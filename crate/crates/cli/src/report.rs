//! Serialisable views of the core structures.

use std::fmt::Write;

use emergent_core::quantum::{self, Classification, PairClaims, SectorDecomposition};
use emergent_core::suites::{SuiteReport, Violation};
use emergent_core::{lattice, systems, Error, GlobalTheory, SbcLattice, Subgroup};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct LatticeReport {
    pub degree: usize,
    pub order: usize,
    pub bottom: usize,
    pub top: usize,
    pub nodes: Vec<NodeReport>,
    /// Covering pairs `[lower, upper]`.
    pub hasse: Vec<(usize, usize)>,
    pub distributive: bool,
    pub named: Vec<NamedReport>,
}

#[derive(Debug, Serialize)]
pub struct NodeReport {
    pub id: usize,
    pub order: usize,
    pub commutant: usize,
    /// Node of `H ∧ H′`, the centre.
    pub centre: usize,
    pub self_commutant: bool,
    pub orthocomplemented: bool,
    /// Indices into the lexicographically sorted group elements.
    pub elements: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct NamedReport {
    pub name: String,
    pub order: usize,
    pub self_bicommutant: bool,
    /// Node of the bicommutant, the least lattice element containing it.
    pub bicommutant: usize,
}

pub fn lattice_report(
    t: &GlobalTheory,
    lat: &SbcLattice,
    named: &[(String, Subgroup)],
) -> Result<LatticeReport, Error> {
    let nodes = lat
        .nodes()
        .iter()
        .enumerate()
        .map(|(id, h)| NodeReport {
            id,
            order: h.order(),
            commutant: lat.commutant_id(id),
            centre: lat.meet_id(id, lat.commutant_id(id)),
            self_commutant: lat.commutant_id(id) == id,
            orthocomplemented: lattice::is_orthocomplemented(t, h),
            elements: h.member_vec(),
        })
        .collect();
    let mut named_out = Vec::new();
    for (name, h) in named {
        let cc = lattice::bicommutant(t, h)?;
        named_out.push(NamedReport {
            name: name.clone(),
            order: h.order(),
            self_bicommutant: &cc == h,
            bicommutant: lat.id_of(&cc).ok_or(Error::SubgroupNotInTheory)?,
        });
    }
    Ok(LatticeReport {
        degree: t.degree(),
        order: t.order(),
        bottom: lat.bottom(),
        top: lat.top(),
        nodes,
        hasse: lat.hasse_edges().to_vec(),
        distributive: lat.is_distributive(),
        named: named_out,
    })
}

/// Hasse diagram drawn bottom-up, with each commutant pair joined by a dashed
/// edge and self-commutant nodes ringed.
pub fn lattice_dot(lat: &SbcLattice) -> String {
    let mut out = String::from("graph lattice {\n  rankdir=BT;\n  node [shape=circle];\n");
    for (id, h) in lat.nodes().iter().enumerate() {
        let ring = if lat.commutant_id(id) == id {
            ", peripheries=2"
        } else {
            ""
        };
        let _ = writeln!(out, "  n{id} [label=\"{}\"{ring}];", h.order());
    }
    for &(lo, hi) in lat.hasse_edges() {
        let _ = writeln!(out, "  n{lo} -- n{hi};");
    }
    for id in 0..lat.len() {
        let c = lat.commutant_id(id);
        if id < c {
            let _ = writeln!(out, "  n{id} -- n{c} [style=dashed, constraint=false];");
        }
    }
    out.push_str("}\n");
    out
}

/// Named subgroups of the input are claimed to be local transformation
/// groups, so each must equal its bicommutant.
pub fn named_suite(t: &GlobalTheory, named: &[(String, Subgroup)]) -> Result<SuiteReport, Error> {
    let mut r = SuiteReport {
        suite: "named".to_string(),
        ..Default::default()
    };
    for (name, h) in named {
        let cc = lattice::bicommutant(t, h)?;
        r.checks += 1;
        if &cc != h {
            r.violation_count += 1;
            r.violations.push(Violation {
                property: "named_self_bicommutant".to_string(),
                witness: format!("{name}: |H| = {}, |H''| = {}", h.order(), cc.order()),
            });
        }
    }
    Ok(r)
}

#[derive(Debug, Serialize)]
pub struct SystemsReport {
    pub systems: Vec<SystemReport>,
    /// `compatibility[a][b]` is present when the systems are compatible.
    pub compatibility: Vec<Vec<Option<Compatibility>>>,
}

#[derive(Debug, Serialize)]
pub struct SystemReport {
    pub id: usize,
    pub node: usize,
    pub order: usize,
    pub unital: bool,
    pub states: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize)]
pub struct Compatibility {
    /// Least global state restricting into both systems as a product pair.
    pub witness: usize,
    pub tensor: usize,
}

pub fn systems_report(t: &GlobalTheory, lat: &SbcLattice) -> Result<SystemsReport, Error> {
    let all = systems::enumerate_systems(t, lat);
    let mut out = Vec::with_capacity(all.len());
    for (id, s) in all.iter().enumerate() {
        out.push(SystemReport {
            id,
            node: lat.id_of(s.transf()).ok_or(Error::SubgroupNotInTheory)?,
            order: s.transf().order(),
            unital: systems::is_unital(t, s),
            states: s.pure_states().iter().map(|l| l.points().to_vec()).collect(),
        });
    }
    let mut compatibility = Vec::with_capacity(all.len());
    for a in &all {
        let mut row = Vec::with_capacity(all.len());
        for b in &all {
            let entry = match systems::are_compatible(t, a, b)? {
                Some(witness) => {
                    let ab = systems::tensor_systems(t, a, b)?;
                    let tensor = all.iter().position(|s| s == &ab).ok_or(Error::IncompatibleSystems)?;
                    Some(Compatibility { witness, tensor })
                }
                None => None,
            };
            row.push(entry);
        }
        compatibility.push(row);
    }
    Ok(SystemsReport {
        systems: out,
        compatibility,
    })
}

#[derive(Debug, Serialize)]
pub struct QuantumReport {
    pub decomposition: String,
    pub dimension: usize,
    pub commutant: String,
    pub classification: Classification,
    pub centre_rank: usize,
    pub system_count: usize,
    pub group_dimension: usize,
    /// Absent outside the purely additive and purely multiplicative cases.
    pub claims: Option<PairClaims>,
}

pub fn quantum_report(d: &SectorDecomposition) -> Result<QuantumReport, Error> {
    let claims = match quantum::check_special_pair_claims(d) {
        Ok(c) => Some(c),
        Err(Error::GeneralCaseUnsupported) => None,
        Err(e) => return Err(e),
    };
    Ok(QuantumReport {
        decomposition: d.to_string(),
        dimension: d.dimension(),
        commutant: quantum::commutant_decomp(d).to_string(),
        classification: quantum::classify(d),
        centre_rank: quantum::centre_rank(d),
        system_count: quantum::system_count(d),
        group_dimension: quantum::group_dimension(d),
        claims,
    })
}
