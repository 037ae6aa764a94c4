//! Sector decompositions `⊕ⱼ Aⱼ ⊗ Bⱼ` of `ℂⁿ` describing self-bicommutant
//! subgroups of `U(n)/U(1)`: the group acts as `U(Aⱼ)` on each sector.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SectorDecomposition {
    sectors: Vec<(usize, usize)>,
}

impl SectorDecomposition {
    /// Validates dimensions and sorts sectors canonically.
    pub fn new(mut sectors: Vec<(usize, usize)>) -> Result<Self> {
        if sectors.is_empty() {
            return Err(Error::Parse("no sectors".into()));
        }
        if sectors.iter().any(|&(a, b)| a == 0 || b == 0) {
            return Err(Error::ZeroDimension);
        }
        let n: usize = sectors.iter().map(|&(a, b)| a * b).sum();
        if n < 2 {
            return Err(Error::DegenerateDimension(n));
        }
        sectors.sort_by(|x, y| y.cmp(x));
        Ok(SectorDecomposition { sectors })
    }

    pub fn sectors(&self) -> &[(usize, usize)] {
        &self.sectors
    }

    /// `n = Σ aⱼ bⱼ`.
    pub fn dimension(&self) -> usize {
        self.sectors.iter().map(|&(a, b)| a * b).sum()
    }

    fn full(n: usize) -> Self {
        SectorDecomposition { sectors: vec![(n, 1)] }
    }
}

impl fmt::Display for SectorDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.sectors.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{a}x{b}")?;
        }
        Ok(())
    }
}

impl FromStr for SectorDecomposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_decomposition(s)
    }
}

fn parse_dim(tok: &str, text: &str) -> Result<usize> {
    if tok.is_empty() || !tok.bytes().all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse(format!(
            "expected a positive integer in {text:?}, found {tok:?}"
        )));
    }
    tok.parse()
        .map_err(|_| Error::Parse(format!("dimension {tok:?} is too large")))
}

/// Parses `a x b (+ a x b)*`, e.g. `2x1+1x3`.
pub fn parse_decomposition(text: &str) -> Result<SectorDecomposition> {
    let text = text.trim();
    let mut sectors = Vec::new();
    for term in text.split('+') {
        let (a, b) = term
            .split_once('x')
            .ok_or_else(|| Error::Parse(format!("sector {term:?} is not of the form axb")))?;
        sectors.push((parse_dim(a, text)?, parse_dim(b, text)?));
    }
    SectorDecomposition::new(sectors)
}

/// Swaps the tensor factors in every sector.
pub fn commutant_decomp(d: &SectorDecomposition) -> SectorDecomposition {
    let mut sectors: Vec<(usize, usize)> = d.sectors.iter().map(|&(a, b)| (b, a)).collect();
    sectors.sort_by(|x, y| y.cmp(x));
    SectorDecomposition { sectors }
}

/// Rank of the centre, a torus of relative phases between sectors.
pub fn centre_rank(d: &SectorDecomposition) -> usize {
    d.sectors.len() - 1
}

/// Number of mutually incompatible systems carried by the subgroup.
pub fn system_count(d: &SectorDecomposition) -> usize {
    d.sectors.len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    PurelyMultiplicative,
    PurelyAdditive,
    General,
}

pub fn classify(d: &SectorDecomposition) -> Classification {
    match d.sectors.as_slice() {
        [_] => Classification::PurelyMultiplicative,
        [(a, 1), (1, b)] | [(1, b), (a, 1)] if *a >= 1 && *b >= 1 => Classification::PurelyAdditive,
        _ => Classification::General,
    }
}

/// Real dimension of `(⊕ⱼ U(aⱼ))/U(1)`.
pub fn group_dimension(d: &SectorDecomposition) -> usize {
    d.sectors.iter().map(|&(a, _)| a * a).sum::<usize>() - 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairClaims {
    pub classification: Classification,
    pub orthogonal: bool,
    pub orthocomplementary: bool,
    pub join_full: bool,
    pub join: SectorDecomposition,
    pub centre_rank: usize,
    pub commutant_centre_rank: usize,
}

/// Compatibility of a subgroup with its commutant in the two special cases.
pub fn check_special_pair_claims(d: &SectorDecomposition) -> Result<PairClaims> {
    let n = d.dimension();
    let c = commutant_decomp(d);
    let classification = classify(d);
    let join = match classification {
        Classification::PurelyMultiplicative => SectorDecomposition::full(n),
        Classification::PurelyAdditive => {
            let (a, b) = if d.sectors[0].1 == 1 {
                (d.sectors[0].0, d.sectors[1].1)
            } else {
                (d.sectors[1].0, d.sectors[0].1)
            };
            SectorDecomposition::new(vec![(a, 1), (b, 1)])?
        }
        Classification::General => return Err(Error::GeneralCaseUnsupported),
    };
    let join_full = join == SectorDecomposition::full(n);
    let (centre, commutant_centre) = (centre_rank(d), centre_rank(&c));
    Ok(PairClaims {
        classification,
        orthogonal: true,
        orthocomplementary: join_full && centre == 0 && commutant_centre == 0,
        join_full,
        join,
        centre_rank: centre,
        commutant_centre_rank: commutant_centre,
    })
}
