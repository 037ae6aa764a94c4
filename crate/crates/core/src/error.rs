use std::fmt;

use thiserror::Error;

/// A condition of a global theory that failed validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TheoryDefect {
    /// The action has more than one orbit.
    NotTransitive { orbits: usize },
    /// The group has a non-trivial centre.
    NotCentreless { centre_order: usize },
    /// Some non-identity element fixes every point.
    NotFaithful { kernel_order: usize },
}

impl fmt::Display for TheoryDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoryDefect::NotTransitive { orbits } => {
                write!(f, "NotTransitive: action has {orbits} orbits")
            }
            TheoryDefect::NotCentreless { centre_order } => {
                write!(f, "NotCentreless: centre has order {centre_order}")
            }
            TheoryDefect::NotFaithful { kernel_order } => {
                write!(f, "NotFaithful: kernel has order {kernel_order}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("resource limit exceeded: {what} (limit {limit})")]
    ResourceLimit { what: &'static str, limit: usize },
    #[error("element is not in the group")]
    ElementNotInGroup,
    #[error("invalid global theory: {}", join_defects(.0))]
    InvalidTheory(Vec<TheoryDefect>),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("subgroup does not belong to this theory")]
    SubgroupNotInTheory,
    #[error("subgroup is not self-bicommutant")]
    NotSelfBicommutant,
    #[error("subgroups are not nested")]
    NotNested,
    #[error("subgroups are not orthogonal")]
    NotOrthogonal,
    #[error("element is not in the owning subgroup")]
    ElementNotInOwner,
    #[error("local state is not pure")]
    NotPure,
    #[error("global state {0} is not a product state")]
    NotProductState(usize),
    #[error("systems are not compatible")]
    IncompatibleSystems,
    #[error("state does not belong to the system")]
    StateNotInSystem,
    #[error("state does not belong to the system-environment pair")]
    StateNotInPair,
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("object lies outside the bounded object set")]
    OutsideBound,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("sector with zero dimension")]
    ZeroDimension,
    #[error("total dimension {0} is below the minimum of 2")]
    DegenerateDimension(usize),
    #[error("decomposition is neither purely additive nor purely multiplicative")]
    GeneralCaseUnsupported,
}

fn join_defects(defects: &[TheoryDefect]) -> String {
    defects.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
