use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse error categories, used by the command-line front end to pick exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Spec,
    Labeling,
    Budget,
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid simple type `{0}`")]
    InvalidType(String),
    #[error("group spec has no simple components")]
    EmptySpec,
    #[error("generator {generator} has {found} coefficients, expected {expected}")]
    GeneratorLength {
        generator: usize,
        expected: usize,
        found: usize,
    },
    #[error(
        "generator {generator} is not a weight: pairing with simple coroot {coroot} is {value}"
    )]
    NotInWeightLattice {
        generator: usize,
        coroot: usize,
        value: String,
    },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("vertex {vertex} has mark {mark}, expected a mark-1 vertex")]
    NotMarkOne { vertex: usize, mark: i64 },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("invalid labeling: {0}")]
    InvalidLabeling(String),
    #[error("invalid central element: {0}")]
    InvalidCentral(String),
    #[error("labeling set is not closed under the group action: {0}")]
    NotClosed(String),
    #[error("oracle budget exceeded: rank {rank}, n = {n}, about {points} torus points (limit rank {max_rank}, n {max_n})")]
    BudgetExceeded {
        rank: usize,
        n: u32,
        points: u128,
        max_rank: usize,
        max_n: u32,
    },
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse(_) => ErrorKind::Usage,
            Error::InvalidType(_)
            | Error::EmptySpec
            | Error::GeneratorLength { .. }
            | Error::NotInWeightLattice { .. }
            | Error::UnknownPreset(_)
            | Error::InvalidCentral(_) => ErrorKind::Spec,
            Error::NotMarkOne { .. } | Error::VertexOutOfRange(_) | Error::InvalidLabeling(_) => {
                ErrorKind::Labeling
            }
            Error::BudgetExceeded { .. } => ErrorKind::Budget,
            Error::NotClosed(_) | Error::Consistency(_) => ErrorKind::Internal,
        }
    }
}
