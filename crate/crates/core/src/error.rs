use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what}: size {size} exceeds the configured bound {bound}")]
    BoundExceeded {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("point index {index} out of range for a space with {n} points")]
    PointOutOfRange { index: usize, n: usize },
    #[error("family of sets is not a topology: {0}")]
    NotATopology(String),
    #[error("the base space is empty")]
    EmptyBase,
    #[error("the base space is not T0")]
    NotT0Base,
    #[error("subbase member {0} is empty (subbases here do not include ∅)")]
    EmptySubbaseMember(usize),
    #[error("subbase members {0} and {1} are equal")]
    DuplicateSubbaseMember(usize, usize),
    #[error("subbase member {0} is not open in the base space")]
    MemberNotOpen(usize),
    #[error("the subbase does not generate the topology of the base space")]
    SubbaseDoesNotGenerate,
    #[error("factor {0} is empty")]
    EmptyFactor(usize),
    #[error("no subbase member with index {0}")]
    UnknownSubbaseMember(usize),
    #[error("the chosen subspace is empty")]
    EmptySubspace,
    #[error("mismatched factors: {0}")]
    MismatchedFactors(String),
    #[error("base point {point} is not in subbase member {member}")]
    PointNotInMember { point: usize, member: usize },
    #[error("chosen subset of factor {0} is empty")]
    EmptyFactorSubset(usize),
    #[error("map is not continuous")]
    NotContinuous,
    #[error("map is not an embedding")]
    NotEmbedding,
    #[error("embedded image is not dense")]
    NotDense,
    #[error("no open set of the ambient space realizes subbase member {0}")]
    NoPhiExists(usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("factors are not all equal to the given space")]
    FactorsNotUniform,
    #[error("the factor space is not homogeneous")]
    FactorNotHomogeneous,
    #[error("invalid document: {0}")]
    InvalidDocument(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn bound(what: &'static str, size: usize, bound: usize) -> Self {
        Error::BoundExceeded { what, size, bound }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. })
    }
}
