use thiserror::Error;

/// Everything that can go wrong while building groups or counting over them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group order exceeds cap {cap}")]
    GroupTooLarge { cap: usize },
    #[error("subgroup lattice exceeds cap {cap} subgroups")]
    LatticeTooLarge { cap: usize },
    #[error("enumeration of {required} tuples exceeds cap {cap}")]
    EnumerationTooLarge { required: String, cap: u64 },
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid construction: {0}")]
    InvalidConstruction(String),
    #[error("element index {index} out of range for group of order {order}")]
    BadIndex { index: usize, order: usize },
    #[error("element is not a member of the group: {0}")]
    NotMember(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("source group is not {e}-generated")]
    NotEGenerated { e: usize },
    #[error("supplied tuple does not generate the target group")]
    NotGenerating,
    #[error("target `{0}` is not regular: H·G0 != G")]
    NotRegularTarget(String),
    #[error("bad complement: {0}")]
    BadComplement(String),
    #[error("duplicate target class: `{0}` and `{1}` are conjugate")]
    DuplicateTarget(String, String),
    #[error("unknown target `{0}`")]
    UnknownTarget(String),
    #[error("scenario has no targets")]
    NoTargets,
    #[error("no regular {e}-tuples: the quotient G/G0 is not {e}-generated")]
    NoRegularTuples { e: usize },
    #[error("scenario is not split (no complement)")]
    NotSplit,
    #[error("sigma0 does not generate the quotient: {0}")]
    Sigma0NotGenerating(String),
    #[error("bad tower: {0}")]
    BadTower(String),
    #[error("limit is not 0 or 1: {0}")]
    NotZeroOne(String),
    #[error("invalid signed power sum: {0}")]
    InvalidForm(String),
    #[error("generic target missing: the class of G is not among the targets")]
    GenericMissing,
    #[error("quotient G/G0 of order {order} is not a {p}-group")]
    QuotientNotPGroup { p: u64, order: usize },
    #[error("target `{name}` is not a {p}-group")]
    TargetNotPGroup { p: u64, name: String },
    #[error("invalid Sylow choice: {0}")]
    BadChoice(String),
    #[error("not a left transversal: {0}")]
    NotTransversal(String),
    #[error("every one of {samples} samples was rejected as non-regular")]
    NoRegularSamples { samples: u64 },
    #[error("e must be at least 1")]
    ZeroRank,
}

impl Error {
    /// Variant name, used to label diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidPermutation { .. } => "InvalidPermutation",
            Error::GroupTooLarge { .. } => "GroupTooLarge",
            Error::LatticeTooLarge { .. } => "LatticeTooLarge",
            Error::EnumerationTooLarge { .. } => "EnumerationTooLarge",
            Error::InvalidAction { .. } => "InvalidAction",
            Error::InvalidConstruction { .. } => "InvalidConstruction",
            Error::BadIndex { .. } => "BadIndex",
            Error::NotMember { .. } => "NotMember",
            Error::NotPrime { .. } => "NotPrime",
            Error::NotNormal { .. } => "NotNormal",
            Error::NotHomomorphism { .. } => "NotHomomorphism",
            Error::NotEGenerated { .. } => "NotEGenerated",
            Error::NotGenerating => "NotGenerating",
            Error::NotRegularTarget { .. } => "NotRegularTarget",
            Error::BadComplement { .. } => "BadComplement",
            Error::DuplicateTarget { .. } => "DuplicateTarget",
            Error::UnknownTarget { .. } => "UnknownTarget",
            Error::NoTargets => "NoTargets",
            Error::NoRegularTuples { .. } => "NoRegularTuples",
            Error::NotSplit => "NotSplit",
            Error::Sigma0NotGenerating { .. } => "Sigma0NotGenerating",
            Error::BadTower { .. } => "BadTower",
            Error::NotZeroOne { .. } => "NotZeroOne",
            Error::InvalidForm { .. } => "InvalidForm",
            Error::GenericMissing => "GenericMissing",
            Error::QuotientNotPGroup { .. } => "QuotientNotPGroup",
            Error::TargetNotPGroup { .. } => "TargetNotPGroup",
            Error::BadChoice { .. } => "BadChoice",
            Error::NotTransversal { .. } => "NotTransversal",
            Error::NoRegularSamples { .. } => "NoRegularSamples",
            Error::ZeroRank => "ZeroRank",
        }
    }

    /// Whether the error reflects a configured resource cap rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::GroupTooLarge { .. } | Error::LatticeTooLarge { .. } | Error::EnumerationTooLarge { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
