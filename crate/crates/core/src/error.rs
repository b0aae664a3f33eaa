use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("subspaces live in different ambient spaces ({0} vs {1})")]
    MismatchedAmbient(usize, usize),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("degree {requested} exceeds the algebra cutoff {cutoff}")]
    DegreeOverflow { requested: usize, cutoff: usize },

    #[error("tensor ambient dimension {dim} exceeds the configured bound {bound}")]
    AmbientTooLarge { dim: usize, bound: usize },

    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),

    #[error("element is not in the ideal prefix J_{prefix}")]
    NotInIdeal { prefix: usize },

    #[error("relation `{0}` is not a monomial, the ring is not multigraded")]
    NotMultigraded(String),

    #[error("neither contraction slot gives a complex (d^2 != 0)")]
    CalibrationFailure,

    #[error("differential leaves the sub-Priddy complex in degree {degree}")]
    ClosureFailure { degree: usize },

    #[error(
        "ideal does not have linear quotients: generator {generator} fails at degree {degree}"
    )]
    NotLinearQuotients { generator: usize, degree: usize },

    #[error("no lift exists for the comparison map at homological degree {degree}, generator {generator}")]
    LiftingFailure { degree: usize, generator: usize },

    #[error("mapping cone is not minimal at homological degree {degree}")]
    NonMinimalCone { degree: usize },

    #[error(
        "regular ordering violated: generator {k}, dual basis element {f}, variable {s}, target generator {j}: {reason}"
    )]
    RegularOrderingViolation {
        k: usize,
        f: usize,
        s: usize,
        j: usize,
        reason: String,
    },

    #[error("ideal does not admit a regular ordering: {0}")]
    NotRegular(String),

    #[error("complex is not minimal: unit entry at homological degree {degree}")]
    NotMinimal { degree: usize },

    #[error("malformed complex: {0}")]
    MalformedComplex(String),
}
