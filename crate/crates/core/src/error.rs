use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid facility distances: {0}")]
    InvalidDistances(String),

    #[error("invalid preference profile: {0}")]
    InvalidProfile(String),

    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("operation needs full rankings but the profile only records top choices")]
    TopOnlyProfile,

    #[error("percentile {0} is outside [0, 1]")]
    PercentileOutOfRange(f64),

    #[error("percentile {0} is below 1/2; worst-case distortion is unbounded there and no audit is attempted")]
    UnboundedPercentileRegime(f64),

    #[error("no facility has out-edges to every other facility after the augmentation pass")]
    NoDominatingFacility,

    #[error("inconsistent candidate rankings: {0}")]
    InconsistentCandidateRankings(String),

    #[error("distance cost `{0}` is not subadditive and cannot be used in an assignment problem")]
    NotSubadditive(String),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("no valid assignment satisfies the constraints")]
    NoValidAssignment,

    #[error("search space of {size} candidates exceeds the limit of {limit}")]
    SearchSpaceTooLarge { size: u128, limit: u128 },

    #[error("solver `{solver}` cannot handle this problem: {reason}")]
    SolverMismatch { solver: &'static str, reason: String },

    #[error("{0} is out of range")]
    OutOfRange(String),

    #[error("linear program failed: {0}")]
    LinearProgram(String),

    #[error("consistency constraints are infeasible")]
    InfeasibleConstraints,

    #[error("audit not supported: {0}")]
    UnsupportedAudit(String),

    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
