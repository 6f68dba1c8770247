use exactalg::ParseError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QsingError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("weights are not unique (exponent matrix has rank {rank} < {nvars})")]
    NonUniqueWeights { rank: usize, nvars: usize },
    #[error("W is not quasi-homogeneous")]
    NotQuasiHomogeneous,
    #[error("no positive weight solution")]
    NoPositiveSolution,
    #[error("singularity at the origin is not isolated")]
    NonIsolatedSingularity,
    #[error("W has no critical point at the origin")]
    NotSingular,
    #[error("group does not contain J")]
    MissingJ,
    #[error("element {0} is not in the group")]
    ElementNotInGroup(String),
    #[error("variable {0} occurs in both factors")]
    VariableCollision(String),
    #[error("node element {0} is not in the group")]
    NodeNotInGroup(String),
    #[error("frame is not concave")]
    NotConcave,
    #[error("no registered Witten-map degree for {0}")]
    NotInRegistry(String),
    #[error("composition equation is underdetermined: {0}")]
    Underdetermined(String),
    #[error("correlator cannot be evaluated: {0}")]
    Unevaluable(String),
    #[error("missing basic correlator {0}")]
    MissingBasic(String),
    #[error("unknown family {0}")]
    UnknownFamily(String),
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("relation does not map to zero: {0}")]
    RelationFails(String),
    #[error("dimension mismatch: image spans {image}, target has {target}")]
    DimensionMismatch { image: usize, target: usize },
    #[error("pairing ratio is not uniform: {0}")]
    NonUniformPairingRatio(String),
    #[error("cubic terms differ: {0}")]
    CubicMismatch(String),
    #[error("quartic terms are not proportional: {0}")]
    QuarticNotProportional(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, QsingError>;
