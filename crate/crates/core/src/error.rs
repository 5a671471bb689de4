use thiserror::Error;

/// Errors raised by every layer of the crate.
///
/// Validation failures carry enough context (element names, residuals,
/// witness chains) for the command-line front end to print a
/// machine-readable diagnostic.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("order cycle: `{0}` <= `{1}` <= `{0}`")]
    OrderCycle(String, String),
    #[error("map is not order preserving: `{0}` <= `{1}` but images are not comparable")]
    NotOrderPreserving(String, String),

    #[error("paths are not composable: end `{end}` does not match start `{start}`")]
    NonComposable { end: String, start: String },
    #[error("endpoints do not match")]
    EndpointMismatch,
    #[error("path is not a loop")]
    NotALoop,
    #[error("path is empty")]
    EmptyPath,
    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),

    #[error("poset is not pathwise connected ({components} components)")]
    Disconnected { components: usize },
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("cochain is not a cocycle (witness 2-simplex {witness})")]
    NotACocycle { witness: String },

    #[error("missing matrix for cover pair `{0}|{1}`")]
    MissingCoverMatrix(String, String),
    #[error("matrix on `{0}|{1}` has shape {2}x{3}, expected {4}x{5}")]
    BadShape(String, String, usize, usize, usize, usize),
    #[error("matrix on `{0}|{1}` is not injective")]
    NonInjective(String, String),
    #[error("matrix on `{pair}` is not unitary (residual {residual:e})")]
    NotUnitary { pair: String, residual: f64 },
    #[error("cocycle violation along {witness} (residual {residual:e})")]
    CocycleViolation { witness: String, residual: f64 },
    #[error("bundles live over different bases")]
    BaseMismatch,
    #[error("bad exponent {k} for rank {rank}")]
    BadExponent { k: usize, rank: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("not a morphism (residual {0:e})")]
    NotAMorphism(f64),
    #[error("not a projection (residual {0:e})")]
    NotAProjection(f64),
    #[error("not a group action: {0}")]
    NotAnAction(String),
    #[error("relator {index} evaluates to a non-identity matrix (residual {residual:e})")]
    RelatorViolation { index: usize, residual: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("fundamental group is not infinite cyclic: {0}")]
    WrongFundamentalGroup(String),
    #[error("transition map on `{0}|{1}` is not an order isomorphism of the fibre")]
    NotAnOrderIsomorphism(String, String),
    #[error("cannot lift path: {0}")]
    LiftUndefined(String),
    #[error("fibre is not pathwise connected")]
    DisconnectedFibre,

    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DuplicateElement(_) => "DuplicateElement",
            Error::UnknownElement(_) => "UnknownElement",
            Error::OrderCycle(..) => "OrderCycle",
            Error::NotOrderPreserving(..) => "NotOrderPreserving",
            Error::NonComposable { .. } => "NonComposable",
            Error::EndpointMismatch => "EndpointMismatch",
            Error::NotALoop => "NotALoop",
            Error::EmptyPath => "EmptyPath",
            Error::InvalidSimplex(_) => "InvalidSimplex",
            Error::Disconnected { .. } => "Disconnected",
            Error::NotACycle => "NotACycle",
            Error::NotACocycle { .. } => "NotACocycle",
            Error::MissingCoverMatrix(..) => "MissingCoverMatrix",
            Error::BadShape(..) => "BadShape",
            Error::NonInjective(..) => "NonInjective",
            Error::NotUnitary { .. } => "NotUnitary",
            Error::CocycleViolation { .. } => "CocycleViolation",
            Error::BaseMismatch => "BaseMismatch",
            Error::BadExponent { .. } => "BadExponent",
            Error::RankMismatch(..) => "RankMismatch",
            Error::NotAMorphism(_) => "NotAMorphism",
            Error::NotAProjection(_) => "NotAProjection",
            Error::NotAnAction(_) => "NotAnAction",
            Error::RelatorViolation { .. } => "RelatorViolation",
            Error::Unsupported(_) => "Unsupported",
            Error::WrongFundamentalGroup(_) => "WrongFundamentalGroup",
            Error::NotAnOrderIsomorphism(..) => "NotAnOrderIsomorphism",
            Error::LiftUndefined(_) => "LiftUndefined",
            Error::DisconnectedFibre => "DisconnectedFibre",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }
}
