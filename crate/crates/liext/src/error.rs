use thiserror::Error;

/// Errors shared across the expression core and the geometric layers.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("division by a zero expression")]
    DivisionByZero,

    #[error("substitution into the arguments of opaque symbol `{0}` is not supported")]
    SubstituteOpaque(String),

    #[error("expression left the closed form domain: {0}")]
    DomainEscape(String),

    #[error("no value supplied for atom `{0}`")]
    UnboundAtom(String),

    #[error("denominator vanishes at the sample point")]
    SingularPoint,

    #[error("all retried sample points were singular")]
    AllSamplesSingular,

    #[error("chart error: {0}")]
    Chart(String),

    #[error("commutator of basis elements {m} and {n} is not a constant combination of the basis; residual {residual}")]
    NotClosed { m: usize, n: usize, residual: String },

    #[error("basis is linearly dependent over the constants")]
    DependentBasis,

    #[error("witness maps are not mutually inverse: {0}")]
    NotInverse(String),

    #[error("expression depends on jet coordinate `{0}` of top order; raise the jet order")]
    OrderOverflow(String),

    #[error("ansatz is not closed under the operators: {0}")]
    AnsatzNotInvariant(String),

    #[error("only the zero extension satisfies the determining equations on this ansatz")]
    EmptyFamily,

    #[error("operator coefficient on `{0}` is not linear in the ancillary variable")]
    NotLinearInAncillary(String),

    #[error("problem script error: {0}")]
    Script(String),

    #[error("unknown corpus case `{0}`")]
    UnknownCase(String),
}

pub type Result<T> = std::result::Result<T, Error>;
