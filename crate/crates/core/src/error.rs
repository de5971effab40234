use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// The CLI maps these onto exit code 1 with a machine-readable `code()`;
/// the FFI layer maps them onto status codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the semiring zero")]
    DivisionByZero,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("value {0} does not belong to the active semiring convention")]
    ConventionMismatch(String),
    #[error("vector has no finite coordinate")]
    ZeroVector,
    #[error("tropical line needs finite coefficients")]
    DegenerateLine,
    #[error("the two points coincide")]
    IdenticalPoints,
    #[error("the two lines coincide")]
    IdenticalLines,
    #[error("point ({0}) is not on the line")]
    NotIncident(String),
    #[error("point ({0}) is the vertex of the line")]
    VertexPoint(String),
    #[error("perspectivity center lies on one of the lines")]
    CenterOnLine,
    #[error("lines are coaxial")]
    CoaxialLines,
    #[error("pencils are not compatible: {0}")]
    Incompatible(String),
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("cross-ratio denominator is the semiring zero")]
    ZeroDenominator,
    #[error("matrix is tropically singular")]
    SingularMatrix,
    #[error("budget of {0} cases exhausted without a witness")]
    BudgetExhausted(u64),
    #[error("map is not invertible: {0}")]
    NotInvertible(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("ambiguous solution: {0}")]
    AmbiguousSolution(String),
    #[error("view box is empty")]
    EmptyView,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable identifier used in JSON error payloads.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::PreconditionViolated(_) => "precondition_violated",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::EmptyInput(_) => "empty_input",
            Error::NotSquare { .. } => "not_square",
            Error::ConventionMismatch(_) => "convention_mismatch",
            Error::ZeroVector => "zero_vector",
            Error::DegenerateLine => "degenerate_line",
            Error::IdenticalPoints => "identical_points",
            Error::IdenticalLines => "identical_lines",
            Error::NotIncident(_) => "not_incident",
            Error::VertexPoint(_) => "vertex_point",
            Error::CenterOnLine => "center_on_line",
            Error::CoaxialLines => "coaxial_lines",
            Error::Incompatible(_) => "incompatible",
            Error::DegenerateConfiguration(_) => "degenerate_configuration",
            Error::ZeroDenominator => "zero_denominator",
            Error::SingularMatrix => "singular_matrix",
            Error::BudgetExhausted(_) => "budget_exhausted",
            Error::NotInvertible(_) => "not_invertible",
            Error::NoSolution(_) => "no_solution",
            Error::AmbiguousSolution(_) => "ambiguous_solution",
            Error::EmptyView => "empty_view",
            Error::Parse(_) => "parse_error",
        }
    }
}
