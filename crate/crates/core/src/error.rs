use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a colored graph needs at least 2 colors, got {0}")]
    TooFewColors(usize),
    #[error("color {color} is out of range for {color_count} colors")]
    ColorOutOfRange { color: usize, color_count: usize },
    #[error("loop edge of color {color} at vertex {vertex}")]
    LoopEdge { vertex: String, color: usize },
    #[error("vertex {vertex} meets two edges of color {color} (edge {u} -- {v})")]
    ColorClash {
        vertex: String,
        color: usize,
        u: String,
        v: String,
    },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("graph is not regular: vertex {vertex} lacks color {color}")]
    NotRegular { vertex: String, color: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not contracted: dropping color {0} disconnects it")]
    NotContracted(usize),
    #[error("vertex {vertex} has degree {degree}, boundary graphs need degree at least {needed}")]
    NotBoundaryRegular {
        vertex: String,
        degree: usize,
        needed: usize,
    },
    #[error("alternating walk from {from} with colors {color}/{missing} ends at {to}, whose missing color differs")]
    AmbiguousMissingColor {
        from: String,
        to: String,
        color: usize,
        missing: usize,
    },
    #[error("bad color pair ({0}, {1})")]
    BadColors(usize, usize),
    #[error("isomorphism mismatch: {0}")]
    IsomorphismMismatch(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("construction produced an invalid graph: {0}")]
    ConstructionInvalid(String),
    #[error("unsupported parameters: {0}")]
    UnsupportedParams(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors that mean "the input broke a graph invariant" as
    /// opposed to "the input could not be read".
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::Parse(_) | Error::BadParameter(_) | Error::UnsupportedParams(_)
        )
    }
}
