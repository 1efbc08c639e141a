use alloc::string::String;

/// Errors raised while building, decoding or partitioning graphs.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameter { family: &'static str, reason: String },
    #[error("malformed graph6: {0}")]
    Graph6(&'static str),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
}

impl GraphError {
    pub(crate) fn param(family: &'static str, reason: impl Into<String>) -> Self {
        GraphError::InvalidParameter {
            family,
            reason: reason.into(),
        }
    }
}

/// Errors raised by spectral computations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectralError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// The iteration budget ran out before the bracket reached the requested width.
    #[error("not converged after {iterations} iterations (bracket [{lower}, {upper}])")]
    NotConverged {
        iterations: usize,
        lower: f64,
        upper: f64,
    },
    #[error("cubic has a numerically degenerate largest root")]
    DegenerateCubic,
    #[error(transparent)]
    Graph(#[from] GraphError),
}
