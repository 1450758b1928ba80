use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    /// The tuple generates an intransitive group, so the cover it describes is disconnected.
    #[error("cover is disconnected (monodromy group is not transitive on {degree} sheets)")]
    Disconnected { degree: usize },

    #[error("search guard exceeded: {candidates} candidate tuples > bound {bound}")]
    Guard { candidates: u128, bound: u128 },

    #[error("degenerate form: {0}")]
    Degenerate(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("not implemented: {0}")]
    Unimplemented(String),

    /// An invariant that the algorithms guarantee did not hold. Always a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
