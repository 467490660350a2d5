use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("invalid flip: {0}")]
    InvalidFlip(String),
    #[error("{what} has size {size}, cap is {cap} (set CWLAB_CAPS to raise)")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("type error: {0}")]
    Type(String),
    #[error("sort error: {0}")]
    Sort(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("invalid semigroup: {0}")]
    InvalidSemigroup(String),
    #[error("invalid labelling: {0}")]
    InvalidLabelling(String),
    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("invalid linearisation: {0}")]
    InvalidLinearisation(String),
    #[error("decode failed: {0}")]
    Decode(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unbound variable: {0}")]
    Unbound(String),
    #[error("compositionality violation (implementation bug): {0}")]
    Compositionality(String),
    #[error("not oriented: {0}")]
    NotOriented(String),
    #[error("entanglement undefined: {0}")]
    UndefinedEntanglement(String),
    #[error("linearisation construction failed: {0}")]
    Construction(String),
    #[error("unknown fixture: {0}")]
    UnknownFixture(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
