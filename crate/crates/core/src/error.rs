use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("permutation window is empty")]
    EmptyWindow,
    #[error("group size must be at least 1")]
    ZeroRank,
    #[error("value {value} is outside 1..={n}")]
    ValueOutOfRange { value: usize, n: usize },
    #[error("value {value} appears more than once")]
    DuplicateValue { value: usize },
    #[error("group size {n} exceeds the supported maximum of {max}")]
    RankTooLarge { n: usize, max: usize },
    #[error("generator s_{index} does not exist in S_{n}")]
    GeneratorOutOfRange { index: usize, n: usize },
    #[error("word {word} is not reduced")]
    NotReduced { word: String },
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("|R(w)| = {count} exceeds the enumeration cap of {cap}")]
    TooLarge { count: u128, cap: u64 },
    #[error("a move cannot be paired with itself (position {position})")]
    SamePosition { position: usize },
    #[error("braid moves at adjacent positions {i} and {j} cannot both be supported by a reduced word")]
    AdjacentBraids { i: usize, j: usize },
    #[error("position {position} does not support a {kind} move in {word}")]
    Unsupported {
        kind: &'static str,
        position: usize,
        word: String,
    },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot resume scan: {0}")]
    Resume(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True when the error signals that a proved statement failed to hold.
    pub fn is_invariant(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
