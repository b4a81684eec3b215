use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("{op} called on a terminal state")]
    Terminal { op: &'static str },
    #[error("{op} called on a non-terminal state")]
    NotTerminal { op: &'static str },
    #[error("illegal move {mv} at ply {ply}")]
    IllegalMove { mv: String, ply: u32 },
    #[error("unknown game `{0}`")]
    UnknownGame(String),
    #[error("code mode {0} is not supported by {1}")]
    UnsupportedMode(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("playout archive is full (capacity {capacity})")]
    ArchiveFull { capacity: usize },
    #[error("playout record index {got} does not match archive count {expected}")]
    RecordIndex { expected: usize, got: usize },
    #[error("playout record has no codes")]
    EmptyRecord,
    #[error("root node has no visited moves")]
    NoVisitedMoves,
    #[error("invalid search config: {0}")]
    InvalidConfig(&'static str),
}
