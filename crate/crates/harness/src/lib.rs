//! Tournament runner and random-playout statistics for the search engine.

pub mod agent;
pub mod output;
pub mod seeding;
pub mod stats;
pub mod tournament;

use mcps_core::{GameError, SearchError};
use thiserror::Error;

pub use agent::{AgentKind, AgentSpec};
pub use seeding::{derive_seed, seat_assignment};
pub use stats::{code_frequency_stats, confidence_interval, CodeStatsReport};
pub use tournament::{
    play_game, run_match, run_match_on, GameResult, MatchConfig, MatchFailure, MatchReport,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Runtime(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl HarnessError {
    /// Process exit code: 1 for bad configuration, 2 for failures while running.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_)
            | HarnessError::Game(GameError::UnknownGame(_) | GameError::UnsupportedMode(..))
            | HarnessError::Search(SearchError::InvalidConfig(_)) => 1,
            _ => 2,
        }
    }
}
