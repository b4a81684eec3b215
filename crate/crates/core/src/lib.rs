//! Monte Carlo tree search with permutation statistics.
//!
//! The crate is split in two layers:
//!
//! * [`game`] defines the contract every game implements (legal moves,
//!   transitions, terminal rewards, integer move codes and a 64-bit state key).
//! * [`search`] implements GRAVE and MCPS over that contract, together with
//!   the playout archive ([`archive`]) whose per-code membership bitsets back
//!   the permutation statistics.

pub mod archive;
pub mod bitset;
pub mod error;
pub mod game;
pub mod search;
pub mod stats;
pub mod weights;
pub mod zobrist;

pub use archive::{DescentMask, PermCache, PlayoutArchive, PlayoutRecord};
pub use error::{GameError, SearchError};
pub use game::{CodeId, CodeMode, Game, PlayerId, RewardVector, MAX_PLAYERS};
pub use search::{Algorithm, Search, SearchConfig, SearchRng};
pub use stats::Tally;
pub use weights::Weights;
