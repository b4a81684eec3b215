//! The contract every game implements.
//!
//! Search code only ever talks to a game through [`Game`]. States are plain
//! values: [`Game::play`] mutates a state the caller owns, and the checked
//! [`Game::apply`] returns a fresh successor, so a state handed to another
//! thread is never observed half-updated.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::GameError;

/// Largest number of players any game in the suite seats.
pub const MAX_PLAYERS: usize = 3;

/// 0-based seat index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PlayerId(pub u8);

impl PlayerId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Next seat in a fixed rotation over `num_players`.
    #[inline]
    pub fn next(self, num_players: usize) -> PlayerId {
        PlayerId(((self.index() + 1) % num_players) as u8)
    }
}

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0)
    }
}

/// Integer identifier of a move used to key AMAF and permutation statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CodeId(pub u32);

impl CodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for CodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Which coding scheme turns moves into [`CodeId`]s.
///
/// `Exact` is injective over moves as played. `Abstract` keeps only part of
/// the move so that codes recur more often across playouts. `Specific` is an
/// intermediate scheme only the video game defines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CodeMode {
    #[default]
    Exact,
    Abstract,
    Specific,
}

impl CodeMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CodeMode::Exact => "exact",
            CodeMode::Abstract => "abstract",
            CodeMode::Specific => "specific",
        }
    }
}

impl fmt::Display for CodeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CodeMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(CodeMode::Exact),
            "abstract" => Ok(CodeMode::Abstract),
            "specific" => Ok(CodeMode::Specific),
            other => Err(format!("unknown code mode `{other}`")),
        }
    }
}

/// Per-player terminal reward, each entry in `[0, 1]`.
#[derive(Clone, Copy, PartialEq)]
pub struct RewardVector {
    values: [f64; MAX_PLAYERS],
    players: u8,
}

impl RewardVector {
    pub fn new(values: &[f64]) -> Self {
        assert!(
            !values.is_empty() && values.len() <= MAX_PLAYERS,
            "reward vector needs 1..={MAX_PLAYERS} entries"
        );
        let mut out = [0.0; MAX_PLAYERS];
        out[..values.len()].copy_from_slice(values);
        RewardVector {
            values: out,
            players: values.len() as u8,
        }
    }

    /// Reward 1 for `winner`, 0 for everybody else.
    pub fn win(winner: PlayerId, players: usize) -> Self {
        let mut r = Self::new(&[0.0; MAX_PLAYERS][..players]);
        r.values[winner.index()] = 1.0;
        r
    }

    /// Equal split among all players.
    pub fn draw(players: usize) -> Self {
        let share = 1.0 / players as f64;
        Self::new(&[share; MAX_PLAYERS][..players])
    }

    /// Equal split among the given winners.
    pub fn shared(winners: &[PlayerId], players: usize) -> Self {
        let mut r = Self::new(&[0.0; MAX_PLAYERS][..players]);
        let share = 1.0 / winners.len() as f64;
        for w in winners {
            r.values[w.index()] = share;
        }
        r
    }

    #[inline]
    pub fn players(&self) -> usize {
        self.players as usize
    }

    #[inline]
    pub fn get(&self, player: PlayerId) -> f64 {
        self.values[player.index()]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values[..self.players()]
    }

    /// Full-width array, zero-padded past `players()`.
    #[inline]
    pub fn padded(&self) -> &[f64; MAX_PLAYERS] {
        &self.values
    }

    /// Every entry multiplied by `k`; used to check scale invariance.
    pub fn scaled(&self, k: f64) -> Self {
        let mut r = *self;
        for v in &mut r.values {
            *v *= k;
        }
        r
    }

    /// The unique player holding the largest reward, if there is one.
    pub fn sole_winner(&self) -> Option<PlayerId> {
        let best = self.as_slice().iter().cloned().fold(f64::MIN, f64::max);
        let mut winners = self
            .as_slice()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == best);
        let (first, _) = winners.next()?;
        if winners.next().is_some() {
            None
        } else {
            Some(PlayerId(first as u8))
        }
    }
}

impl fmt::Debug for RewardVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.as_slice()).finish()
    }
}

/// A sequential, perfect-information game with integer move codes.
///
/// Implementors must keep `generate_moves` deterministic and ordered by
/// ascending exact code, and must report an empty move list exactly when the
/// state is terminal.
pub trait Game: Send + Sync {
    type State: Clone + PartialEq + fmt::Debug + Send + Sync;
    type Move: Copy + Eq + fmt::Debug + Send + Sync;

    fn name(&self) -> &str;
    fn num_players(&self) -> usize;
    fn initial_state(&self) -> Self::State;
    fn to_move(&self, state: &Self::State) -> PlayerId;
    fn ply(&self, state: &Self::State) -> u32;

    /// Appends the legal moves of `state` to `out` (which the caller clears).
    /// Leaves `out` untouched when the state is terminal.
    fn generate_moves(&self, state: &Self::State, out: &mut Vec<Self::Move>);

    /// Plays a move the caller knows to be legal.
    fn play(&self, state: &mut Self::State, mv: Self::Move);

    /// Rewards of a state the caller knows to be terminal.
    fn terminal_rewards(&self, state: &Self::State) -> RewardVector;

    fn code(&self, state: &Self::State, mv: Self::Move, mode: CodeMode) -> CodeId;

    /// Upper bound (exclusive) on codes produced in `mode`.
    fn code_universe(&self, mode: CodeMode) -> usize;

    fn state_key(&self, state: &Self::State) -> u64;

    /// Hard bound on the length of any game.
    fn max_plies(&self) -> u32;

    fn supports_mode(&self, mode: CodeMode) -> bool {
        mode != CodeMode::Specific
    }

    fn is_terminal(&self, state: &Self::State) -> bool {
        let mut moves = Vec::new();
        self.generate_moves(state, &mut moves);
        moves.is_empty()
    }

    /// Uniformly random legal move, or `None` at a terminal state.
    ///
    /// `scratch` is a reusable buffer. Games with a cheaper way of drawing a
    /// uniform move may override this.
    fn random_move<R: Rng + ?Sized>(
        &self,
        state: &Self::State,
        rng: &mut R,
        scratch: &mut Vec<Self::Move>,
    ) -> Option<Self::Move> {
        scratch.clear();
        self.generate_moves(state, scratch);
        match scratch.len() {
            0 => None,
            1 => Some(scratch[0]),
            n => Some(scratch[rng.random_range(0..n)]),
        }
    }

    /// The lowest-ordered legal move whose code in `mode` is `code`.
    fn move_with_code(
        &self,
        state: &Self::State,
        code: CodeId,
        mode: CodeMode,
    ) -> Option<Self::Move> {
        let mut moves = Vec::new();
        self.generate_moves(state, &mut moves);
        moves
            .into_iter()
            .find(|&m| self.code(state, m, mode) == code)
    }

    fn legal_moves(&self, state: &Self::State) -> Result<Vec<Self::Move>, GameError> {
        let mut moves = Vec::new();
        self.generate_moves(state, &mut moves);
        if moves.is_empty() {
            return Err(GameError::Terminal { op: "legal_moves" });
        }
        Ok(moves)
    }

    fn apply(&self, state: &Self::State, mv: Self::Move) -> Result<Self::State, GameError> {
        let moves = self.legal_moves(state)?;
        if !moves.contains(&mv) {
            return Err(GameError::IllegalMove {
                mv: format!("{mv:?}"),
                ply: self.ply(state),
            });
        }
        let mut next = state.clone();
        self.play(&mut next, mv);
        Ok(next)
    }

    fn rewards(&self, state: &Self::State) -> Result<RewardVector, GameError> {
        if !self.is_terminal(state) {
            return Err(GameError::NotTerminal { op: "rewards" });
        }
        Ok(self.terminal_rewards(state))
    }
}

/// Plays uniformly random moves from `state` until the game ends.
///
/// Returns the code of every move played, in order, and the terminal rewards.
pub fn random_playout<G: Game, R: Rng + ?Sized>(
    game: &G,
    state: &mut G::State,
    rng: &mut R,
    mode: CodeMode,
    codes: &mut Vec<CodeId>,
) -> RewardVector {
    random_playout_with(game, state, rng, mode, codes, &mut Vec::new())
}

/// Plays `codes` from the initial state, each through the first legal move
/// carrying it. `None` as soon as a code has no legal move.
pub fn replay_codes<G: Game>(game: &G, codes: &[CodeId], mode: CodeMode) -> Option<G::State> {
    let mut s = game.initial_state();
    for &c in codes {
        let mv = game.move_with_code(&s, c, mode)?;
        game.play(&mut s, mv);
    }
    Some(s)
}

/// [`random_playout`] with a caller-provided move buffer.
pub fn random_playout_with<G: Game, R: Rng + ?Sized>(
    game: &G,
    state: &mut G::State,
    rng: &mut R,
    mode: CodeMode,
    codes: &mut Vec<CodeId>,
    scratch: &mut Vec<G::Move>,
) -> RewardVector {
    while let Some(mv) = game.random_move(state, rng, scratch) {
        codes.push(game.code(state, mv, mode));
        game.play(state, mv);
    }
    game.terminal_rewards(state)
}
