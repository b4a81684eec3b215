//! Playing single games and whole matches.

use std::time::Instant;

use mcps_core::{CodeMode, Game, Search};
use mcps_games::{with_game, GameVisitor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::agent::AgentSpec;
use crate::seeding::{derive_seed, seat_assignment};
use crate::stats::confidence_interval;
use crate::HarnessError;

#[derive(Debug, Clone, PartialEq)]
pub struct MatchConfig {
    pub game: String,
    /// One agent per seat role; agent `i` is rotated through the seats.
    pub agents: Vec<AgentSpec>,
    pub playouts: u32,
    pub games: u32,
    pub seed_base: u64,
    pub code_mode: CodeMode,
    pub workers: usize,
}

impl MatchConfig {
    pub fn new(game: &str, agents: Vec<AgentSpec>) -> Self {
        MatchConfig {
            game: game.to_string(),
            agents,
            playouts: 1000,
            games: 800,
            seed_base: 0,
            code_mode: CodeMode::Exact,
            workers: 1,
        }
    }

    fn check<G: Game>(&self, game: &G) -> Result<(), HarnessError> {
        if self.games == 0 {
            return Err(HarnessError::Config("need at least one game".into()));
        }
        if self.playouts == 0 {
            return Err(HarnessError::Config(
                "need at least one playout per move".into(),
            ));
        }
        if self.agents.len() != game.num_players() {
            return Err(HarnessError::Config(format!(
                "{} has {} players but {} agents were given",
                game.name(),
                game.num_players(),
                self.agents.len()
            )));
        }
        for a in &self.agents {
            let mode = a.code_mode.unwrap_or(self.code_mode);
            if !game.supports_mode(mode) {
                return Err(HarnessError::Config(format!(
                    "{} has no {mode} codes",
                    game.name()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GameResult {
    pub seed: u64,
    /// Agent index in each seat.
    pub seat_perm: Vec<usize>,
    /// Reward of each agent (indexed by agent, not seat).
    pub rewards: Vec<f64>,
    pub plies: u32,
    pub millis: u64,
    /// Exact codes of the moves played.
    pub moves: Vec<u32>,
}

impl GameResult {
    /// Agent holding the single largest reward.
    pub fn winner(&self) -> Option<usize> {
        let best = self.rewards.iter().cloned().fold(f64::MIN, f64::max);
        let mut top = self.rewards.iter().enumerate().filter(|(_, &r)| r == best);
        let (first, _) = top.next()?;
        top.next().is_none().then_some(first)
    }
}

/// Plays game `seed` of the match described by `config` on `game`.
///
/// A position with a single legal move is played without searching.
pub fn play_game<G: Game>(
    game: &G,
    config: &MatchConfig,
    seed: u64,
) -> Result<GameResult, HarnessError> {
    let start = Instant::now();
    let players = game.num_players();
    let seat_perm = seat_assignment(seed, players);
    let mut s = game.initial_state();
    let mut moves = Vec::new();
    let mut buf = Vec::new();
    loop {
        buf.clear();
        game.generate_moves(&s, &mut buf);
        if buf.is_empty() {
            break;
        }
        let ply = game.ply(&s);
        if ply > game.max_plies() {
            return Err(HarnessError::Runtime(format!(
                "{} ran past its ply bound",
                game.name()
            )));
        }
        let seat = game.to_move(&s).index();
        let agent = &config.agents[seat_perm[seat]];
        let rng_seed = derive_seed(config.seed_base, seed, ply, seat);
        let mv = if buf.len() == 1 {
            buf[0]
        } else {
            match agent.search_config(config.playouts, config.code_mode, rng_seed) {
                Some(sc) => Search::new(game, sc)?.run(&s)?,
                None => buf[ChaCha8Rng::seed_from_u64(rng_seed).random_range(0..buf.len())],
            }
        };
        moves.push(game.code(&s, mv, CodeMode::Exact).0);
        game.play(&mut s, mv);
    }
    let by_seat = game.terminal_rewards(&s);
    let mut rewards = vec![0.0; players];
    for (seat, &agent) in seat_perm.iter().enumerate() {
        rewards[agent] = by_seat.as_slice()[seat];
    }
    Ok(GameResult {
        seed,
        seat_perm,
        rewards,
        plies: game.ply(&s),
        millis: start.elapsed().as_millis() as u64,
        moves,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SeatSummary {
    pub seat: usize,
    pub games: u32,
    pub mean_reward: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AgentSummary {
    pub agent: String,
    pub mean_reward: f64,
    pub half_width: f64,
    pub wins: u32,
    pub seats: Vec<SeatSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatchReport {
    pub game: String,
    pub games: u32,
    pub playouts: u32,
    pub code_mode: String,
    pub seed_base: u64,
    pub agents: Vec<AgentSummary>,
    pub results: Vec<GameResult>,
}

impl MatchReport {
    /// Aggregates `results`, which must be sorted by seed.
    pub fn from_results(config: &MatchConfig, results: Vec<GameResult>) -> Self {
        let games = results.len() as u32;
        let players = config.agents.len();
        let agents = config
            .agents
            .iter()
            .enumerate()
            .map(|(a, spec)| {
                let total: f64 = results.iter().map(|r| r.rewards[a]).sum();
                let (mean_reward, half_width) = if games > 0 {
                    confidence_interval(total, games)
                } else {
                    (0.0, 0.0)
                };
                let seats = (0..players)
                    .map(|seat| {
                        let here: Vec<f64> = results
                            .iter()
                            .filter(|r| r.seat_perm[seat] == a)
                            .map(|r| r.rewards[a])
                            .collect();
                        SeatSummary {
                            seat,
                            games: here.len() as u32,
                            mean_reward: if here.is_empty() {
                                0.0
                            } else {
                                here.iter().sum::<f64>() / here.len() as f64
                            },
                        }
                    })
                    .collect();
                AgentSummary {
                    agent: spec.to_string(),
                    mean_reward,
                    half_width,
                    wins: results.iter().filter(|r| r.winner() == Some(a)).count() as u32,
                    seats,
                }
            })
            .collect();
        MatchReport {
            game: config.game.clone(),
            games,
            playouts: config.playouts,
            code_mode: config.code_mode.to_string(),
            seed_base: config.seed_base,
            agents,
            results,
        }
    }
}

/// A match that stopped early, with the games finished before the failure.
#[derive(Debug)]
pub struct MatchFailure {
    pub error: HarnessError,
    pub partial: Vec<GameResult>,
}

/// Plays seeds `seed_base..seed_base + games` of `config` on `game`.
///
/// Games run on a pool of `config.workers` threads; results are ordered by
/// seed, so the report does not depend on scheduling.
pub fn run_match_on<G: Game>(game: &G, config: &MatchConfig) -> Result<MatchReport, MatchFailure> {
    config.check(game).map_err(|error| MatchFailure {
        error,
        partial: Vec::new(),
    })?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .map_err(|e| MatchFailure {
            error: HarnessError::Runtime(e.to_string()),
            partial: Vec::new(),
        })?;
    let seeds: Vec<u64> = (0..config.games as u64)
        .map(|i| config.seed_base + i)
        .collect();
    let outcomes: Vec<Result<GameResult, HarnessError>> = pool.install(|| {
        seeds
            .par_iter()
            .map(|&seed| play_game(game, config, seed))
            .collect()
    });
    let mut results = Vec::with_capacity(outcomes.len());
    let mut first_error = None;
    for o in outcomes {
        match o {
            Ok(r) => results.push(r),
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    match first_error {
        None => Ok(MatchReport::from_results(config, results)),
        Some(error) => Err(MatchFailure {
            error,
            partial: results,
        }),
    }
}

struct MatchVisitor<'a>(&'a MatchConfig);

impl GameVisitor for MatchVisitor<'_> {
    type Output = Result<MatchReport, MatchFailure>;

    fn visit<G: Game + 'static>(self, game: G) -> Self::Output {
        run_match_on(&game, self.0)
    }
}

/// [`run_match_on`] for the registered game named in `config`.
pub fn run_match(config: &MatchConfig) -> Result<MatchReport, MatchFailure> {
    with_game(&config.game, MatchVisitor(config)).map_err(|e| MatchFailure {
        error: e.into(),
        partial: Vec::new(),
    })?
}
