//! Win-rate intervals and code-presence statistics of random playouts.

use std::collections::HashMap;

use mcps_core::{CodeId, CodeMode, Game};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Normal-approximation 95% interval: `(p, 1.96·√(p(1−p)/games))`.
pub fn confidence_interval(successes: f64, games: u32) -> (f64, f64) {
    assert!(games > 0, "confidence interval of zero games");
    let g = games as f64;
    let p = successes / g;
    (p, 1.96 * (p * (1.0 - p) / g).sqrt())
}

#[derive(Debug, Clone, Serialize)]
pub struct ModeStats {
    pub mode: String,
    /// Mean, over the distinct codes of the moves available at the opening
    /// position, of the fraction of playouts containing that code.
    pub frequency: f64,
    /// Mean over playouts of distinct codes played / codes observed overall.
    pub universe_share: f64,
    pub observed_codes: usize,
    pub code_universe: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CodeStatsReport {
    pub game: String,
    pub playouts: u32,
    pub seed: u64,
    /// Plies from the initial state to the end, forced moves included.
    pub mean_length: f64,
    /// Legal moves at the initial state.
    pub initial_moves: usize,
    /// Legal moves at the first position offering a choice.
    pub opening_moves: usize,
    pub modes: Vec<ModeStats>,
}

/// Runs `playouts` uniform random games from the initial state and reports
/// length and code-presence statistics for every code mode the game has.
pub fn code_frequency_stats<G: Game>(game: &G, playouts: u32, seed: u64) -> CodeStatsReport {
    assert!(playouts > 0, "code statistics need at least one playout");
    let modes: Vec<CodeMode> = [CodeMode::Exact, CodeMode::Abstract, CodeMode::Specific]
        .into_iter()
        .filter(|&m| game.supports_mode(m))
        .collect();

    // follow forced moves to the first real choice
    let initial = game.initial_state();
    let initial_moves = game.legal_moves(&initial).map_or(0, |m| m.len());
    let mut opening = initial.clone();
    let mut moves = Vec::new();
    loop {
        moves.clear();
        game.generate_moves(&opening, &mut moves);
        if moves.len() != 1 {
            break;
        }
        game.play(&mut opening, moves[0]);
    }
    let opening_codes: Vec<Vec<CodeId>> = modes
        .iter()
        .map(|&mode| {
            let mut codes: Vec<CodeId> = moves
                .iter()
                .map(|&m| game.code(&opening, m, mode))
                .collect();
            codes.sort_unstable();
            codes.dedup();
            codes
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total_plies = 0u64;
    // per mode: playouts containing each code, and distinct codes per playout
    let mut presence: Vec<HashMap<CodeId, u32>> = vec![HashMap::new(); modes.len()];
    let mut distinct_per_playout: Vec<Vec<usize>> =
        vec![Vec::with_capacity(playouts as usize); modes.len()];
    let mut played: Vec<Vec<CodeId>> = vec![Vec::new(); modes.len()];
    let mut buf = Vec::new();
    for _ in 0..playouts {
        let mut s = initial.clone();
        played.iter_mut().for_each(Vec::clear);
        loop {
            buf.clear();
            game.generate_moves(&s, &mut buf);
            if buf.is_empty() {
                break;
            }
            let mv = buf[rng.random_range(0..buf.len())];
            for (codes, &mode) in played.iter_mut().zip(&modes) {
                codes.push(game.code(&s, mv, mode));
            }
            game.play(&mut s, mv);
            total_plies += 1;
        }
        for (m, codes) in played.iter_mut().enumerate() {
            codes.sort_unstable();
            codes.dedup();
            distinct_per_playout[m].push(codes.len());
            for &c in codes.iter() {
                *presence[m].entry(c).or_default() += 1;
            }
        }
    }

    let n = playouts as f64;
    let mode_stats = modes
        .iter()
        .enumerate()
        .map(|(m, &mode)| {
            let observed = presence[m].len();
            let frequency = if opening_codes[m].is_empty() {
                0.0
            } else {
                opening_codes[m]
                    .iter()
                    .map(|c| presence[m].get(c).copied().unwrap_or(0) as f64 / n)
                    .sum::<f64>()
                    / opening_codes[m].len() as f64
            };
            let universe_share = distinct_per_playout[m]
                .iter()
                .map(|&d| d as f64 / observed.max(1) as f64)
                .sum::<f64>()
                / n;
            ModeStats {
                mode: mode.to_string(),
                frequency,
                universe_share,
                observed_codes: observed,
                code_universe: game.code_universe(mode),
            }
        })
        .collect();

    CodeStatsReport {
        game: game.name().to_string(),
        playouts,
        seed,
        mean_length: total_plies as f64 / n,
        initial_moves,
        opening_moves: moves.len(),
        modes: mode_stats,
    }
}
