//! A tiny placement game used to drive the search in tests.
//!
//! Players take turns claiming one of `cells` weighted cells (cell `i` weighs
//! `i + 1`). When every cell is claimed the players with the largest total
//! weight share the win. Different move orders reach the same position, so
//! the transposition table sees real sharing.

#![allow(dead_code)]

use mcps_core::zobrist::ZobristTable;
use mcps_core::{CodeId, CodeMode, Game, PlayerId, RewardVector};

#[derive(Debug, Clone, PartialEq)]
pub struct ClaimState {
    pub owner: Vec<u8>,
    pub ply: u32,
    hash: u64,
}

#[derive(Debug, Clone)]
pub struct Claim {
    pub cells: usize,
    pub players: usize,
    /// Multiplies every terminal reward.
    pub scale: f64,
    zobrist: ZobristTable,
}

impl Claim {
    pub fn new(cells: usize, players: usize) -> Self {
        Claim {
            cells,
            players,
            scale: 1.0,
            zobrist: ZobristTable::new(cells, players + 1, players, 99),
        }
    }

    pub fn scaled(mut self, k: f64) -> Self {
        self.scale = k;
        self
    }
}

impl Game for Claim {
    type State = ClaimState;
    type Move = u8;

    fn name(&self) -> &str {
        "claim"
    }

    fn num_players(&self) -> usize {
        self.players
    }

    fn initial_state(&self) -> ClaimState {
        ClaimState {
            owner: vec![0; self.cells],
            ply: 0,
            hash: self.zobrist.hash_all(std::iter::repeat_n(0, self.cells), 0),
        }
    }

    fn to_move(&self, s: &ClaimState) -> PlayerId {
        PlayerId((s.ply as usize % self.players) as u8)
    }

    fn ply(&self, s: &ClaimState) -> u32 {
        s.ply
    }

    fn generate_moves(&self, s: &ClaimState, out: &mut Vec<u8>) {
        out.extend((0..self.cells as u8).filter(|&c| s.owner[c as usize] == 0));
    }

    fn play(&self, s: &mut ClaimState, mv: u8) {
        let p = self.to_move(s).index();
        let c = mv as usize;
        s.owner[c] = p as u8 + 1;
        s.hash ^= self.zobrist.key(c, 0) ^ self.zobrist.key(c, p + 1);
        s.hash ^= self.zobrist.side(p) ^ self.zobrist.side((p + 1) % self.players);
        s.ply += 1;
    }

    fn terminal_rewards(&self, s: &ClaimState) -> RewardVector {
        let mut totals = vec![0usize; self.players];
        for (c, &o) in s.owner.iter().enumerate() {
            totals[o as usize - 1] += c + 1;
        }
        let best = *totals.iter().max().unwrap();
        let winners: Vec<PlayerId> = (0..self.players)
            .filter(|&p| totals[p] == best)
            .map(|p| PlayerId(p as u8))
            .collect();
        RewardVector::shared(&winners, self.players).scaled(self.scale)
    }

    fn code(&self, s: &ClaimState, mv: u8, _mode: CodeMode) -> CodeId {
        CodeId((self.to_move(s).index() * self.cells + mv as usize) as u32)
    }

    fn code_universe(&self, _mode: CodeMode) -> usize {
        self.players * self.cells
    }

    fn state_key(&self, s: &ClaimState) -> u64 {
        s.hash
    }

    fn max_plies(&self) -> u32 {
        self.cells as u32
    }
}
