//! Playout tallies and the per-code tables that hold them.

use rustc_hash::FxHashMap;

use crate::game::{CodeId, PlayerId, RewardVector, MAX_PLAYERS};

/// Count of playouts plus per-player reward sums over those playouts.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Tally {
    pub count: u32,
    pub sums: [f64; MAX_PLAYERS],
}

impl Tally {
    #[inline]
    pub fn add(&mut self, rewards: &RewardVector) {
        self.count += 1;
        for (s, r) in self.sums.iter_mut().zip(rewards.padded()) {
            *s += r;
        }
    }

    /// Mean reward of `player`, 0 when nothing has been counted.
    #[inline]
    pub fn mean(&self, player: PlayerId) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            self.sums[player.index()] / self.count as f64
        }
    }

    #[inline]
    pub fn sum(&self, player: PlayerId) -> f64 {
        self.sums[player.index()]
    }
}

/// Universes up to this many codes get a flat table; larger ones a hash map.
const DENSE_LIMIT: usize = 1024;

/// Tally table keyed by move code.
#[derive(Debug, Clone)]
pub enum CodeTable {
    Dense(Vec<Tally>),
    Sparse(FxHashMap<CodeId, Tally>),
}

impl CodeTable {
    pub fn for_universe(universe: usize) -> Self {
        if universe <= DENSE_LIMIT {
            CodeTable::Dense(vec![Tally::default(); universe])
        } else {
            CodeTable::Sparse(FxHashMap::default())
        }
    }

    #[inline]
    pub fn get(&self, code: CodeId) -> Tally {
        match self {
            CodeTable::Dense(v) => v[code.index()],
            CodeTable::Sparse(m) => m.get(&code).copied().unwrap_or_default(),
        }
    }

    #[inline]
    pub fn add(&mut self, code: CodeId, rewards: &RewardVector) {
        match self {
            CodeTable::Dense(v) => v[code.index()].add(rewards),
            CodeTable::Sparse(m) => m.entry(code).or_default().add(rewards),
        }
    }

    /// Codes with a non-zero count, ascending.
    pub fn codes(&self) -> Vec<CodeId> {
        let mut out: Vec<CodeId> = match self {
            CodeTable::Dense(v) => v
                .iter()
                .enumerate()
                .filter(|(_, t)| t.count > 0)
                .map(|(i, _)| CodeId(i as u32))
                .collect(),
            CodeTable::Sparse(m) => m.keys().copied().collect(),
        };
        out.sort_unstable();
        out
    }
}
