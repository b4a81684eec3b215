//! Zobrist tables: one random 64-bit word per (feature, value) pair, XORed
//! together into a state key that updates in O(1) per changed feature.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct ZobristTable {
    values_per_feature: usize,
    keys: Vec<u64>,
    side_keys: Vec<u64>,
}

impl ZobristTable {
    /// `features` slots that each take one of `values_per_feature` values,
    /// plus one key per player for the side to move.
    pub fn new(features: usize, values_per_feature: usize, players: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let keys = (0..features * values_per_feature)
            .map(|_| rng.random::<u64>())
            .collect();
        let side_keys = (0..players).map(|_| rng.random::<u64>()).collect();
        ZobristTable {
            values_per_feature,
            keys,
            side_keys,
        }
    }

    #[inline]
    pub fn key(&self, feature: usize, value: usize) -> u64 {
        debug_assert!(value < self.values_per_feature);
        self.keys[feature * self.values_per_feature + value]
    }

    #[inline]
    pub fn side(&self, player: usize) -> u64 {
        self.side_keys[player]
    }

    /// Key of a full assignment, computed from scratch.
    pub fn hash_all(&self, values: impl IntoIterator<Item = usize>, to_move: usize) -> u64 {
        values
            .into_iter()
            .enumerate()
            .fold(self.side(to_move), |h, (f, v)| h ^ self.key(f, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn incremental_matches_scratch() {
        let z = ZobristTable::new(10, 4, 2, 7);
        let mut vals = [0usize; 10];
        let mut h = z.hash_all(vals.iter().copied(), 0);
        // change feature 3 from 0 to 2 and flip the side
        h ^= z.key(3, 0) ^ z.key(3, 2) ^ z.side(0) ^ z.side(1);
        vals[3] = 2;
        assert_eq!(h, z.hash_all(vals.iter().copied(), 1));
    }

    #[test]
    fn deterministic_per_seed() {
        let a = ZobristTable::new(5, 3, 2, 42);
        let b = ZobristTable::new(5, 3, 2, 42);
        assert_eq!(a.key(4, 2), b.key(4, 2));
        assert_ne!(a.side(0), a.side(1));
    }
}
