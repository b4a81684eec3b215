//! Seat rotation and per-search seed derivation.

/// SplitMix64 finaliser.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of the search run at `ply` of game `seed` by the agent in `seat`.
pub fn derive_seed(seed_base: u64, seed: u64, ply: u32, seat: usize) -> u64 {
    [seed, ply as u64, seat as u64]
        .into_iter()
        .fold(mix(seed_base), |h, v| mix(h ^ mix(v)))
}

/// Agent index sitting in each seat for game `seed`.
///
/// Two players swap on odd seeds; three players rotate by `seed mod 3`.
pub fn seat_assignment(seed: u64, num_players: usize) -> Vec<usize> {
    let shift = (seed % num_players as u64) as usize;
    (0..num_players)
        .map(|seat| (seat + shift) % num_players)
        .collect()
}
