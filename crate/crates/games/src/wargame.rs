//! Sequential target-selection Wargame for two or three armies.
//!
//! Units act in a fixed cycle: unit 0 of each army in seat order, then unit 1
//! of each army, and so on. A dead unit's slot is skipped, so an army that
//! loses units also loses turns. The acting unit picks any living enemy unit
//! and deals it one point of damage. The last army with a living unit wins.

use mcps_core::zobrist::ZobristTable;
use mcps_core::{CodeId, CodeMode, Game, PlayerId, RewardVector, MAX_PLAYERS};

pub const START_HEALTH: u8 = 3;

/// The global index of the attacked unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Attack(pub u8);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WargameState {
    health: Vec<u8>,
    /// Slot in the turn cycle that acts next, before skipping the dead.
    cursor: u16,
    to_move: PlayerId,
    ply: u32,
    hash: u64,
}

impl WargameState {
    pub fn health(&self) -> &[u8] {
        &self.health
    }
}

#[derive(Debug, Clone)]
pub struct Wargame {
    name: String,
    players: usize,
    units: usize,
    zobrist: ZobristTable,
}

impl Wargame {
    pub fn new(players: usize, units: usize) -> Self {
        assert!((2..=MAX_PLAYERS).contains(&players) && units > 0 && players * units <= 256);
        let name = if players == 2 {
            format!("wargame-{units}")
        } else {
            format!("wargame-{players}p")
        };
        // Unit features carry health; one more carries the cursor.
        let values = (START_HEALTH as usize + 1).max(players * units);
        Wargame {
            name,
            players,
            units,
            zobrist: ZobristTable::new(players * units + 1, values, players, 0x7761_7267),
        }
    }

    pub fn units(&self) -> usize {
        self.units
    }

    fn army(&self, unit: usize) -> usize {
        unit / self.units
    }

    fn army_alive(&self, s: &WargameState, army: usize) -> bool {
        s.health[army * self.units..(army + 1) * self.units]
            .iter()
            .any(|&h| h > 0)
    }

    fn armies_alive(&self, s: &WargameState) -> usize {
        (0..self.players).filter(|&a| self.army_alive(s, a)).count()
    }

    fn slot_unit(&self, slot: usize) -> usize {
        (slot % self.players) * self.units + slot / self.players
    }

    fn unit_slot(&self, unit: usize) -> usize {
        (unit % self.units) * self.players + self.army(unit)
    }

    /// First slot at or after `cursor` holding a living unit.
    fn next_slot(&self, health: &[u8], cursor: usize) -> usize {
        let n = self.players * self.units;
        (0..n)
            .map(|i| (cursor + i) % n)
            .find(|&slot| health[self.slot_unit(slot)] > 0)
            .expect("some unit is alive")
    }

    /// Position with the given health and turn-cycle slot, for tests and tools.
    pub fn state_from(&self, health: Vec<u8>, cursor: usize) -> WargameState {
        assert_eq!(health.len(), self.players * self.units);
        let to_move = PlayerId(self.army(self.slot_unit(self.next_slot(&health, cursor))) as u8);
        let values = health.iter().map(|&h| h as usize).chain([cursor]);
        WargameState {
            hash: self.zobrist.hash_all(values, to_move.index()),
            health,
            cursor: cursor as u16,
            to_move,
            ply: 0,
        }
    }

    /// Global index of the unit about to act.
    pub fn attacker(&self, s: &WargameState) -> Option<usize> {
        (self.armies_alive(s) >= 2)
            .then(|| self.slot_unit(self.next_slot(&s.health, s.cursor as usize)))
    }

    /// Position of `target` among the units not belonging to `attacker`'s army.
    fn target_slot(&self, attacker: usize, target: usize) -> usize {
        if self.army(target) > self.army(attacker) {
            target - self.units
        } else {
            target
        }
    }

    fn abstract_code(&self, attacker: usize, target: usize) -> usize {
        attacker * (self.players - 1) * self.units + self.target_slot(attacker, target)
    }
}

impl Game for Wargame {
    type State = WargameState;
    type Move = Attack;

    fn name(&self) -> &str {
        &self.name
    }

    fn num_players(&self) -> usize {
        self.players
    }

    fn initial_state(&self) -> WargameState {
        let n = self.players * self.units;
        let health = vec![START_HEALTH; n];
        let values = health.iter().map(|&h| h as usize).chain([0]);
        WargameState {
            hash: self.zobrist.hash_all(values, 0),
            health,
            cursor: 0,
            to_move: PlayerId(0),
            ply: 0,
        }
    }

    fn to_move(&self, s: &WargameState) -> PlayerId {
        s.to_move
    }

    fn ply(&self, s: &WargameState) -> u32 {
        s.ply
    }

    fn generate_moves(&self, s: &WargameState, out: &mut Vec<Attack>) {
        if self.armies_alive(s) < 2 {
            return;
        }
        let me = s.to_move.index();
        for (u, &h) in s.health.iter().enumerate() {
            if h > 0 && self.army(u) != me {
                out.push(Attack(u as u8));
            }
        }
    }

    fn is_terminal(&self, s: &WargameState) -> bool {
        self.armies_alive(s) < 2
    }

    fn play(&self, s: &mut WargameState, mv: Attack) {
        let me = s.to_move.index();
        let attacker = self.attacker(s).expect("army to move has a living unit");
        let t = mv.0 as usize;
        let h = s.health[t] as usize;
        s.health[t] -= 1;
        s.hash ^= self.zobrist.key(t, h) ^ self.zobrist.key(t, h - 1);

        // A finished game parks the cursor at 0 with the winner to move, so
        // equal final health means equal final states.
        let over = self.armies_alive(s) < 2;
        let feature = self.players * self.units;
        let cursor = if over {
            0
        } else {
            (self.unit_slot(attacker) + 1) % (self.players * self.units)
        };
        s.hash ^= self.zobrist.key(feature, s.cursor as usize) ^ self.zobrist.key(feature, cursor);
        s.cursor = cursor as u16;

        let next = if over {
            s.to_move
        } else {
            PlayerId(self.army(self.slot_unit(self.next_slot(&s.health, cursor))) as u8)
        };
        s.hash ^= self.zobrist.side(me) ^ self.zobrist.side(next.index());
        s.to_move = next;
        s.ply += 1;
    }

    fn terminal_rewards(&self, s: &WargameState) -> RewardVector {
        let winner = (0..self.players)
            .find(|&a| self.army_alive(s, a))
            .expect("one army survives");
        RewardVector::win(PlayerId(winner as u8), self.players)
    }

    fn code(&self, s: &WargameState, mv: Attack, mode: CodeMode) -> CodeId {
        let attacker = self.attacker(s).expect("army to move has a living unit");
        let t = mv.0 as usize;
        let abs = self.abstract_code(attacker, t);
        let code = match mode {
            CodeMode::Abstract => abs,
            _ => {
                let th = s.health[t] as usize - 1;
                let ah = s.health[attacker] as usize - 1;
                (abs * START_HEALTH as usize + th) * START_HEALTH as usize + ah
            }
        };
        CodeId(code as u32)
    }

    fn code_universe(&self, mode: CodeMode) -> usize {
        let pairs = self.players * self.units * (self.players - 1) * self.units;
        match mode {
            CodeMode::Abstract => pairs,
            _ => pairs * (START_HEALTH * START_HEALTH) as usize,
        }
    }

    fn state_key(&self, s: &WargameState) -> u64 {
        s.hash
    }

    fn max_plies(&self) -> u32 {
        (self.players * self.units * START_HEALTH as usize) as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn opening_and_universes() {
        let g = Wargame::new(2, 10);
        let s = g.initial_state();
        assert_eq!(g.legal_moves(&s).unwrap().len(), 10);
        assert_eq!(g.code_universe(CodeMode::Abstract), 200);
        assert_eq!(g.code_universe(CodeMode::Exact), 1800);
        assert_eq!(Wargame::new(3, 10).code_universe(CodeMode::Abstract), 600);
    }

    #[test]
    fn health_separates_exact_codes_only() {
        let g = Wargame::new(2, 10);
        let s0 = g.initial_state();
        // Every unit acts once, hitting a distinct enemy, so unit 0 of army 0
        // is next to act and unit 10 is down to 2.
        let mut s = g.apply(&s0, Attack(10)).unwrap();
        for i in 0..19u8 {
            let target = if i % 2 == 0 { i / 2 } else { 11 + i / 2 };
            s = g.apply(&s, Attack(target)).unwrap();
        }
        assert_eq!(g.attacker(&s), Some(0));
        assert_eq!(s.health[10], 2);
        for mode in [CodeMode::Abstract, CodeMode::Exact] {
            let same = g.code(&s0, Attack(10), mode) == g.code(&s, Attack(10), mode);
            assert_eq!(same, mode == CodeMode::Abstract);
        }
    }

    #[test]
    fn last_enemy_at_one_health() {
        let g = Wargame::new(2, 2);
        let s = g.state_from(vec![3, 3, 0, 1], 0);
        assert_eq!(g.legal_moves(&s).unwrap(), vec![Attack(3)]);
        let s = g.apply(&s, Attack(3)).unwrap();
        assert!(g.is_terminal(&s));
        assert_eq!(g.rewards(&s).unwrap().as_slice(), &[1.0, 0.0]);
    }

    #[test]
    fn dead_units_lose_their_slot() {
        let g = Wargame::new(2, 3);
        // Cycle: units 0, 3, 1, 4, 2, 5. Unit 0 is dead, so army 1 opens.
        let mut s = g.state_from(vec![0, 3, 3, 3, 3, 3], 0);
        assert_eq!(g.attacker(&s), Some(3));
        assert_eq!(s.to_move, PlayerId(1));
        let script = [
            (1, 1),
            (3, 4),
            (2, 2),
            (3, 5),
            (2, 3),
            (2, 1),
            (3, 4),
            (1, 5),
        ];
        for (target, next_attacker) in script {
            s = g.apply(&s, Attack(target)).unwrap();
            assert_eq!(g.attacker(&s), Some(next_attacker));
        }
        // Unit 2 died, so army 1 moves twice in a row.
        assert_eq!(s.health[..3], [0, 1, 0]);
        assert_eq!(s.to_move, PlayerId(1));
    }

    #[test]
    fn incremental_key_matches_rebuilt_state() {
        let g = Wargame::new(3, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut s = g.initial_state();
        let mut buf = Vec::new();
        while let Some(mv) = g.random_move(&s, &mut rng, &mut buf) {
            g.play(&mut s, mv);
            if g.is_terminal(&s) {
                break;
            }
            let rebuilt = g.state_from(s.health.clone(), s.cursor as usize);
            assert_eq!(rebuilt.to_move, s.to_move);
            assert_eq!(rebuilt.hash, s.hash);
        }
    }

    #[test]
    fn health_drops_by_one_per_move() {
        for g in [Wargame::new(2, 10), Wargame::new(3, 10)] {
            let mut rng = ChaCha8Rng::seed_from_u64(17);
            for _ in 0..100 {
                let mut s = g.initial_state();
                let mut buf = Vec::new();
                while let Some(mv) = g.random_move(&s, &mut rng, &mut buf) {
                    let before: u32 = s.health.iter().map(|&h| h as u32).sum();
                    g.play(&mut s, mv);
                    let after: u32 = s.health.iter().map(|&h| h as u32).sum();
                    assert_eq!(before, after + 1);
                }
                assert!(s.ply <= g.max_plies());
                assert!(g.rewards(&s).unwrap().sole_winner().is_some());
            }
        }
    }
}
