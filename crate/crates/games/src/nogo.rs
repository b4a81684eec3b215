//! Nogo: Go in which captures and suicides are both forbidden. The first
//! player without a legal placement loses.

use mcps_core::zobrist::ZobristTable;
use mcps_core::{CodeId, CodeMode, Game, PlayerId, RewardVector};
use rand::Rng;

use crate::go::placement;
use crate::grid::{bit, cells, nth_cell, Bits, Cell, Grid};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NogoState {
    stones: [Bits; 2],
    to_move: PlayerId,
    ply: u32,
    hash: u64,
}

impl NogoState {
    pub fn stones(&self) -> &[Bits; 2] {
        &self.stones
    }
}

#[derive(Debug, Clone)]
pub struct Nogo {
    name: String,
    grid: Grid,
    zobrist: ZobristTable,
}

impl Nogo {
    pub fn new(size: usize) -> Self {
        let grid = Grid::new(size, size);
        Nogo {
            name: format!("nogo{size}"),
            grid,
            zobrist: ZobristTable::new(grid.cells(), 2, 2, 0x6e6f_676f),
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// True iff `player` may place on empty `cell`: the placement neither
    /// removes the last liberty of an adjacent group nor leaves its own group
    /// without liberties.
    pub fn move_legal(&self, stones: &[Bits; 2], cell: usize, player: PlayerId) -> bool {
        let p = placement(&self.grid, stones, player.index(), cell);
        !p.captures && !p.suicide
    }

    fn empty(&self, s: &NogoState) -> Bits {
        self.grid.full() & !(s.stones[0] | s.stones[1])
    }

    /// Position with the given stones and side to move, for tests and tools.
    pub fn state_from(&self, stones: [Bits; 2], to_move: PlayerId) -> NogoState {
        let ply = (stones[0] | stones[1]).count_ones();
        let mut hash = self.zobrist.side(to_move.index());
        for (p, &s) in stones.iter().enumerate() {
            for c in cells(s) {
                hash ^= self.zobrist.key(c, p);
            }
        }
        NogoState {
            stones,
            to_move,
            ply,
            hash,
        }
    }
}

impl Game for Nogo {
    type State = NogoState;
    type Move = Cell;

    fn name(&self) -> &str {
        &self.name
    }

    fn num_players(&self) -> usize {
        2
    }

    fn initial_state(&self) -> NogoState {
        self.state_from([0, 0], PlayerId(0))
    }

    fn to_move(&self, s: &NogoState) -> PlayerId {
        s.to_move
    }

    fn ply(&self, s: &NogoState) -> u32 {
        s.ply
    }

    fn generate_moves(&self, s: &NogoState, out: &mut Vec<Cell>) {
        for c in cells(self.empty(s)) {
            if self.move_legal(&s.stones, c, s.to_move) {
                out.push(Cell(c as u8));
            }
        }
    }

    fn is_terminal(&self, s: &NogoState) -> bool {
        !cells(self.empty(s)).any(|c| self.move_legal(&s.stones, c, s.to_move))
    }

    fn random_move<R: Rng + ?Sized>(
        &self,
        s: &NogoState,
        rng: &mut R,
        _scratch: &mut Vec<Cell>,
    ) -> Option<Cell> {
        // Drawing candidates without replacement until one is legal is uniform
        // over the legal cells.
        let mut candidates = self.empty(s);
        while candidates != 0 {
            let n = candidates.count_ones() as usize;
            let c = nth_cell(candidates, rng.random_range(0..n));
            if self.move_legal(&s.stones, c, s.to_move) {
                return Some(Cell(c as u8));
            }
            candidates &= !bit(c);
        }
        None
    }

    fn play(&self, s: &mut NogoState, mv: Cell) {
        let p = s.to_move.index();
        let next = 1 - p;
        s.stones[p] |= bit(mv.index());
        s.hash ^= self.zobrist.key(mv.index(), p) ^ self.zobrist.side(p) ^ self.zobrist.side(next);
        s.to_move = PlayerId(next as u8);
        s.ply += 1;
    }

    fn terminal_rewards(&self, s: &NogoState) -> RewardVector {
        RewardVector::win(s.to_move.next(2), 2)
    }

    fn code(&self, s: &NogoState, mv: Cell, _mode: CodeMode) -> CodeId {
        CodeId((s.to_move.index() * self.grid.cells() + mv.index()) as u32)
    }

    fn code_universe(&self, _mode: CodeMode) -> usize {
        2 * self.grid.cells()
    }

    fn state_key(&self, s: &NogoState) -> u64 {
        s.hash
    }

    fn max_plies(&self) -> u32 {
        self.grid.cells() as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mcps_core::search::simulate_playout;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn opening_has_every_cell() {
        let g = Nogo::new(5);
        assert_eq!(g.legal_moves(&g.initial_state()).unwrap().len(), 25);
    }

    #[test]
    fn capture_and_suicide_are_illegal() {
        let g = Nogo::new(5);
        // O at (0,0) with X at (0,1): X at (1,0) would capture.
        let s = g.state_from([bit(1), bit(0)], PlayerId(0));
        assert!(!g.move_legal(s.stones(), 5, PlayerId(0)));
        // For O, (1,0) extends its group to liberties (2,0),(1,1): legal.
        assert!(g.move_legal(s.stones(), 5, PlayerId(1)));
        // X at (0,1) and (1,0): O at (0,0) is suicide.
        let s = g.state_from([bit(1) | bit(5), 0], PlayerId(1));
        assert!(!g.move_legal(s.stones(), 0, PlayerId(1)));
        assert!(!g.legal_moves(&s).unwrap().contains(&Cell(0)));
    }

    #[test]
    fn no_group_ever_loses_its_last_liberty() {
        let g = Nogo::new(5);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let mut s = g.initial_state();
            while let Some(mv) = g.random_move(&s, &mut rng, &mut Vec::new()) {
                g.play(&mut s, mv);
                for c in cells(s.stones[0] | s.stones[1]) {
                    assert!(crate::go::liberties(&g.grid, &s.stones, c) > 0);
                }
            }
            let r = g.rewards(&s).unwrap();
            assert_eq!(r.sole_winner(), Some(s.to_move.next(2)));
        }
    }

    #[test]
    fn random_move_is_uniform_over_legal() {
        let g = Nogo::new(5);
        let s = g.state_from([bit(1), bit(0)], PlayerId(0));
        let legal = g.legal_moves(&s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut hits = std::collections::HashMap::new();
        let draws = 22_000;
        for _ in 0..draws {
            *hits
                .entry(g.random_move(&s, &mut rng, &mut Vec::new()).unwrap())
                .or_insert(0) += 1;
        }
        assert_eq!(hits.len(), legal.len());
        let expected = draws as f64 / legal.len() as f64;
        for &h in hits.values() {
            assert!((h as f64 - expected).abs() < 5.0 * expected.sqrt());
        }
    }

    #[test]
    fn playout_codes_replay() {
        let g = Nogo::new(5);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (codes, _) = simulate_playout(&g, &g.initial_state(), &mut rng, CodeMode::Exact);
        let mut s = g.initial_state();
        for c in codes {
            let mv = Cell((c.0 as usize % 25) as u8);
            assert_eq!(g.code(&s, mv, CodeMode::Exact), c);
            s = g.apply(&s, mv).unwrap();
        }
        assert!(g.is_terminal(&s));
    }
}
