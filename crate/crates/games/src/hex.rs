//! Hex on a rhombus. Player 0 joins the top and bottom rows, player 1 the
//! left and right columns. Player 0's first stone is forced onto a fixed cell
//! and there is no swap.

use mcps_core::zobrist::ZobristTable;
use mcps_core::{CodeId, CodeMode, Game, PlayerId, RewardVector};
use rand::Rng;

use crate::grid::{bit, cells, nth_cell, Bits, Cell, Grid};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HexState {
    stones: [Bits; 2],
    to_move: PlayerId,
    ply: u32,
    winner: Option<PlayerId>,
    hash: u64,
}

impl HexState {
    pub fn stones(&self) -> &[Bits; 2] {
        &self.stones
    }

    pub fn winner(&self) -> Option<PlayerId> {
        self.winner
    }
}

#[derive(Debug, Clone)]
pub struct Hex {
    name: String,
    grid: Grid,
    forced_opening: Option<usize>,
    zobrist: ZobristTable,
}

impl Hex {
    /// `forced_opening` restricts player 0's first move to that cell.
    pub fn new(size: usize, forced_opening: Option<usize>) -> Self {
        let grid = Grid::new(size, size);
        Hex {
            name: format!("hex{size}"),
            grid,
            forced_opening,
            zobrist: ZobristTable::new(grid.cells(), 2, 2, 0x6865_7821),
        }
    }

    /// 7x7 with the first stone on (2, 2).
    pub fn standard() -> Self {
        let g = Grid::new(7, 7);
        Hex::new(7, Some(g.cell(2, 2)))
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn forced_opening(&self) -> Option<usize> {
        self.forced_opening
    }

    fn edges(&self, player: usize) -> (Bits, Bits) {
        let n = self.grid.height;
        if player == 0 {
            (self.grid.row_mask(0), self.grid.row_mask(n - 1))
        } else {
            (
                self.grid.col_mask(0),
                self.grid.col_mask(self.grid.width - 1),
            )
        }
    }

    /// True iff `player`'s stones link that player's two sides, found by a
    /// breadth-first search over coordinates.
    pub fn connected(&self, stones: &[Bits; 2], player: PlayerId) -> bool {
        let g = &self.grid;
        let mine = stones[player.index()];
        let on_start = |c: usize| {
            if player.0 == 0 {
                g.row(c) == 0
            } else {
                g.col(c) == 0
            }
        };
        let on_goal = |c: usize| {
            if player.0 == 0 {
                g.row(c) == g.height - 1
            } else {
                g.col(c) == g.width - 1
            }
        };
        let mut seen = vec![false; g.cells()];
        let mut queue: std::collections::VecDeque<usize> =
            cells(mine).filter(|&c| on_start(c)).collect();
        for &c in &queue {
            seen[c] = true;
        }
        while let Some(c) = queue.pop_front() {
            if on_goal(c) {
                return true;
            }
            for (dr, dc) in [(-1, 0), (1, 0), (0, -1), (0, 1), (-1, 1), (1, -1)] {
                if let Some(n) = g.offset(c, dr, dc) {
                    if mine & bit(n) != 0 && !seen[n] {
                        seen[n] = true;
                        queue.push_back(n);
                    }
                }
            }
        }
        false
    }

    fn empty(&self, s: &HexState) -> Bits {
        self.grid.full() & !(s.stones[0] | s.stones[1])
    }

    fn forced(&self, s: &HexState) -> Option<usize> {
        self.forced_opening.filter(|_| s.ply == 0)
    }
}

impl Game for Hex {
    type State = HexState;
    type Move = Cell;

    fn name(&self) -> &str {
        &self.name
    }

    fn num_players(&self) -> usize {
        2
    }

    fn initial_state(&self) -> HexState {
        HexState {
            stones: [0, 0],
            to_move: PlayerId(0),
            ply: 0,
            winner: None,
            hash: self.zobrist.side(0),
        }
    }

    fn to_move(&self, s: &HexState) -> PlayerId {
        s.to_move
    }

    fn ply(&self, s: &HexState) -> u32 {
        s.ply
    }

    fn generate_moves(&self, s: &HexState, out: &mut Vec<Cell>) {
        if s.winner.is_some() {
            return;
        }
        if let Some(c) = self.forced(s) {
            out.push(Cell(c as u8));
            return;
        }
        out.extend(cells(self.empty(s)).map(|c| Cell(c as u8)));
    }

    fn is_terminal(&self, s: &HexState) -> bool {
        s.winner.is_some()
    }

    fn random_move<R: Rng + ?Sized>(
        &self,
        s: &HexState,
        rng: &mut R,
        _scratch: &mut Vec<Cell>,
    ) -> Option<Cell> {
        if s.winner.is_some() {
            return None;
        }
        if let Some(c) = self.forced(s) {
            return Some(Cell(c as u8));
        }
        let empty = self.empty(s);
        let n = empty.count_ones() as usize;
        Some(Cell(nth_cell(empty, rng.random_range(0..n)) as u8))
    }

    fn play(&self, s: &mut HexState, mv: Cell) {
        let p = s.to_move.index();
        let b = bit(mv.index());
        s.stones[p] |= b;
        s.hash ^= self.zobrist.key(mv.index(), p) ^ self.zobrist.side(p) ^ self.zobrist.side(1 - p);
        let (a, z) = self.edges(p);
        let group = self.grid.group6(s.stones[p], b);
        if group & a != 0 && group & z != 0 {
            s.winner = Some(s.to_move);
        }
        s.to_move = PlayerId(1 - p as u8);
        s.ply += 1;
    }

    fn terminal_rewards(&self, s: &HexState) -> RewardVector {
        RewardVector::win(s.winner.expect("hex game has no winner yet"), 2)
    }

    fn code(&self, s: &HexState, mv: Cell, _mode: CodeMode) -> CodeId {
        CodeId((s.to_move.index() * self.grid.cells() + mv.index()) as u32)
    }

    fn code_universe(&self, _mode: CodeMode) -> usize {
        2 * self.grid.cells()
    }

    fn state_key(&self, s: &HexState) -> u64 {
        s.hash
    }

    fn max_plies(&self) -> u32 {
        self.grid.cells() as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn first_move_is_forced() {
        let g = Hex::standard();
        let s = g.initial_state();
        assert_eq!(g.legal_moves(&s).unwrap(), vec![Cell(16)]);
        let s = g.apply(&s, Cell(16)).unwrap();
        assert_eq!(g.legal_moves(&s).unwrap().len(), 48);
        assert!(g.apply(&g.initial_state(), Cell(0)).is_err());
    }

    #[test]
    fn straight_lines_connect() {
        let g = Hex::new(7, None);
        let top_to_bottom = (0..7).fold(0, |m, r| m | bit(g.grid.cell(r, 3)));
        assert!(g.connected(&[top_to_bottom, 0], PlayerId(0)));
        assert!(!g.connected(&[0, top_to_bottom], PlayerId(1)));
        let row = g.grid.row_mask(0);
        assert!(g.connected(&[0, row], PlayerId(1)));
        assert!(!g.connected(&[0, 0], PlayerId(0)));
        assert!(!g.connected(&[0, 0], PlayerId(1)));
    }

    #[test]
    fn full_board_has_exactly_one_connection() {
        let g = Hex::new(7, None);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..1000 {
            let mut stones = [0 as Bits; 2];
            for c in 0..49 {
                stones[rng.random_range(0..2)] |= bit(c);
            }
            let a = g.connected(&stones, PlayerId(0));
            let b = g.connected(&stones, PlayerId(1));
            assert!(a ^ b);
        }
    }

    #[test]
    fn incremental_winner_matches_search() {
        let g = Hex::standard();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..300 {
            let mut s = g.initial_state();
            while let Some(mv) = g.random_move(&s, &mut rng, &mut Vec::new()) {
                let mover = s.to_move;
                g.play(&mut s, mv);
                let won = g.connected(&s.stones, mover);
                assert_eq!(s.winner == Some(mover), won);
            }
            assert!(s.ply <= 49);
            let r = g.rewards(&s).unwrap();
            assert!(r.sole_winner().is_some());
        }
    }
}
