//! Atarigo (capture Go): the first player to capture wins. Suicide is
//! illegal unless the move captures. A player left without a legal move loses.

use mcps_core::zobrist::ZobristTable;
use mcps_core::{CodeId, CodeMode, Game, PlayerId, RewardVector};
use rand::Rng;

use crate::go::placement;
use crate::grid::{bit, cells, nth_cell, Bits, Cell, Grid};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtarigoState {
    stones: [Bits; 2],
    to_move: PlayerId,
    ply: u32,
    winner: Option<PlayerId>,
    hash: u64,
}

impl AtarigoState {
    pub fn stones(&self) -> &[Bits; 2] {
        &self.stones
    }

    pub fn winner(&self) -> Option<PlayerId> {
        self.winner
    }
}

#[derive(Debug, Clone)]
pub struct Atarigo {
    name: String,
    grid: Grid,
    zobrist: ZobristTable,
}

impl Atarigo {
    pub fn new(size: usize) -> Self {
        let grid = Grid::new(size, size);
        Atarigo {
            name: format!("atarigo{size}"),
            grid,
            zobrist: ZobristTable::new(grid.cells(), 2, 2, 0x6174_6172),
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn move_legal(&self, stones: &[Bits; 2], cell: usize, player: PlayerId) -> bool {
        let p = placement(&self.grid, stones, player.index(), cell);
        p.captures || !p.suicide
    }

    /// True iff some enemy group next to `last_move` has no liberties on the
    /// board as it stands.
    pub fn capture_check(&self, stones: &[Bits; 2], last_move: usize) -> bool {
        let b = bit(last_move);
        let Some(owner) = stones.iter().position(|s| s & b != 0) else {
            return false;
        };
        let theirs = stones[1 - owner];
        let empty = self.grid.full() & !(stones[0] | stones[1]);
        let mut touching = self.grid.neighbors4(b) & theirs;
        while touching != 0 {
            let seed = touching & touching.wrapping_neg();
            let group = self.grid.group4(theirs, seed);
            if self.grid.neighbors4(group) & empty == 0 {
                return true;
            }
            touching &= !group;
        }
        false
    }

    /// Position with the given stones and side to move, for tests and tools.
    pub fn state_from(&self, stones: [Bits; 2], to_move: PlayerId) -> AtarigoState {
        let mut hash = self.zobrist.side(to_move.index());
        for (p, &s) in stones.iter().enumerate() {
            for c in cells(s) {
                hash ^= self.zobrist.key(c, p);
            }
        }
        AtarigoState {
            stones,
            to_move,
            ply: (stones[0] | stones[1]).count_ones(),
            winner: None,
            hash,
        }
    }

    fn empty(&self, s: &AtarigoState) -> Bits {
        self.grid.full() & !(s.stones[0] | s.stones[1])
    }
}

impl Game for Atarigo {
    type State = AtarigoState;
    type Move = Cell;

    fn name(&self) -> &str {
        &self.name
    }

    fn num_players(&self) -> usize {
        2
    }

    fn initial_state(&self) -> AtarigoState {
        self.state_from([0, 0], PlayerId(0))
    }

    fn to_move(&self, s: &AtarigoState) -> PlayerId {
        s.to_move
    }

    fn ply(&self, s: &AtarigoState) -> u32 {
        s.ply
    }

    fn generate_moves(&self, s: &AtarigoState, out: &mut Vec<Cell>) {
        if s.winner.is_some() {
            return;
        }
        for c in cells(self.empty(s)) {
            if self.move_legal(&s.stones, c, s.to_move) {
                out.push(Cell(c as u8));
            }
        }
    }

    fn is_terminal(&self, s: &AtarigoState) -> bool {
        s.winner.is_some()
            || !cells(self.empty(s)).any(|c| self.move_legal(&s.stones, c, s.to_move))
    }

    fn random_move<R: Rng + ?Sized>(
        &self,
        s: &AtarigoState,
        rng: &mut R,
        _scratch: &mut Vec<Cell>,
    ) -> Option<Cell> {
        if s.winner.is_some() {
            return None;
        }
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

    fn play(&self, s: &mut AtarigoState, mv: Cell) {
        let p = s.to_move.index();
        s.stones[p] |= bit(mv.index());
        s.hash ^= self.zobrist.key(mv.index(), p) ^ self.zobrist.side(p) ^ self.zobrist.side(1 - p);
        // Captured stones stay on the board: the game is over anyway.
        if self.capture_check(&s.stones, mv.index()) {
            s.winner = Some(s.to_move);
        }
        s.to_move = PlayerId(1 - p as u8);
        s.ply += 1;
    }

    fn terminal_rewards(&self, s: &AtarigoState) -> RewardVector {
        let winner = s.winner.unwrap_or(s.to_move.next(2));
        RewardVector::win(winner, 2)
    }

    fn code(&self, s: &AtarigoState, mv: Cell, _mode: CodeMode) -> CodeId {
        CodeId((s.to_move.index() * self.grid.cells() + mv.index()) as u32)
    }

    fn code_universe(&self, _mode: CodeMode) -> usize {
        2 * self.grid.cells()
    }

    fn state_key(&self, s: &AtarigoState) -> u64 {
        s.hash
    }

    fn max_plies(&self) -> u32 {
        self.grid.cells() as u32
    }
}
