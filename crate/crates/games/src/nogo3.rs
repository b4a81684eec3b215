//! Three-player Nogo. Seats rotate black, white, green. A player who has no
//! legal placement on their turn is out and is skipped from then on; the last
//! player left wins.

use mcps_core::zobrist::ZobristTable;
use mcps_core::{CodeId, CodeMode, Game, PlayerId, RewardVector};
use rand::Rng;

use crate::go::placement;
use crate::grid::{bit, cells, nth_cell, Bits, Cell, Grid};

const PLAYERS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nogo3State {
    stones: [Bits; PLAYERS],
    alive: [bool; PLAYERS],
    to_move: PlayerId,
    ply: u32,
    hash: u64,
}

impl Nogo3State {
    pub fn stones(&self) -> &[Bits; PLAYERS] {
        &self.stones
    }

    pub fn alive(&self) -> &[bool; PLAYERS] {
        &self.alive
    }

    fn alive_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }
}

#[derive(Debug, Clone)]
pub struct Nogo3 {
    name: String,
    grid: Grid,
    zobrist: ZobristTable,
}

impl Nogo3 {
    pub fn new(size: usize) -> Self {
        let grid = Grid::new(size, size);
        Nogo3 {
            name: format!("nogo{size}-3p"),
            grid,
            // One extra feature records eliminations.
            zobrist: ZobristTable::new(grid.cells() + 1, PLAYERS, PLAYERS, 0x6e67_6f33),
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn move_legal(&self, stones: &[Bits; PLAYERS], cell: usize, player: PlayerId) -> bool {
        let p = placement(&self.grid, stones, player.index(), cell);
        !p.captures && !p.suicide
    }

    fn empty(&self, s: &Nogo3State) -> Bits {
        self.grid.full() & !(s.stones[0] | s.stones[1] | s.stones[2])
    }

    fn has_move(&self, s: &Nogo3State, player: PlayerId) -> bool {
        cells(self.empty(s)).any(|c| self.move_legal(&s.stones, c, player))
    }

    /// Hands the turn to the next player still in, eliminating anyone who
    /// cannot move, until one player remains or someone can move.
    fn advance(&self, s: &mut Nogo3State) {
        let mut p = s.to_move;
        loop {
            p = p.next(PLAYERS);
            if !s.alive[p.index()] {
                continue;
            }
            if s.alive_count() == 1 || self.has_move(s, p) {
                break;
            }
            s.alive[p.index()] = false;
            s.hash ^= self.zobrist.key(self.grid.cells(), p.index());
        }
        s.hash ^= self.zobrist.side(s.to_move.index()) ^ self.zobrist.side(p.index());
        s.to_move = p;
    }
}

impl Game for Nogo3 {
    type State = Nogo3State;
    type Move = Cell;

    fn name(&self) -> &str {
        &self.name
    }

    fn num_players(&self) -> usize {
        PLAYERS
    }

    fn initial_state(&self) -> Nogo3State {
        Nogo3State {
            stones: [0; PLAYERS],
            alive: [true; PLAYERS],
            to_move: PlayerId(0),
            ply: 0,
            hash: self.zobrist.side(0),
        }
    }

    fn to_move(&self, s: &Nogo3State) -> PlayerId {
        s.to_move
    }

    fn ply(&self, s: &Nogo3State) -> u32 {
        s.ply
    }

    fn generate_moves(&self, s: &Nogo3State, out: &mut Vec<Cell>) {
        if s.alive_count() < 2 {
            return;
        }
        for c in cells(self.empty(s)) {
            if self.move_legal(&s.stones, c, s.to_move) {
                out.push(Cell(c as u8));
            }
        }
    }

    fn is_terminal(&self, s: &Nogo3State) -> bool {
        s.alive_count() < 2
    }

    fn random_move<R: Rng + ?Sized>(
        &self,
        s: &Nogo3State,
        rng: &mut R,
        _scratch: &mut Vec<Cell>,
    ) -> Option<Cell> {
        if s.alive_count() < 2 {
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

    fn play(&self, s: &mut Nogo3State, mv: Cell) {
        let p = s.to_move.index();
        s.stones[p] |= bit(mv.index());
        s.hash ^= self.zobrist.key(mv.index(), p);
        s.ply += 1;
        self.advance(s);
    }

    fn terminal_rewards(&self, s: &Nogo3State) -> RewardVector {
        let winner = s.alive.iter().position(|&a| a).expect("someone is left");
        RewardVector::win(PlayerId(winner as u8), PLAYERS)
    }

    fn code(&self, s: &Nogo3State, mv: Cell, _mode: CodeMode) -> CodeId {
        CodeId((s.to_move.index() * self.grid.cells() + mv.index()) as u32)
    }

    fn code_universe(&self, _mode: CodeMode) -> usize {
        PLAYERS * self.grid.cells()
    }

    fn state_key(&self, s: &Nogo3State) -> u64 {
        s.hash
    }

    fn max_plies(&self) -> u32 {
        self.grid.cells() as u32
    }
}
