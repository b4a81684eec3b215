//! Freestyle Gomoku: five or more in a row wins, a full board is a draw.

use mcps_core::zobrist::ZobristTable;
use mcps_core::{CodeId, CodeMode, Game, PlayerId, RewardVector};
use rand::Rng;

use crate::grid::{bit, cells, nth_cell, Bits, Cell, Grid};

const LINE: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GomokuState {
    stones: [Bits; 2],
    to_move: PlayerId,
    ply: u32,
    winner: Option<PlayerId>,
    hash: u64,
}

impl GomokuState {
    pub fn stones(&self) -> &[Bits; 2] {
        &self.stones
    }

    pub fn winner(&self) -> Option<PlayerId> {
        self.winner
    }
}

#[derive(Debug, Clone)]
pub struct Gomoku {
    name: String,
    grid: Grid,
    zobrist: ZobristTable,
}

impl Gomoku {
    pub fn new(size: usize) -> Self {
        let grid = Grid::new(size, size);
        Gomoku {
            name: format!("gomoku{size}"),
            grid,
            zobrist: ZobristTable::new(grid.cells(), 2, 2, 0x676f_6d6b),
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// The owner of `last_move` if it lies on a line of at least five of
    /// that owner's stones.
    pub fn winner_at(&self, stones: &[Bits; 2], last_move: usize) -> Option<PlayerId> {
        let owner = stones.iter().position(|s| s & bit(last_move) != 0)?;
        let mine = stones[owner];
        let run = |dr: isize, dc: isize| {
            let mut n = 0;
            let mut c = last_move;
            while let Some(next) = self.grid.offset(c, dr, dc) {
                if mine & bit(next) == 0 {
                    break;
                }
                n += 1;
                c = next;
            }
            n
        };
        [(0, 1), (1, 0), (1, 1), (1, -1)]
            .into_iter()
            .any(|(dr, dc)| 1 + run(dr, dc) + run(-dr, -dc) >= LINE)
            .then_some(PlayerId(owner as u8))
    }

    fn empty(&self, s: &GomokuState) -> Bits {
        self.grid.full() & !(s.stones[0] | s.stones[1])
    }
}

impl Game for Gomoku {
    type State = GomokuState;
    type Move = Cell;

    fn name(&self) -> &str {
        &self.name
    }

    fn num_players(&self) -> usize {
        2
    }

    fn initial_state(&self) -> GomokuState {
        GomokuState {
            stones: [0, 0],
            to_move: PlayerId(0),
            ply: 0,
            winner: None,
            hash: self.zobrist.side(0),
        }
    }

    fn to_move(&self, s: &GomokuState) -> PlayerId {
        s.to_move
    }

    fn ply(&self, s: &GomokuState) -> u32 {
        s.ply
    }

    fn generate_moves(&self, s: &GomokuState, out: &mut Vec<Cell>) {
        if s.winner.is_none() {
            out.extend(cells(self.empty(s)).map(|c| Cell(c as u8)));
        }
    }

    fn is_terminal(&self, s: &GomokuState) -> bool {
        s.winner.is_some() || self.empty(s) == 0
    }

    fn random_move<R: Rng + ?Sized>(
        &self,
        s: &GomokuState,
        rng: &mut R,
        _scratch: &mut Vec<Cell>,
    ) -> Option<Cell> {
        let empty = self.empty(s);
        if s.winner.is_some() || empty == 0 {
            return None;
        }
        let n = empty.count_ones() as usize;
        Some(Cell(nth_cell(empty, rng.random_range(0..n)) as u8))
    }

    fn play(&self, s: &mut GomokuState, mv: Cell) {
        let p = s.to_move.index();
        s.stones[p] |= bit(mv.index());
        s.hash ^= self.zobrist.key(mv.index(), p) ^ self.zobrist.side(p) ^ self.zobrist.side(1 - p);
        s.winner = self.winner_at(&s.stones, mv.index());
        s.to_move = PlayerId(1 - p as u8);
        s.ply += 1;
    }

    fn terminal_rewards(&self, s: &GomokuState) -> RewardVector {
        match s.winner {
            Some(w) => RewardVector::win(w, 2),
            None => RewardVector::draw(2),
        }
    }

    fn code(&self, s: &GomokuState, mv: Cell, _mode: CodeMode) -> CodeId {
        CodeId((s.to_move.index() * self.grid.cells() + mv.index()) as u32)
    }

    fn code_universe(&self, _mode: CodeMode) -> usize {
        2 * self.grid.cells()
    }

    fn state_key(&self, s: &GomokuState) -> u64 {
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

    fn line(g: &Gomoku, row: usize, cols: std::ops::Range<usize>) -> Bits {
        cols.fold(0, |m, c| m | bit(g.grid.cell(row, c)))
    }

    #[test]
    fn five_wins_four_does_not() {
        let g = Gomoku::new(9);
        let five = line(&g, 4, 2..7);
        assert_eq!(
            g.winner_at(&[five, 0], g.grid.cell(4, 4)),
            Some(PlayerId(0))
        );
        let four = line(&g, 4, 2..6);
        assert_eq!(g.winner_at(&[four, 0], g.grid.cell(4, 2)), None);
    }

    #[test]
    fn overline_wins() {
        let g = Gomoku::new(9);
        let six = line(&g, 0, 1..7);
        assert_eq!(g.winner_at(&[0, six], g.grid.cell(0, 3)), Some(PlayerId(1)));
    }

    #[test]
    fn diagonals_both_ways() {
        let g = Gomoku::new(9);
        let down = (0..5).fold(0, |m, i| m | bit(g.grid.cell(i + 2, i + 1)));
        assert!(g.winner_at(&[down, 0], g.grid.cell(4, 3)).is_some());
        let up = (0..5).fold(0, |m, i| m | bit(g.grid.cell(8 - i, i)));
        assert!(g.winner_at(&[up, 0], g.grid.cell(8, 0)).is_some());
    }

    // Independent oracle: any five consecutive cells in any direction.
    fn has_five(g: &Gomoku, stones: Bits) -> bool {
        let n = 9isize;
        for r in 0..n {
            for c in 0..n {
                for (dr, dc) in [(0, 1), (1, 0), (1, 1), (1, -1)] {
                    let ok = (0..5).all(|k| {
                        let (rr, cc) = (r + k * dr, c + k * dc);
                        (0..n).contains(&rr)
                            && (0..n).contains(&cc)
                            && stones & bit(g.grid.cell(rr as usize, cc as usize)) != 0
                    });
                    if ok {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn incremental_check_matches_scan() {
        let g = Gomoku::new(9);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let mut s = g.initial_state();
            while let Some(mv) = g.random_move(&s, &mut rng, &mut Vec::new()) {
                let p = s.to_move.index();
                g.play(&mut s, mv);
                assert_eq!(s.winner.is_some(), has_five(&g, s.stones[p]));
            }
            let r = g.rewards(&s).unwrap();
            match s.winner {
                Some(_) => assert!(r.sole_winner().is_some()),
                None => assert_eq!(r.as_slice(), &[0.5, 0.5]),
            }
        }
    }
}
