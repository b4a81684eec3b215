//! Breakthrough and Knightthrough: two rows of pieces each, moving only
//! forward; the first piece to reach the far row wins. Capturing every enemy
//! piece also wins, and a player with no legal move loses.

use mcps_core::zobrist::ZobristTable;
use mcps_core::{CodeId, CodeMode, Game, PlayerId, RewardVector};

use crate::grid::{bit, cells, Bits, Grid};

/// Piece on `from` taking jump number `jump` of the game's jump table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub from: u8,
    pub jump: u8,
}

#[derive(Debug, Clone, Copy)]
struct Jump {
    /// Forward rows and columns; rows flip sign for player 1.
    dr: isize,
    dc: isize,
    may_capture: bool,
}

const PAWN: [Jump; 3] = [
    Jump {
        dr: 1,
        dc: -1,
        may_capture: true,
    },
    Jump {
        dr: 1,
        dc: 0,
        may_capture: false,
    },
    Jump {
        dr: 1,
        dc: 1,
        may_capture: true,
    },
];

const KNIGHT: [Jump; 4] = [
    Jump {
        dr: 2,
        dc: -1,
        may_capture: true,
    },
    Jump {
        dr: 2,
        dc: 1,
        may_capture: true,
    },
    Jump {
        dr: 1,
        dc: -2,
        may_capture: true,
    },
    Jump {
        dr: 1,
        dc: 2,
        may_capture: true,
    },
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaceState {
    pieces: [Bits; 2],
    to_move: PlayerId,
    ply: u32,
    winner: Option<PlayerId>,
    hash: u64,
}

impl RaceState {
    pub fn pieces(&self) -> &[Bits; 2] {
        &self.pieces
    }

    pub fn winner(&self) -> Option<PlayerId> {
        self.winner
    }
}

#[derive(Debug, Clone)]
pub struct Race {
    name: String,
    grid: Grid,
    jumps: &'static [Jump],
    /// `targets[player][from * jumps + j]`
    targets: [Vec<Option<u8>>; 2],
    goal: [Bits; 2],
    max_plies: u32,
    zobrist: ZobristTable,
}

impl Race {
    fn new(name: &str, size: usize, jumps: &'static [Jump], seed: u64) -> Self {
        let grid = Grid::new(size, size);
        let table = |player: usize| {
            let sign = if player == 0 { 1 } else { -1 };
            (0..grid.cells())
                .flat_map(|c| jumps.iter().map(move |j| (c, j)))
                .map(|(c, j)| grid.offset(c, sign * j.dr, j.dc).map(|t| t as u8))
                .collect()
        };
        // Every move advances a piece at least one row.
        let max_plies = (2 * 2 * size * (size - 1)) as u32;
        Race {
            name: format!("{name}{size}"),
            grid,
            jumps,
            targets: [table(0), table(1)],
            goal: [grid.row_mask(size - 1), grid.row_mask(0)],
            max_plies,
            zobrist: ZobristTable::new(grid.cells(), 2, 2, seed),
        }
    }

    pub fn breakthrough(size: usize) -> Self {
        Race::new("breakthrough", size, &PAWN, 0x6272_6b74)
    }

    pub fn knightthrough(size: usize) -> Self {
        Race::new("knightthrough", size, &KNIGHT, 0x6b6e_6974)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn jumps_per_piece(&self) -> usize {
        self.jumps.len()
    }

    /// Position with the given pieces and side to move, for tests and tools.
    pub fn state_from(&self, pieces: [Bits; 2], to_move: PlayerId) -> RaceState {
        let mut hash = self.zobrist.side(to_move.index());
        for (p, &s) in pieces.iter().enumerate() {
            for c in cells(s) {
                hash ^= self.zobrist.key(c, p);
            }
        }
        RaceState {
            pieces,
            to_move,
            ply: 0,
            winner: None,
            hash,
        }
    }

    /// Target cell of `step` for `player`, if on the board.
    pub fn target(&self, player: PlayerId, step: Step) -> Option<usize> {
        self.targets[player.index()][step.from as usize * self.jumps.len() + step.jump as usize]
            .map(usize::from)
    }

    /// Every legal step of `player`'s pieces, by ascending square then jump.
    pub fn moves_for(&self, pieces: &[Bits; 2], player: PlayerId, out: &mut Vec<Step>) {
        let p = player.index();
        let (mine, theirs) = (pieces[p], pieces[1 - p]);
        for from in cells(mine) {
            for (j, jump) in self.jumps.iter().enumerate() {
                let Some(t) = self.targets[p][from * self.jumps.len() + j] else {
                    continue;
                };
                let tb = bit(t as usize);
                let ok = if jump.may_capture {
                    mine & tb == 0
                } else {
                    (mine | theirs) & tb == 0
                };
                if ok {
                    out.push(Step {
                        from: from as u8,
                        jump: j as u8,
                    });
                }
            }
        }
    }
}

impl Game for Race {
    type State = RaceState;
    type Move = Step;

    fn name(&self) -> &str {
        &self.name
    }

    fn num_players(&self) -> usize {
        2
    }

    fn initial_state(&self) -> RaceState {
        let w = self.grid.width;
        let h = self.grid.height;
        let home = |a: usize, b: usize| self.grid.row_mask(a) | self.grid.row_mask(b);
        debug_assert!(w > 0);
        self.state_from([home(0, 1), home(h - 2, h - 1)], PlayerId(0))
    }

    fn to_move(&self, s: &RaceState) -> PlayerId {
        s.to_move
    }

    fn ply(&self, s: &RaceState) -> u32 {
        s.ply
    }

    fn generate_moves(&self, s: &RaceState, out: &mut Vec<Step>) {
        if s.winner.is_none() {
            self.moves_for(&s.pieces, s.to_move, out);
        }
    }

    fn play(&self, s: &mut RaceState, mv: Step) {
        let p = s.to_move.index();
        let t = self.target(s.to_move, mv).expect("step leaves the board");
        let (from, to) = (bit(mv.from as usize), bit(t));
        s.pieces[p] ^= from | to;
        s.hash ^= self.zobrist.key(mv.from as usize, p) ^ self.zobrist.key(t, p);
        if s.pieces[1 - p] & to != 0 {
            s.pieces[1 - p] &= !to;
            s.hash ^= self.zobrist.key(t, 1 - p);
        }
        if to & self.goal[p] != 0 || s.pieces[1 - p] == 0 {
            s.winner = Some(s.to_move);
        }
        s.hash ^= self.zobrist.side(p) ^ self.zobrist.side(1 - p);
        s.to_move = PlayerId(1 - p as u8);
        s.ply += 1;
    }

    fn terminal_rewards(&self, s: &RaceState) -> RewardVector {
        RewardVector::win(s.winner.unwrap_or(s.to_move.next(2)), 2)
    }

    fn code(&self, s: &RaceState, mv: Step, _mode: CodeMode) -> CodeId {
        let per_player = self.grid.cells() * self.jumps.len();
        let local = mv.from as usize * self.jumps.len() + mv.jump as usize;
        CodeId((s.to_move.index() * per_player + local) as u32)
    }

    fn code_universe(&self, _mode: CodeMode) -> usize {
        2 * self.grid.cells() * self.jumps.len()
    }

    fn state_key(&self, s: &RaceState) -> u64 {
        s.hash
    }

    fn max_plies(&self) -> u32 {
        self.max_plies
    }
}
