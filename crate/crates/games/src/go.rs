//! Liberty bookkeeping shared by Atarigo and (two- and three-player) Nogo.

use crate::grid::{bit, Bits, Grid};

/// What placing a stone would do, evaluated before anything is removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Placement {
    /// Some adjacent opposing group is left without liberties.
    pub captures: bool,
    /// The placed stone's own group is left without liberties.
    pub suicide: bool,
}

/// Classifies placing `player`'s stone on empty `cell`.
pub fn placement(grid: &Grid, stones: &[Bits], player: usize, cell: usize) -> Placement {
    let b = bit(cell);
    let occupied = stones.iter().fold(b, |a, s| a | s);
    let empty = grid.full() & !occupied;
    let adjacent = grid.neighbors4(b);

    let suicide = adjacent & empty == 0 && {
        let group = grid.group4(stones[player] | b, b);
        grid.neighbors4(group) & empty == 0
    };

    let mut captures = false;
    'outer: for (q, &theirs) in stones.iter().enumerate() {
        if q == player {
            continue;
        }
        let mut touching = adjacent & theirs;
        while touching != 0 {
            let seed = touching & touching.wrapping_neg();
            let group = grid.group4(theirs, seed);
            if grid.neighbors4(group) & empty == 0 {
                captures = true;
                break 'outer;
            }
            touching &= !group;
        }
    }
    Placement { captures, suicide }
}

/// Liberties of the group containing `cell`, by flood fill.
pub fn liberties(grid: &Grid, stones: &[Bits], cell: usize) -> u32 {
    let b = bit(cell);
    let Some(owner) = stones.iter().position(|s| s & b != 0) else {
        return 0;
    };
    let occupied = stones.iter().fold(0, |a, s| a | s);
    let group = grid.group4(stones[owner], b);
    (grid.neighbors4(group) & grid.full() & !occupied).count_ones()
}
