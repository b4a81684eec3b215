//! Rectangular boards up to 128 cells as `u128` bitboards.
//!
//! Cell `(row, col)` is bit `row * width + col`.

pub type Bits = u128;

/// A placement move: the cell receiving the mover's stone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell(pub u8);

impl Cell {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[inline]
pub fn bit(cell: usize) -> Bits {
    1 << cell
}

/// Iterates set cells in ascending order.
#[inline]
pub fn cells(mut b: Bits) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if b == 0 {
            None
        } else {
            let c = b.trailing_zeros() as usize;
            b &= b - 1;
            Some(c)
        }
    })
}

/// Index of the `k`-th set bit (0-based); `k` must be below the popcount.
#[inline]
pub fn nth_cell(mut b: Bits, k: usize) -> usize {
    for _ in 0..k {
        b &= b - 1;
    }
    b.trailing_zeros() as usize
}

/// Board geometry with the masks needed for shift-based neighbourhoods.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub width: usize,
    pub height: usize,
    full: Bits,
    not_first_col: Bits,
    not_last_col: Bits,
}

impl Grid {
    pub const fn new(width: usize, height: usize) -> Self {
        assert!(width * height <= 128);
        let n = width * height;
        let full = if n == 128 { Bits::MAX } else { (1 << n) - 1 };
        let mut first_col: Bits = 0;
        let mut last_col: Bits = 0;
        let mut r = 0;
        while r < height {
            first_col |= 1 << (r * width);
            last_col |= 1 << (r * width + width - 1);
            r += 1;
        }
        Grid {
            width,
            height,
            full,
            not_first_col: full & !first_col,
            not_last_col: full & !last_col,
        }
    }

    #[inline]
    pub fn cells(&self) -> usize {
        self.width * self.height
    }

    #[inline]
    pub fn full(&self) -> Bits {
        self.full
    }

    #[inline]
    pub fn cell(&self, row: usize, col: usize) -> usize {
        row * self.width + col
    }

    #[inline]
    pub fn row(&self, cell: usize) -> usize {
        cell / self.width
    }

    #[inline]
    pub fn col(&self, cell: usize) -> usize {
        cell % self.width
    }

    /// `(row + dr, col + dc)` if it is on the board.
    #[inline]
    pub fn offset(&self, cell: usize, dr: isize, dc: isize) -> Option<usize> {
        let r = self.row(cell) as isize + dr;
        let c = self.col(cell) as isize + dc;
        if r < 0 || c < 0 || r >= self.height as isize || c >= self.width as isize {
            None
        } else {
            Some(self.cell(r as usize, c as usize))
        }
    }

    /// Orthogonal neighbours of every set cell.
    #[inline]
    pub fn neighbors4(&self, b: Bits) -> Bits {
        let w = self.width;
        (((b << 1) & self.not_first_col) | ((b >> 1) & self.not_last_col) | (b << w) | (b >> w))
            & self.full
    }

    /// Hex neighbours: orthogonal plus the (-1, +1) and (+1, -1) diagonals.
    #[inline]
    pub fn neighbors6(&self, b: Bits) -> Bits {
        let w = self.width;
        (self.neighbors4(b)
            | ((b >> (w - 1)) & self.not_first_col)
            | ((b << (w - 1)) & self.not_last_col))
            & self.full
    }

    /// Connected component of `seed` within `stones` (4-neighbourhood).
    #[inline]
    pub fn group4(&self, stones: Bits, seed: Bits) -> Bits {
        let mut g = seed & stones;
        loop {
            let next = (g | self.neighbors4(g)) & stones;
            if next == g {
                return g;
            }
            g = next;
        }
    }

    /// Connected component of `seed` within `stones` (hex neighbourhood).
    #[inline]
    pub fn group6(&self, stones: Bits, seed: Bits) -> Bits {
        let mut g = seed & stones;
        loop {
            let next = (g | self.neighbors6(g)) & stones;
            if next == g {
                return g;
            }
            g = next;
        }
    }

    pub fn row_mask(&self, row: usize) -> Bits {
        ((1 << self.width) - 1) << (row * self.width)
    }

    pub fn col_mask(&self, col: usize) -> Bits {
        (0..self.height).fold(0, |m, r| m | bit(self.cell(r, col)))
    }
}
