/// Fixed-length bitset over playout indices, stored as 64-bit words.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Bitset {
    words: Vec<u64>,
    len: usize,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// Bits `0..ones` set, the rest clear.
    pub fn with_prefix(len: usize, ones: usize) -> Self {
        assert!(ones <= len);
        let mut b = Self::new(len);
        let full = ones / 64;
        b.words[..full].fill(u64::MAX);
        if !ones.is_multiple_of(64) {
            b.words[full] = (1u64 << (ones % 64)) - 1;
        }
        b
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn clear_all(&mut self) {
        self.words.fill(0);
    }

    /// `self &= other`.
    #[inline]
    pub fn and_assign(&mut self, other: &Bitset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    /// Number of bits set in both `self` and `other`.
    pub fn and_count(&self, other: &Bitset) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Set bits in ascending order.
    pub fn iter_ones(&self) -> Ones<'_> {
        self.ones_from(0)
    }

    /// Set bits `>= start` in ascending order.
    pub fn ones_from(&self, start: usize) -> Ones<'_> {
        let word = start / 64;
        let current = match self.words.get(word) {
            Some(w) if start.is_multiple_of(64) => *w,
            Some(w) => *w & !((1u64 << (start % 64)) - 1),
            None => 0,
        };
        Ones {
            words: &self.words,
            word,
            current,
        }
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word += 1;
            self.current = *self.words.get(self.word)?;
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word * 64 + bit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prefix_and_membership() {
        let b = Bitset::with_prefix(130, 70);
        assert_eq!(b.count_ones(), 70);
        assert!(b.contains(69));
        assert!(!b.contains(70));
        assert!(!b.contains(500));
        assert_eq!(Bitset::with_prefix(128, 128).count_ones(), 128);
    }

    proptest! {
        #[test]
        fn iteration_matches_membership(bits in proptest::collection::btree_set(0usize..300, 0..60), start in 0usize..310) {
            let mut b = Bitset::new(300);
            for &i in &bits {
                b.set(i);
            }
            let all: Vec<usize> = b.iter_ones().collect();
            prop_assert_eq!(&all, &bits.iter().copied().collect::<Vec<_>>());
            let tail: Vec<usize> = b.ones_from(start).collect();
            prop_assert_eq!(tail, bits.range(start..).copied().collect::<Vec<_>>());
        }

        #[test]
        fn and_count_is_intersection(a in proptest::collection::btree_set(0usize..200, 0..50),
                                     c in proptest::collection::btree_set(0usize..200, 0..50)) {
            let mut x = Bitset::new(200);
            let mut y = Bitset::new(200);
            a.iter().for_each(|&i| x.set(i));
            c.iter().for_each(|&i| y.set(i));
            let expected = a.intersection(&c).count();
            prop_assert_eq!(x.and_count(&y), expected);
            x.and_assign(&y);
            prop_assert_eq!(x.count_ones(), expected);
        }
    }
}
