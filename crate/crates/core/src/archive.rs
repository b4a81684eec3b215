//! Root playout archive backing the permutation statistics `(n̂, Q̂)`.
//!
//! Every playout played from the root is stored as the set of distinct codes
//! it contains plus its rewards. For each code the archive keeps a bitset
//! over playout indices; bit `i` of code `c` is set iff playout `i` contains
//! `c`. A [`DescentMask`] starts with every stored playout selected and is
//! ANDed with the bitset of each code chosen along a tree path, so at node
//! `s` it selects exactly the playouts containing every move of `s`.

use crate::bitset::Bitset;
use crate::error::SearchError;
use crate::game::{CodeId, PlayerId, RewardVector};
use crate::stats::{CodeTable, Tally};

/// One simulation from the root: every code played (tree part then random
/// part) and the terminal rewards.
#[derive(Debug, Clone, PartialEq)]
pub struct PlayoutRecord {
    pub index: usize,
    pub codes: Vec<CodeId>,
    pub rewards: RewardVector,
}

/// A stored playout reduced to its distinct codes, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct ArchivedPlayout {
    pub codes: Vec<CodeId>,
    pub rewards: RewardVector,
}

impl ArchivedPlayout {
    pub fn contains(&self, code: CodeId) -> bool {
        self.codes.binary_search(&code).is_ok()
    }
}

#[derive(Debug, Clone)]
pub struct PlayoutArchive {
    capacity: usize,
    membership: Vec<Option<Bitset>>,
    playouts: Vec<ArchivedPlayout>,
}

impl PlayoutArchive {
    /// Archive for up to `capacity` playouts. Bitsets are allocated per code
    /// on first appearance.
    pub fn new(capacity: usize) -> Self {
        PlayoutArchive {
            capacity,
            membership: Vec::new(),
            playouts: Vec::with_capacity(capacity),
        }
    }

    #[inline]
    pub fn capacity(&self) -> usize {
        self.capacity
    }

    #[inline]
    pub fn count(&self) -> usize {
        self.playouts.len()
    }

    pub fn playouts(&self) -> &[ArchivedPlayout] {
        &self.playouts
    }

    pub fn clear(&mut self) {
        self.playouts.clear();
        for b in self.membership.iter_mut().flatten() {
            b.clear_all();
        }
    }

    /// Playout-membership bitset of `code`, if the code was ever stored.
    #[inline]
    pub fn membership(&self, code: CodeId) -> Option<&Bitset> {
        self.membership.get(code.index()).and_then(Option::as_ref)
    }

    /// Stores `record` at column `record.index`, which must equal `count()`.
    pub fn insert(&mut self, record: &PlayoutRecord) -> Result<(), SearchError> {
        if self.count() >= self.capacity {
            return Err(SearchError::ArchiveFull {
                capacity: self.capacity,
            });
        }
        if record.index != self.count() {
            return Err(SearchError::RecordIndex {
                expected: self.count(),
                got: record.index,
            });
        }
        if record.codes.is_empty() {
            return Err(SearchError::EmptyRecord);
        }
        let mut codes = record.codes.clone();
        codes.sort_unstable();
        codes.dedup();
        self.insert_distinct(codes, record.rewards);
        Ok(())
    }

    /// Stores a playout whose codes are already distinct and ascending.
    pub(crate) fn insert_distinct(&mut self, codes: Vec<CodeId>, rewards: RewardVector) {
        debug_assert!(codes.windows(2).all(|w| w[0] < w[1]));
        let column = self.playouts.len();
        for &code in &codes {
            let i = code.index();
            if i >= self.membership.len() {
                self.membership.resize(i + 1, None);
            }
            self.membership[i]
                .get_or_insert_with(|| Bitset::new(self.capacity))
                .set(column);
        }
        self.playouts.push(ArchivedPlayout { codes, rewards });
    }

    /// Mask selecting every stored playout.
    pub fn full_mask(&self) -> DescentMask {
        DescentMask {
            bits: Bitset::with_prefix(self.capacity, self.count()),
        }
    }

    /// `mask AND membership[code]`.
    pub fn refine(&self, mask: &DescentMask, code: CodeId) -> DescentMask {
        let mut next = mask.clone();
        next.refine_in_place(self, code);
        next
    }

    /// `(n̂, Q̂)` for `code` under `mask`, recomputed from the bitsets.
    pub fn perm_counts(&self, mask: &DescentMask, code: CodeId, player: PlayerId) -> (u32, f64) {
        let t = self.perm_tally(mask, code);
        (t.count, t.mean(player))
    }

    /// Tally over playouts selected by `mask` that also contain `code`.
    pub fn perm_tally(&self, mask: &DescentMask, code: CodeId) -> Tally {
        let mut t = Tally::default();
        let Some(members) = self.membership(code) else {
            return t;
        };
        for (w, (m, c)) in mask.bits.words().iter().zip(members.words()).enumerate() {
            let mut both = m & c;
            while both != 0 {
                let i = w * 64 + both.trailing_zeros() as usize;
                both &= both - 1;
                t.add(&self.playouts[i].rewards);
            }
        }
        t
    }
}

/// Running intersection of membership bitsets along a tree path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentMask {
    bits: Bitset,
}

impl DescentMask {
    pub fn bits(&self) -> &Bitset {
        &self.bits
    }

    pub fn count(&self) -> usize {
        self.bits.count_ones()
    }

    #[inline]
    pub fn contains(&self, playout: usize) -> bool {
        self.bits.contains(playout)
    }

    pub fn refine_in_place(&mut self, archive: &PlayoutArchive, code: CodeId) {
        match archive.membership(code) {
            Some(members) => self.bits.and_assign(members),
            None => self.bits.clear_all(),
        }
    }
}

/// Per-node permutation statistics, maintained incrementally.
///
/// `last_processed` is the archive count at the previous update; the next
/// update only scans playouts stored after it.
#[derive(Debug, Clone)]
pub struct PermCache {
    last_processed: usize,
    table: CodeTable,
}

impl PermCache {
    pub fn new(universe: usize) -> Self {
        PermCache {
            last_processed: 0,
            table: CodeTable::for_universe(universe),
        }
    }

    #[inline]
    pub fn last_processed(&self) -> usize {
        self.last_processed
    }

    /// Folds in playouts `last_processed..archive.count()` selected by `mask`.
    pub fn update(&mut self, archive: &PlayoutArchive, mask: &DescentMask) {
        let end = archive.count();
        for i in mask.bits.ones_from(self.last_processed) {
            if i >= end {
                break;
            }
            let playout = &archive.playouts[i];
            for &code in &playout.codes {
                self.table.add(code, &playout.rewards);
            }
        }
        self.last_processed = end;
    }

    #[inline]
    pub fn get(&self, code: CodeId) -> Tally {
        self.table.get(code)
    }

    /// `(n̂, Q̂)` for `code` as of the last update.
    pub fn perm_counts(&self, code: CodeId, player: PlayerId) -> (u32, f64) {
        let t = self.get(code);
        (t.count, t.mean(player))
    }

    pub fn codes(&self) -> Vec<CodeId> {
        self.table.codes()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(index: usize, codes: &[u32], r: &[f64]) -> PlayoutRecord {
        PlayoutRecord {
            index,
            codes: codes.iter().map(|&c| CodeId(c)).collect(),
            rewards: RewardVector::new(r),
        }
    }

    fn three_playouts() -> PlayoutArchive {
        let mut a = PlayoutArchive::new(8);
        a.insert(&rec(0, &[1, 2, 3], &[1.0, 0.0])).unwrap();
        a.insert(&rec(1, &[2, 3], &[0.0, 1.0])).unwrap();
        a.insert(&rec(2, &[1, 3, 4], &[1.0, 0.0])).unwrap();
        a
    }

    #[test]
    fn perm_counts_examples() {
        let a = three_playouts();
        let p0 = PlayerId(0);
        let mask = a.refine(&a.full_mask(), CodeId(1));
        assert_eq!(a.perm_counts(&mask, CodeId(3), p0), (2, 1.0));
        let mask = a.refine(&a.full_mask(), CodeId(2));
        assert_eq!(a.perm_counts(&mask, CodeId(1), p0), (1, 1.0));
        let empty = PlayoutArchive::new(4);
        assert_eq!(
            empty.perm_counts(&empty.full_mask(), CodeId(1), p0),
            (0, 0.0)
        );
    }

    #[test]
    fn refine_examples() {
        let a = three_playouts();
        let full = a.full_mask();
        assert_eq!(full.count(), 3);
        let m = a.refine(&full, CodeId(1));
        assert_eq!(m.bits().iter_ones().collect::<Vec<_>>(), vec![0, 2]);
        let m = a.refine(&m, CodeId(4));
        assert_eq!(m.bits().iter_ones().collect::<Vec<_>>(), vec![2]);
        let m = a.refine(&a.refine(&full, CodeId(1)), CodeId(99));
        assert_eq!(m.count(), 0);
    }

    #[test]
    fn insert_examples() {
        let mut a = PlayoutArchive::new(4);
        a.insert(&rec(0, &[3, 5, 3], &[1.0, 0.0])).unwrap();
        assert!(a.membership(CodeId(3)).unwrap().contains(0));
        assert!(a.membership(CodeId(5)).unwrap().contains(0));
        let set: usize = (0..10)
            .filter_map(|c| a.membership(CodeId(c)))
            .map(Bitset::count_ones)
            .sum();
        assert_eq!(set, 2);
        a.insert(&rec(1, &[7], &[0.0, 1.0])).unwrap();
        assert_eq!(a.count(), 2);
        assert!(!a.membership(CodeId(7)).unwrap().contains(0));
        assert!(a.membership(CodeId(7)).unwrap().contains(1));
    }

    #[test]
    fn insert_errors() {
        let mut a = PlayoutArchive::new(1);
        assert_eq!(
            a.insert(&rec(1, &[1], &[1.0, 0.0])),
            Err(SearchError::RecordIndex {
                expected: 0,
                got: 1
            })
        );
        assert_eq!(
            a.insert(&rec(0, &[], &[1.0, 0.0])),
            Err(SearchError::EmptyRecord)
        );
        a.insert(&rec(0, &[1], &[1.0, 0.0])).unwrap();
        assert_eq!(
            a.insert(&rec(1, &[1], &[1.0, 0.0])),
            Err(SearchError::ArchiveFull { capacity: 1 })
        );
    }

    #[test]
    fn cache_catches_up_incrementally() {
        let mut a = three_playouts();
        let mut cache = PermCache::new(16);
        let mask = a.refine(&a.full_mask(), CodeId(3));
        cache.update(&a, &mask);
        assert_eq!(cache.last_processed(), 3);
        assert_eq!(cache.get(CodeId(3)).count, 3);
        a.insert(&rec(3, &[3, 9], &[0.0, 1.0])).unwrap();
        let mask = a.refine(&a.full_mask(), CodeId(3));
        cache.update(&a, &mask);
        assert_eq!(cache.get(CodeId(3)).count, 4);
        assert_eq!(cache.get(CodeId(9)), a.perm_tally(&mask, CodeId(9)));
    }
}
