//! Compact bit sets: [`Bitset`] over reflection indices and [`GenSet`] over
//! simple generators.
//!
//! Reflection sets can outgrow a machine word (the dihedral group `I2(m)` has
//! `m` reflections), so [`Bitset`] is backed by a boxed word slice. Generator
//! sets never exceed 64 bits.

use std::fmt;

/// A fixed-capacity set of small indices, used for inversion sets over `T`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bitset {
    len: usize,
    words: Box<[u64]>,
}

impl Bitset {
    /// Empty set with capacity for indices `0..len`.
    pub fn new(len: usize) -> Self {
        Bitset {
            len,
            words: vec![0u64; len.div_ceil(64)].into_boxed_slice(),
        }
    }

    pub fn capacity(&self) -> usize {
        self.len
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Bitset) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(&a, &b)| a & !b == 0)
    }

    pub fn union(&self, other: &Bitset) -> Bitset {
        debug_assert_eq!(self.len, other.len);
        let words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(&a, &b)| a | b)
            .collect();
        Bitset { len: self.len, words }
    }

    pub fn intersection(&self, other: &Bitset) -> Bitset {
        debug_assert_eq!(self.len, other.len);
        let words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(&a, &b)| a & b)
            .collect();
        Bitset { len: self.len, words }
    }

    /// Complement within the capacity `0..len`.
    pub fn complement(&self) -> Bitset {
        let mut words: Box<[u64]> = self.words.iter().map(|&w| !w).collect();
        let tail = self.len % 64;
        if tail != 0 {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        Bitset { len: self.len, words }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

impl fmt::Debug for Bitset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A subset of the simple generators `S`, packed into a `u64`.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSet(u64);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    /// The full set `{0, …, rank-1}`.
    pub fn full(rank: usize) -> Self {
        debug_assert!(rank <= 63);
        GenSet((1u64 << rank) - 1)
    }

    pub fn singleton(s: u8) -> Self {
        GenSet(1 << s)
    }

    pub fn contains(self, s: u8) -> bool {
        self.0 >> s & 1 == 1
    }

    pub fn with(self, s: u8) -> Self {
        GenSet(self.0 | 1 << s)
    }

    pub fn without(self, s: u8) -> Self {
        GenSet(self.0 & !(1 << s))
    }

    pub fn union(self, other: GenSet) -> Self {
        GenSet(self.0 | other.0)
    }

    pub fn intersection(self, other: GenSet) -> Self {
        GenSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn count(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = u8> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let s = bits.trailing_zeros() as u8;
                bits &= bits - 1;
                Some(s)
            }
        })
    }

    pub fn bits(self) -> u64 {
        self.0
    }
}

impl fmt::Debug for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
