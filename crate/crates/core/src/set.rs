//! Small bitset over element indices.

use serde::{Serialize, Serializer};
use std::fmt;

/// Maximum carrier size supported by [`ElemSet`].
pub const MAX_ELEMS: usize = 128;

/// A set of element indices, stored as a 128-bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet(u128);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn new() -> Self {
        ElemSet(0)
    }

    pub fn singleton(x: usize) -> Self {
        let mut s = ElemSet(0);
        s.insert(x);
        s
    }

    /// All indices `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 128 {
            ElemSet(u128::MAX)
        } else {
            ElemSet((1u128 << n) - 1)
        }
    }

    pub fn from_bits(bits: u128) -> Self {
        ElemSet(bits)
    }

    pub fn bits(&self) -> u128 {
        self.0
    }

    pub fn contains(&self, x: usize) -> bool {
        x < 128 && (self.0 >> x) & 1 == 1
    }

    pub fn insert(&mut self, x: usize) -> bool {
        assert!(x < MAX_ELEMS, "element index {x} exceeds set capacity");
        let had = self.contains(x);
        self.0 |= 1u128 << x;
        !had
    }

    pub fn remove(&mut self, x: usize) {
        if x < 128 {
            self.0 &= !(1u128 << x);
        }
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        ElemSet(self.0 | other.0)
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        ElemSet(self.0 & other.0)
    }

    pub fn difference(&self, other: &ElemSet) -> ElemSet {
        ElemSet(self.0 & !other.0)
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.0;
        (0..128).filter(move |i| (bits >> i) & 1 == 1)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElemSet::new();
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ElemSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}
