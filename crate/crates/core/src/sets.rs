//! Word-packed index sets and the small amount of exact combinatorics shared
//! by every counting module.
//!
//! An [`IndexSet`] holds indices `0..128` in a single `u128`. Tope subsets,
//! ground-set subsets, Boolean-lattice elements and crosspolytope faces all
//! use it, so the limits are: at most 128 topes, at most 128 ground elements.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, BitXor, Not, Sub};

use serde::{Deserialize, Serialize};

/// Largest index capacity of an [`IndexSet`].
pub const MAX_INDEX: usize = 128;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSet(pub u128);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    #[inline]
    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_INDEX);
        IndexSet(1u128 << i)
    }

    /// `{0, 1, ..., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_INDEX);
        if n == MAX_INDEX {
            IndexSet(u128::MAX)
        } else {
            IndexSet((1u128 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(IndexSet::EMPTY, |s, i| s.with(i))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < MAX_INDEX && (self.0 >> i) & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        self | IndexSet::singleton(i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Self {
        IndexSet(self.0 & !(1u128 << i))
    }

    #[inline]
    pub fn is_subset(self, other: IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_proper_subset(self, other: IndexSet) -> bool {
        self != other && self.is_subset(other)
    }

    #[inline]
    pub fn intersects(self, other: IndexSet) -> bool {
        self.0 & other.0 != 0
    }

    #[inline]
    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    #[inline]
    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> Bits {
        Bits(self.0)
    }

    /// All subsets of `self`, starting with the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets {
            set: self.0,
            next: Some(0),
        }
    }

    /// All subsets of `self` with exactly `size` members, in colexicographic
    /// order of their index vectors.
    pub fn subsets_of_size(self, size: usize) -> SizedSubsets {
        SizedSubsets::new(self, size)
    }

    /// Scatter the low bits of `local` onto the members of `self`:
    /// bit `j` of `local` selects the `j`-th smallest member.
    pub fn deposit(self, local: u64) -> IndexSet {
        let mut out = 0u128;
        let mut rest = self.0;
        let mut l = local;
        while l != 0 && rest != 0 {
            let low = rest & rest.wrapping_neg();
            if l & 1 == 1 {
                out |= low;
            }
            rest ^= low;
            l >>= 1;
        }
        IndexSet(out)
    }

    /// Inverse of [`IndexSet::deposit`]: positions of `sub`'s members among
    /// the members of `self`.
    pub fn extract(self, sub: IndexSet) -> u64 {
        let mut out = 0u64;
        for (j, i) in self.iter().enumerate() {
            if sub.contains(i) {
                out |= 1 << j;
            }
        }
        out
    }

    /// 1-based member list, the form used in files and reports.
    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl BitOr for IndexSet {
    type Output = IndexSet;
    #[inline]
    fn bitor(self, rhs: IndexSet) -> IndexSet {
        IndexSet(self.0 | rhs.0)
    }
}

impl BitOrAssign for IndexSet {
    #[inline]
    fn bitor_assign(&mut self, rhs: IndexSet) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for IndexSet {
    type Output = IndexSet;
    #[inline]
    fn bitand(self, rhs: IndexSet) -> IndexSet {
        IndexSet(self.0 & rhs.0)
    }
}

impl BitAndAssign for IndexSet {
    #[inline]
    fn bitand_assign(&mut self, rhs: IndexSet) {
        self.0 &= rhs.0;
    }
}

impl BitXor for IndexSet {
    type Output = IndexSet;
    #[inline]
    fn bitxor(self, rhs: IndexSet) -> IndexSet {
        IndexSet(self.0 ^ rhs.0)
    }
}

impl Sub for IndexSet {
    type Output = IndexSet;
    #[inline]
    fn sub(self, rhs: IndexSet) -> IndexSet {
        IndexSet(self.0 & !rhs.0)
    }
}

impl Not for IndexSet {
    type Output = IndexSet;
    #[inline]
    fn not(self) -> IndexSet {
        IndexSet(!self.0)
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        IndexSet::from_indices(iter)
    }
}

impl IntoIterator for IndexSet {
    type Item = usize;
    type IntoIter = Bits;
    fn into_iter(self) -> Bits {
        self.iter()
    }
}

/// Iterator over set bits, ascending.
#[derive(Clone)]
pub struct Bits(u128);

impl Iterator for Bits {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Bits {}

/// Carry-rippler enumeration of all subsets of a mask.
pub struct Subsets {
    set: u128,
    next: Option<u128>,
}

impl Iterator for Subsets {
    type Item = IndexSet;
    fn next(&mut self) -> Option<IndexSet> {
        let cur = self.next?;
        let nxt = cur.wrapping_sub(self.set) & self.set;
        self.next = (nxt != 0).then_some(nxt);
        Some(IndexSet(cur))
    }
}

/// Fixed-size subsets of a set, via Gosper's hack on local positions.
pub struct SizedSubsets {
    base: IndexSet,
    n: usize,
    cur: Option<u64>,
}

impl SizedSubsets {
    fn new(base: IndexSet, size: usize) -> Self {
        let n = base.len();
        let cur = if size > n || n > 64 {
            None
        } else if size == 0 {
            Some(0)
        } else {
            Some(if size == 64 { u64::MAX } else { (1u64 << size) - 1 })
        };
        SizedSubsets { base, n, cur }
    }
}

impl Iterator for SizedSubsets {
    type Item = IndexSet;
    fn next(&mut self) -> Option<IndexSet> {
        let cur = self.cur?;
        let out = self.base.deposit(cur);
        self.cur = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            if r == 0 {
                None
            } else {
                let nxt = (((r ^ cur) >> 2) / c) | r;
                (self.n == 64 || nxt >> self.n == 0).then_some(nxt)
            }
        };
        Some(out)
    }
}

/// Exact binomial coefficients up to `C(128, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> i128 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    BINOMIALS.with(|t| t[n as usize][k as usize] as i128)
}

/// Signed powers of two, `2^e` for `0 <= e < 127`.
pub fn pow2(e: i64) -> i128 {
    debug_assert!((0..127).contains(&e));
    1i128 << e
}

thread_local! {
    static BINOMIALS: Vec<Vec<u128>> = {
        let mut t = vec![vec![0u128; MAX_INDEX + 1]; MAX_INDEX + 1];
        for n in 0..=MAX_INDEX {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1] + if k < n { t[n - 1][k] } else { 0 };
            }
        }
        t
    };
}

/// `(-1)^n` as an `i128`.
#[inline]
pub fn sign(n: usize) -> i128 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
