//! k-subsets of `[n]` and their colex ranking.
//!
//! Vertices are 1-based; vertex `v` is stored as bit `v - 1` of a `u64`, which
//! caps the ground set at 64 vertices.

use std::fmt;

use crate::binom::choose_u64;
use crate::error::{ensure_domain, Result};

pub type Vertex = u32;

/// Maximum ground-set size representable by [`KSubset`].
pub const MAX_N: u32 = 64;

/// A set of vertices of `[n]`, stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct KSubset(u64);

impl KSubset {
    pub const EMPTY: KSubset = KSubset(0);

    /// Builds a subset from strictly increasing 1-based vertices.
    pub fn from_sorted(elements: &[Vertex]) -> Result<Self> {
        let mut mask = 0u64;
        let mut prev = 0;
        for &v in elements {
            ensure_domain!(v > prev, "subset elements must be strictly increasing and >= 1");
            ensure_domain!(v <= MAX_N, "vertex {v} exceeds the supported maximum {MAX_N}");
            mask |= 1 << (v - 1);
            prev = v;
        }
        Ok(KSubset(mask))
    }

    /// Builds a subset from arbitrary vertices, rejecting repeats.
    pub fn from_vertices(elements: &[Vertex]) -> Result<Self> {
        let mut sorted = elements.to_vec();
        sorted.sort_unstable();
        Self::from_sorted(&sorted)
    }

    #[inline]
    pub const fn from_mask(mask: u64) -> Self {
        KSubset(mask)
    }

    #[inline]
    pub const fn mask(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: Vertex) -> bool {
        v >= 1 && v <= MAX_N && self.0 & (1 << (v - 1)) != 0
    }

    #[inline]
    pub fn is_subset_of(self, other: KSubset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn meets(self, other: KSubset) -> bool {
        self.0 & other.0 != 0
    }

    /// Largest vertex, if any.
    pub fn max_vertex(self) -> Option<Vertex> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros())
    }

    pub fn elements(self) -> Vec<Vertex> {
        self.iter().collect()
    }

    /// Vertices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = Vertex> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let bit = rest.trailing_zeros();
            rest &= rest - 1;
            Some(bit + 1)
        })
    }

    /// Removes `v` and shifts every larger vertex down by one.
    pub fn delete_and_relabel(self, v: Vertex) -> KSubset {
        let below = (1u64 << (v - 1)) - 1;
        let low = self.0 & below;
        let high = if v >= 64 { 0 } else { (self.0 >> v) << (v - 1) };
        KSubset(low | high)
    }
}

impl fmt::Debug for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Colex rank: `sum_i C(c_i, i + 1)` over the 0-based elements `c_0 < c_1 < ...`.
pub fn rank_colex(s: KSubset) -> u64 {
    s.iter()
        .enumerate()
        .map(|(i, v)| choose_u64(v - 1, i as u32 + 1))
        .sum()
}

/// Inverse of [`rank_colex`] over the k-subsets of `[n]`.
pub fn unrank_colex(rank: u64, k: u32, n: u32) -> Result<KSubset> {
    ensure_domain!(n <= MAX_N, "n = {n} exceeds the supported maximum {MAX_N}");
    ensure_domain!(k <= n, "k = {k} exceeds n = {n}");
    let total = choose_u64(n, k);
    ensure_domain!(rank < total, "rank {rank} out of range for C({n},{k}) = {total}");
    Ok(unrank_colex_unchecked(rank, k, n))
}

pub(crate) fn unrank_colex_unchecked(mut rank: u64, k: u32, n: u32) -> KSubset {
    let mut mask = 0u64;
    let mut top = n;
    for i in (1..=k).rev() {
        // largest c < top with C(c, i) <= rank
        let mut c = top - 1;
        while choose_u64(c, i) > rank {
            c -= 1;
        }
        rank -= choose_u64(c, i);
        mask |= 1 << c;
        top = c;
    }
    KSubset(mask)
}

/// All k-subsets of `[n]` in colex order.
pub fn k_subsets(n: u32, k: u32) -> impl Iterator<Item = KSubset> {
    assert!(n <= MAX_N);
    let first: Option<u64> = if k > n {
        None
    } else if k == 0 {
        Some(0)
    } else {
        Some(if k == 64 { u64::MAX } else { (1u64 << k) - 1 })
    };
    let limit_bit = n;
    let mut next = first;
    std::iter::from_fn(move || {
        let cur = next?;
        next = colex_successor(cur, limit_bit);
        Some(KSubset(cur))
    })
}

// Gosper's hack; `None` once the next set would use bit `n` or beyond.
fn colex_successor(x: u64, n: u32) -> Option<u64> {
    if x == 0 {
        return None;
    }
    let c = x & x.wrapping_neg();
    let (r, overflow) = x.overflowing_add(c);
    if overflow || r == 0 {
        return None;
    }
    let next = (((r ^ x) >> 2) / c) | r;
    if n < 64 && next >> n != 0 {
        None
    } else {
        Some(next)
    }
}
