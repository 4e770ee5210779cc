//! Basis monomials `e^S` of the exterior algebra, stored as bitsets.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest ambient dimension a bitset monomial can address.
pub const MAX_DIM: usize = 64;

/// A strictly increasing index set `S ⊂ {1..dim}`; bit `a-1` is set iff `a ∈ S`.
///
/// Ordered by degree first, then lexicographically on the increasing index
/// sequence. All echelon forms and reports use this order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(u64);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);

    pub fn from_bits(bits: u64) -> Self {
        MultiIndex(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// Builds from 1-based indices, which must be strictly increasing and in `1..=dim`.
    pub fn new(indices: &[usize], dim: usize) -> Result<Self> {
        let mut bits = 0u64;
        let mut prev = 0usize;
        for &a in indices {
            if a <= prev {
                return Err(Error::Schema(format!("indices {indices:?} are not strictly increasing")));
            }
            if a > dim || a > MAX_DIM {
                return Err(Error::Schema(format!("index {a} outside 1..={dim}")));
            }
            bits |= 1 << (a - 1);
            prev = a;
        }
        Ok(MultiIndex(bits))
    }

    pub fn single(a: usize) -> Self {
        debug_assert!((1..=MAX_DIM).contains(&a));
        MultiIndex(1 << (a - 1))
    }

    /// The top monomial `e^{1..dim}`.
    pub fn top(dim: usize) -> Self {
        if dim == 64 {
            MultiIndex(u64::MAX)
        } else {
            MultiIndex((1u64 << dim) - 1)
        }
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, a: usize) -> bool {
        self.0 >> (a - 1) & 1 == 1
    }

    pub fn is_subset_of(self, other: MultiIndex) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn without(self, other: MultiIndex) -> MultiIndex {
        MultiIndex(self.0 & !other.0)
    }

    pub fn fits(self, dim: usize) -> bool {
        self.0 & !MultiIndex::top(dim).0 == 0
    }

    /// 1-based indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree());
        let mut b = self.0;
        while b != 0 {
            out.push(b.trailing_zeros() as usize + 1);
            b &= b - 1;
        }
        out
    }

    /// Every monomial of the given degree in `dim` variables, in `Ord` order.
    pub fn all_of_degree(dim: usize, degree: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        if degree > dim {
            return out;
        }
        let mut idx: Vec<usize> = (1..=degree).collect();
        loop {
            out.push(MultiIndex(idx.iter().fold(0u64, |acc, &a| acc | 1 << (a - 1))));
            // advance to the next lexicographic combination
            let mut i = degree;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if idx[i] < dim - (degree - 1 - i) {
                    idx[i] += 1;
                    for j in i + 1..degree {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// All `2^dim` monomials, graded.
    pub fn all(dim: usize) -> Vec<MultiIndex> {
        (0..=dim).flat_map(|d| MultiIndex::all_of_degree(dim, d)).collect()
    }
}

/// `e^S ∧ e^T = sign · e^{S ∪ T}`, or `None` when the sets overlap.
///
/// The sign is the parity of the number of pairs `(s, t)` with `s ∈ S`,
/// `t ∈ T`, `s > t`.
pub fn sign_merge(s: MultiIndex, t: MultiIndex) -> Option<(i8, MultiIndex)> {
    if s.0 & t.0 != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut b = t.0;
    while b != 0 {
        let low = b.trailing_zeros();
        // elements of S strictly above this element of T
        let above = if low == 63 { 0 } else { s.0 >> (low + 1) };
        inversions += above.count_ones();
        b &= b - 1;
    }
    let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
    Some((sign, MultiIndex(s.0 | t.0)))
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // The lowest differing index decides; the set holding it is smaller.
        if self.0 & (diff & diff.wrapping_neg()) != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        write!(f, "e^{{")?;
        for (k, a) in self.indices().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v, 8).unwrap()
    }

    #[test]
    fn merge_examples() {
        assert_eq!(sign_merge(mi(&[1, 3]), mi(&[2, 4])), Some((-1, mi(&[1, 2, 3, 4]))));
        assert_eq!(sign_merge(mi(&[1, 4]), mi(&[2, 3])), Some((1, mi(&[1, 2, 3, 4]))));
        assert_eq!(sign_merge(mi(&[1, 2]), mi(&[2, 3])), None);
        assert_eq!(sign_merge(mi(&[2]), mi(&[1])), Some((-1, mi(&[1, 2]))));
        assert_eq!(sign_merge(MultiIndex::EMPTY, mi(&[5])), Some((1, mi(&[5]))));
    }

    #[test]
    fn merge_sign_matches_bubble_sort_parity() {
        // Brute force over all disjoint pairs in dimension 6.
        for s in MultiIndex::all(6) {
            for t in MultiIndex::all(6) {
                if s.bits() & t.bits() != 0 {
                    continue;
                }
                let mut seq: Vec<usize> = s.indices();
                seq.extend(t.indices());
                let mut swaps = 0;
                for i in 0..seq.len() {
                    for j in 0..seq.len() - 1 - i {
                        if seq[j] > seq[j + 1] {
                            seq.swap(j, j + 1);
                            swaps += 1;
                        }
                    }
                }
                let want = if swaps % 2 == 0 { 1 } else { -1 };
                assert_eq!(sign_merge(s, t).unwrap().0, want, "{s} {t}");
            }
        }
    }

    #[test]
    fn rejects_bad_indices() {
        assert!(MultiIndex::new(&[2, 2], 4).is_err());
        assert!(MultiIndex::new(&[3, 1], 4).is_err());
        assert!(MultiIndex::new(&[5], 4).is_err());
        assert!(MultiIndex::new(&[0], 4).is_err());
    }

    #[test]
    fn enumeration_is_sorted_and_complete() {
        for d in 0..=5 {
            let v = MultiIndex::all_of_degree(5, d);
            let n = [1, 5, 10, 10, 5, 1][d];
            assert_eq!(v.len(), n);
            assert!(v.windows(2).all(|w| w[0] < w[1]));
        }
        assert_eq!(MultiIndex::all(8).len(), 256);
        assert_eq!(mi(&[1, 4]).cmp(&mi(&[2, 3])), Ordering::Less);
        assert_eq!(mi(&[1, 2, 3]).cmp(&mi(&[4])), Ordering::Greater);
    }
}
