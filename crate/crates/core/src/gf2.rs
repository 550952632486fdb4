//! GF(2) linear algebra on u64 bitset rows: solving `Ax = b` and expressing a
//! target vector as a subset sum of given vectors.

use alloc::vec::Vec;

/// Solves a linear system over GF(2) with at most 63 variables.
///
/// Rows are `(coefficient mask, rhs)`. Returns a particular solution with all
/// free variables zero, or `None` if the system is infeasible. Pivoting is by
/// increasing column index, so the solution is deterministic.
pub fn solve(cols: usize, rows: &[(u64, bool)]) -> Option<u64> {
    debug_assert!(cols <= 63);
    let mut work: Vec<(u64, bool)> = rows.to_vec();
    let mut pivot_of_col: Vec<Option<usize>> = alloc::vec![None; cols];
    let mut next_row = 0usize;
    for (col, pivot_slot) in pivot_of_col.iter_mut().enumerate() {
        let bit = 1u64 << col;
        let Some(r) = (next_row..work.len()).find(|&r| work[r].0 & bit != 0) else {
            continue;
        };
        work.swap(next_row, r);
        let (prow, prhs) = work[next_row];
        for (i, row) in work.iter_mut().enumerate() {
            if i != next_row && row.0 & bit != 0 {
                row.0 ^= prow;
                row.1 ^= prhs;
            }
        }
        *pivot_slot = Some(next_row);
        next_row += 1;
    }
    if work.iter().any(|&(m, b)| m == 0 && b) {
        return None;
    }
    let mut x = 0u64;
    for (col, pivot_slot) in pivot_of_col.iter().enumerate() {
        if let Some(r) = *pivot_slot {
            if work[r].1 {
                x |= 1u64 << col;
            }
        }
    }
    // With free variables zero, each pivot equation fixes its variable.
    debug_assert!(rows.iter().all(|&(m, b)| ((m & x).count_ones() % 2 == 1) == b));
    Some(x)
}

/// A growable set of GF(2) vectors supporting subset-sum queries with
/// combination tracking.
///
/// Each inserted vector is reduced against the current basis; vectors that
/// reduce to zero yield kernel combinations (subsets with empty sum).
pub struct SubsetFinder {
    // Basis slot per lead bit: (reduced vector, combination of originals).
    by_lead: Vec<Option<(u64, ComboBits)>>,
    kernel: Vec<ComboBits>,
    count: usize,
}

/// A subset of original vector indices, as a bitset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComboBits {
    words: Vec<u64>,
}

impl ComboBits {
    fn empty(n_words: usize) -> Self {
        ComboBits { words: alloc::vec![0; n_words] }
    }

    fn singleton(n_words: usize, i: usize) -> Self {
        let mut c = Self::empty(n_words);
        c.set(i);
        c
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    pub fn xor_with(&mut self, other: &ComboBits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of set bits in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                out.push(wi * 64 + bits.trailing_zeros() as usize);
                bits &= bits - 1;
            }
        }
        out
    }
}

impl SubsetFinder {
    /// Creates a finder for `count` vectors of the given bit width.
    pub fn new(width: usize, count: usize) -> Self {
        debug_assert!(width <= 64);
        SubsetFinder {
            by_lead: alloc::vec![None; width.max(1)],
            kernel: Vec::new(),
            count,
        }
    }

    fn n_words(&self) -> usize {
        self.count.div_ceil(64).max(1)
    }

    // Reduces (v, combo) against the basis until v is zero or has a free
    // lead bit; returns the residue.
    fn reduce(&self, mut v: u64, combo: &mut ComboBits) -> u64 {
        while v != 0 {
            let lead = 63 - v.leading_zeros() as usize;
            match &self.by_lead[lead] {
                Some((bv, bc)) => {
                    v ^= bv;
                    combo.xor_with(bc);
                }
                None => break,
            }
        }
        v
    }

    /// Inserts vector `i`.
    pub fn insert(&mut self, i: usize, vector: u64) {
        let mut combo = ComboBits::singleton(self.n_words(), i);
        let v = self.reduce(vector, &mut combo);
        if v == 0 {
            self.kernel.push(combo);
        } else {
            let lead = 63 - v.leading_zeros() as usize;
            self.by_lead[lead] = Some((v, combo));
        }
    }

    /// A subset of the inserted vectors summing to `target`, if one exists.
    pub fn express(&self, target: u64) -> Option<ComboBits> {
        let mut combo = ComboBits::empty(self.n_words());
        if self.reduce(target, &mut combo) == 0 {
            Some(combo)
        } else {
            None
        }
    }

    /// Kernel combinations discovered so far (subsets with empty sum).
    pub fn kernel(&self) -> &[ComboBits] {
        &self.kernel
    }
}
