//! Permutations of {0..n-1} as elements of the Weyl group of GL_n.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::exactlin::{FpMatrix, PrimeField};

/// A permutation `i -> images[i]` with its inversion count cached.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylPermutation {
    images: Vec<usize>,
    length: usize,
}

impl fmt::Debug for WeylPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based: Vec<usize> = self.images.iter().map(|i| i + 1).collect();
        write!(f, "w{one_based:?}")
    }
}

fn inversions(images: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] > images[j] {
                count += 1;
            }
        }
    }
    count
}

impl WeylPermutation {
    /// `None` unless `images` is a permutation of `0..images.len()`.
    pub fn new(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        let length = inversions(&images);
        Some(WeylPermutation { images, length })
    }

    pub fn identity(n: usize) -> Self {
        WeylPermutation {
            images: (0..n).collect(),
            length: 0,
        }
    }

    /// The simple reflection swapping `i - 1` and `i` (1-based `i`, 1 <= i < n).
    pub fn simple(i: usize, n: usize) -> Self {
        assert!(i >= 1 && i < n, "simple reflection index {i} out of range for n = {n}");
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, i);
        WeylPermutation { images, length: 1 }
    }

    /// The longest element, reversing the order.
    pub fn longest(n: usize) -> Self {
        WeylPermutation {
            images: (0..n).rev().collect(),
            length: n * n.saturating_sub(1) / 2,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn length(&self) -> usize {
        self.length
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &WeylPermutation) -> WeylPermutation {
        assert_eq!(self.n(), other.n());
        let images: Vec<usize> = other.images.iter().map(|&i| self.images[i]).collect();
        let length = inversions(&images);
        WeylPermutation { images, length }
    }

    pub fn inverse(&self) -> WeylPermutation {
        let mut images = vec![0; self.n()];
        for (i, &w) in self.images.iter().enumerate() {
            images[w] = i;
        }
        WeylPermutation {
            images,
            length: self.length,
        }
    }

    /// Embed into S_total acting on `offset..offset + n`, fixing everything else.
    pub fn shift(&self, offset: usize, total: usize) -> WeylPermutation {
        assert!(offset + self.n() <= total);
        let mut images: Vec<usize> = (0..total).collect();
        for (i, &w) in self.images.iter().enumerate() {
            images[offset + i] = offset + w;
        }
        WeylPermutation {
            images,
            length: self.length,
        }
    }

    /// A reduced word `[i1, .., ir]` (1-based) with `self = s_i1 ∘ .. ∘ s_ir`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length);
        let mut w = self.clone();
        // peel right descents: w = (w s_i) s_i with l(w s_i) = l(w) - 1
        while let Some(i) = (0..w.n().saturating_sub(1)).find(|&i| w.images[i] > w.images[i + 1]) {
            word.push(i + 1);
            w.images.swap(i, i + 1);
            w.length -= 1;
        }
        word.reverse();
        word
    }

    /// Permutation matrix with `M[w(i)][i] = 1`, so that `M_u M_v = M_{u∘v}`.
    pub fn matrix(&self, field: PrimeField) -> FpMatrix {
        let n = self.n();
        let mut m = FpMatrix::zeros(field, n, n);
        for (i, &w) in self.images.iter().enumerate() {
            m.set(w, i, 1);
        }
        m
    }
}

/// All permutations of `0..n` in lexicographic order of their image lists.
pub fn all_permutations(n: usize) -> Vec<WeylPermutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(WeylPermutation::new(cur.clone()).expect("permutation"));
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Minimal word length in the simple reflections for every element of S_n,
/// found by breadth-first search on the Cayley graph.
pub fn word_lengths_by_search(n: usize) -> HashMap<WeylPermutation, usize> {
    let mut dist = HashMap::new();
    let start = WeylPermutation::identity(n);
    dist.insert(start.clone(), 0);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        for i in 1..n {
            let next = w.compose(&WeylPermutation::simple(i, n));
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_matches_search() {
        for n in 0..=4 {
            let dist = word_lengths_by_search(n);
            let all = all_permutations(n);
            assert_eq!(dist.len(), all.len());
            for w in &all {
                assert_eq!(w.length(), dist[w], "{w:?}");
            }
        }
    }

    #[test]
    fn reduced_words_multiply_back() {
        for w in all_permutations(4) {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            let mut acc = WeylPermutation::identity(4);
            for &i in &word {
                acc = acc.compose(&WeylPermutation::simple(i, 4));
            }
            assert_eq!(acc, w);
        }
    }

    #[test]
    fn matrices_are_multiplicative() {
        let f = PrimeField::new(3).unwrap();
        let all = all_permutations(3);
        for u in &all {
            for v in &all {
                assert_eq!(&u.matrix(f) * &v.matrix(f), u.compose(v).matrix(f));
            }
        }
    }

    #[test]
    fn counts() {
        assert_eq!(all_permutations(0).len(), 1);
        assert_eq!(all_permutations(5).len(), 120);
        assert_eq!(WeylPermutation::longest(4).length(), 6);
        assert_eq!(WeylPermutation::longest(4).inverse(), WeylPermutation::longest(4));
    }
}
