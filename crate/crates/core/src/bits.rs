//! Packed boolean matrices and row bitsets.
//!
//! Every row occupies `words` consecutive `u64`s, bit `j % 64` of word
//! `j / 64` holding cell `(i, j)`. Padding bits past column `n` are always
//! zero so that whole-word comparisons and popcounts are exact.

const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// A fixed-width set of indices `0..n`, stored as packed words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitSet {
    n: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(n: usize) -> Self {
        BitSet {
            n,
            words: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = BitSet {
            n,
            words: vec![!0; words_for(n)],
        };
        s.clear_padding();
        s
    }

    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = BitSet::new(n);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub(crate) fn from_words(n: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(n));
        let mut s = BitSet { n, words };
        s.clear_padding();
        s
    }

    fn clear_padding(&mut self) {
        let rem = self.n % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Universe size (not the number of members).
    pub fn capacity(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.n);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.n, "index {i} out of range for bitset of size {}", self.n);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        assert!(i < self.n, "index {i} out of range for bitset of size {}", self.n);
        self.words[i / WORD] &= !(1 << (i % WORD));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones::new(&self.words)
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }
}

/// Iterator over set bit positions of a word slice.
pub struct Ones<'a> {
    words: &'a [u64],
    base: usize,
    current: u64,
}

impl<'a> Ones<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        let (current, words) = match words.split_first() {
            Some((first, rest)) => (*first, rest),
            None => (0, words),
        };
        Ones {
            words,
            base: 0,
            current,
        }
    }
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            let (first, rest) = self.words.split_first()?;
            self.current = *first;
            self.words = rest;
            self.base += WORD;
        }
        let tz = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.base + tz)
    }
}

/// Square boolean matrix with packed rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = words_for(n);
        BitMatrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = BitMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                if f(i, j) {
                    m.set(i, j);
                }
            }
        }
        m
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        self.bits[i * self.words + j / WORD] >> (j % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        assert!(i < self.n && j < self.n);
        self.bits[i * self.words + j / WORD] |= 1 << (j % WORD);
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn row_set(&self, i: usize) -> BitSet {
        BitSet::from_words(self.n, self.row(i).to_vec())
    }

    pub fn row_ones(&self, i: usize) -> Ones<'_> {
        Ones::new(self.row(i))
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.n);
        for i in 0..self.n {
            for j in self.row_ones(i) {
                t.set(j, i);
            }
        }
        t
    }

    /// Cell-wise combination of `self` and its transpose.
    pub fn zip_transpose(&self, f: impl Fn(u64, u64) -> u64) -> BitMatrix {
        let t = self.transpose();
        let mut out = BitMatrix::new(self.n);
        for ((o, a), b) in out.bits.iter_mut().zip(&self.bits).zip(&t.bits) {
            *o = f(*a, *b);
        }
        out.clear_padding();
        out
    }

    fn clear_padding(&mut self) {
        let rem = self.n % WORD;
        if rem == 0 {
            return;
        }
        let mask = (1u64 << rem) - 1;
        for i in 0..self.n {
            self.bits[i * self.words + self.words - 1] &= mask;
        }
    }

    pub fn set_diagonal(&mut self) {
        for i in 0..self.n {
            self.set(i, i);
        }
    }

    /// `true` iff row `j` is a subset of row `i`.
    #[inline]
    pub fn row_subset(&self, j: usize, i: usize) -> bool {
        self.row(j).iter().zip(self.row(i)).all(|(a, b)| a & !b == 0)
    }

    /// Warshall's algorithm over packed rows: for each pivot `k`, every row
    /// containing `k` absorbs row `k`. O(n^3 / 64) word operations.
    pub fn close_transitively(&mut self) {
        let w = self.words;
        let mut pivot = vec![0u64; w];
        for k in 0..self.n {
            pivot.copy_from_slice(self.row(k));
            let (word, bit) = (k / WORD, k % WORD);
            for i in 0..self.n {
                let row = &mut self.bits[i * w..(i + 1) * w];
                if row[word] >> bit & 1 == 1 {
                    for (a, b) in row.iter_mut().zip(&pivot) {
                        *a |= b;
                    }
                }
            }
        }
    }
}
