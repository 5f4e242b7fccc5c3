//! Words over the alphabet, the weight system, and the indexing of the
//! truncated Fock basis.
//!
//! A basis vector of the full Fock space is labelled by a finite word over
//! `{1, ..., n}`; the empty word labels the vacuum. The truncated space keeps
//! every word of length at most `depth`, enumerated by length first and
//! lexicographically within a length. That order is fixed so matrices are
//! reproducible across runs.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The index set `{1, ..., n}` of the orthonormal basis of the one-particle
/// space. `n = 1` is allowed for degenerate tests; boundary experiments use
/// `n >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    n: usize,
}

impl Alphabet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidConfig("alphabet size must be >= 1".into()));
        }
        Ok(Alphabet { n })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> impl Iterator<Item = u8> {
        (1..=self.n as u8).into_iter()
    }

    pub fn check_letter(&self, letter: u8) -> Result<()> {
        if letter == 0 || letter as usize > self.n {
            return Err(Error::LetterOutOfRange { letter, n: self.n });
        }
        Ok(())
    }
}

/// A finite word over the alphabet, indexing a Fock basis vector. The empty
/// word is the vacuum index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: impl Into<Vec<u8>>) -> Self {
        Word(letters.into())
    }

    /// Single-letter word.
    pub fn letter(i: u8) -> Self {
        Word(vec![i])
    }

    pub fn checked(letters: impl Into<Vec<u8>>, alphabet: Alphabet) -> Result<Self> {
        let letters = letters.into();
        for &l in &letters {
            alphabet.check_letter(l)?;
        }
        Ok(Word(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    /// Juxtaposition `IJ`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// The reversed word, written `I^op` below.
    pub fn reverse(&self) -> Word {
        let mut letters = self.0.clone();
        letters.reverse();
        Word(letters)
    }

    /// The prefix of length `m`; the empty word for `m = 0`.
    pub fn prefix(&self, m: usize) -> Result<Word> {
        if m > self.len() {
            return Err(Error::PrefixOutOfRange { m, len: self.len() });
        }
        Ok(Word(self.0[..m].to_vec()))
    }

    /// k-fold juxtaposition of the word with itself.
    pub fn repeat(&self, k: usize) -> Word {
        let mut letters = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&self.0);
        }
        Word(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "()");
        }
        let s: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl From<&[u8]> for Word {
    fn from(letters: &[u8]) -> Self {
        Word(letters.to_vec())
    }
}

impl<const N: usize> From<[u8; N]> for Word {
    fn from(letters: [u8; N]) -> Self {
        Word(letters.to_vec())
    }
}

/// The weight system `omega`: strictly positive reals summing to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Weights {
    omega: Vec<f64>,
}

impl Weights {
    pub const SUM_TOL: f64 = 1e-12;

    pub fn new(omega: Vec<f64>) -> Result<Self> {
        if omega.is_empty() || omega.iter().any(|&w| !(w > 0.0)) {
            return Err(Error::BadWeights {
                sum: omega.iter().sum(),
            });
        }
        let sum: f64 = omega.iter().sum();
        if (sum - 1.0).abs() > Self::SUM_TOL {
            return Err(Error::BadWeights { sum });
        }
        Ok(Weights { omega })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadWeights { sum: 0.0 });
        }
        Ok(Weights {
            omega: vec![1.0 / n as f64; n],
        })
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    /// Weight of a single letter (1-based).
    pub fn weight(&self, letter: u8) -> f64 {
        self.omega[(letter - 1) as usize]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.omega
    }

    /// `omega_J`: the product of the letter weights along `J`. The empty word
    /// has weight 1 (empty product).
    pub fn weight_of_word(&self, word: &Word) -> f64 {
        word.letters().iter().map(|&l| self.weight(l)).product()
    }
}

/// Truncation parameters: alphabet size and maximal word length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationParams {
    n: usize,
    depth: usize,
}

/// Hard cap on the truncated dimension; beyond this the dense trust blocks
/// stop being desk-scale.
const MAX_DIM: usize = 1 << 26;

impl TruncationParams {
    pub fn new(n: usize, depth: usize) -> Result<Self> {
        if n == 0 || depth == 0 {
            return Err(Error::InvalidConfig(
                "alphabet size and depth must be >= 1".into(),
            ));
        }
        let p = TruncationParams { n, depth };
        p.dim_checked()?; // capacity guard
        Ok(p)
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet { n: self.n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    fn dim_checked(&self) -> Result<usize> {
        let mut dim: usize = 0;
        let mut pow: usize = 1;
        for _ in 0..=self.depth {
            dim = dim
                .checked_add(pow)
                .ok_or(Error::CapacityOverflow {
                    n: self.n,
                    depth: self.depth,
                })?;
            pow = pow.checked_mul(self.n).ok_or(Error::CapacityOverflow {
                n: self.n,
                depth: self.depth,
            })?;
        }
        if dim > MAX_DIM {
            return Err(Error::CapacityOverflow {
                n: self.n,
                depth: self.depth,
            });
        }
        Ok(dim)
    }

    /// Total number of words of length <= depth, i.e. sum over k of n^k.
    pub fn dim(&self) -> usize {
        // Valid by construction: new() ran the checked version.
        let mut dim = 0;
        let mut pow = 1;
        for _ in 0..=self.depth {
            dim += pow;
            pow *= self.n;
        }
        dim
    }

    /// Offset of the first word of each length: `offsets[k] = sum_{j<k} n^j`.
    pub fn offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.depth + 2);
        let mut acc = 0;
        let mut pow = 1;
        for _ in 0..=self.depth + 1 {
            offsets.push(acc);
            acc += pow;
            pow *= self.n;
        }
        offsets
    }

    /// All words of length <= depth, by length then lexicographically.
    /// Position 0 is the empty word.
    pub fn enumerate_basis(&self) -> Vec<Word> {
        let mut words = Vec::with_capacity(self.dim());
        words.push(Word::empty());
        let mut current: Vec<Word> = vec![Word::empty()];
        for _ in 1..=self.depth {
            let mut next = Vec::with_capacity(current.len() * self.n);
            for w in &current {
                for i in 1..=self.n as u8 {
                    let mut letters = w.letters().to_vec();
                    letters.push(i);
                    next.push(Word(letters));
                }
            }
            words.extend(next.iter().cloned());
            current = next;
        }
        words
    }

    /// Basis index of a word (inverse of `word_at`).
    pub fn index_of(&self, word: &Word) -> Result<usize> {
        if word.len() > self.depth {
            return Err(Error::WordTooLong {
                len: word.len(),
                depth: self.depth,
            });
        }
        let mut offset = 0;
        let mut pow = 1;
        for _ in 0..word.len() {
            offset += pow;
            pow *= self.n;
        }
        let mut rank = 0usize;
        for &l in word.letters() {
            self.alphabet().check_letter(l)?;
            rank = rank * self.n + (l as usize - 1);
        }
        Ok(offset + rank)
    }

    /// Word at a basis index (inverse of `index_of`).
    pub fn word_at(&self, index: usize) -> Result<Word> {
        let dim = self.dim();
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        let mut offset = 0;
        let mut pow = 1;
        let mut len = 0;
        while index >= offset + pow {
            offset += pow;
            pow *= self.n;
            len += 1;
        }
        let mut rank = index - offset;
        let mut letters = vec![0u8; len];
        for slot in letters.iter_mut().rev() {
            *slot = (rank % self.n) as u8 + 1;
            rank /= self.n;
        }
        Ok(Word(letters))
    }

    /// Word length of a basis index, without materializing the word.
    pub fn depth_of_index(&self, index: usize) -> usize {
        let mut offset = 0;
        let mut pow = 1;
        let mut len = 0;
        while index >= offset + pow {
            offset += pow;
            pow *= self.n;
            len += 1;
        }
        len
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn concat_examples() {
        let ij = Word::from([1, 2]).concat(&Word::from([2, 1]));
        assert_eq!(ij, Word::from([1, 2, 2, 1]));
        assert_eq!(Word::empty().concat(&Word::from([3])), Word::from([3]));
        assert_eq!(Word::from([2]).concat(&Word::empty()), Word::from([2]));
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(Word::from([1, 2, 3]).reverse(), Word::from([3, 2, 1]));
        assert_eq!(Word::empty().reverse(), Word::empty());
        assert_eq!(Word::from([2, 2]).reverse(), Word::from([2, 2]));
    }

    #[test]
    fn prefix_examples() {
        let w = Word::from([1, 2, 3]);
        assert_eq!(w.prefix(2).unwrap(), Word::from([1, 2]));
        assert_eq!(w.prefix(0).unwrap(), Word::empty());
        assert_eq!(Word::from([1]).prefix(1).unwrap(), Word::from([1]));
        assert!(w.prefix(4).is_err());
    }

    #[test]
    fn repeat_examples() {
        assert_eq!(Word::from([1, 2]).repeat(2), Word::from([1, 2, 1, 2]));
        assert_eq!(Word::from([1, 2]).repeat(0), Word::empty());
        assert_eq!(Word::empty().repeat(5), Word::empty());
    }

    #[test]
    fn weight_of_word_examples() {
        let w = Weights::new(vec![0.5, 0.5]).unwrap();
        assert!((w.weight_of_word(&Word::from([1, 2])) - 0.25).abs() < 1e-15);
        let w = Weights::new(vec![1.0 / 3.0, 2.0 / 3.0]).unwrap();
        assert!((w.weight_of_word(&Word::from([2, 2])) - 4.0 / 9.0).abs() < 1e-15);
        assert_eq!(w.weight_of_word(&Word::empty()), 1.0);
    }

    #[test]
    fn weights_validation() {
        assert!(Weights::new(vec![0.7, 0.2]).is_err());
        assert!(Weights::new(vec![0.5, -0.5, 1.0]).is_err());
        assert!(Weights::uniform(3).is_ok());
    }

    #[test]
    fn basis_enumeration_order() {
        let p = TruncationParams::new(2, 1).unwrap();
        let basis = p.enumerate_basis();
        assert_eq!(
            basis,
            vec![Word::empty(), Word::from([1]), Word::from([2])]
        );

        let p = TruncationParams::new(2, 3).unwrap();
        assert_eq!(p.enumerate_basis().len(), 15);
        assert_eq!(p.dim(), 15);

        let p = TruncationParams::new(3, 2).unwrap();
        assert_eq!(p.enumerate_basis().len(), 13);
    }

    #[test]
    fn index_word_examples() {
        let p = TruncationParams::new(2, 2).unwrap();
        assert_eq!(p.index_of(&Word::empty()).unwrap(), 0);
        assert_eq!(p.index_of(&Word::from([2])).unwrap(), 2);
        assert_eq!(p.word_at(3).unwrap(), Word::from([1, 1]));
        assert!(p.index_of(&Word::from([1, 1, 1])).is_err());
        assert!(p.word_at(7).is_err());
    }

    #[test]
    fn index_word_roundtrip_full() {
        let p = TruncationParams::new(3, 4).unwrap();
        for (k, w) in p.enumerate_basis().iter().enumerate() {
            assert_eq!(p.index_of(w).unwrap(), k);
            assert_eq!(&p.word_at(k).unwrap(), w);
            assert_eq!(p.depth_of_index(k), w.len());
        }
    }

    #[test]
    fn capacity_guard() {
        assert!(TruncationParams::new(10, 30).is_err());
    }

    #[test]
    fn strict_weight_inequality_for_nonempty_words() {
        // omega_J < 1 strictly for |J| >= 1 when n >= 2.
        let w = Weights::new(vec![0.9, 0.1]).unwrap();
        for letters in [vec![1], vec![1, 1], vec![1, 1, 1, 1]] {
            assert!(w.weight_of_word(&Word::new(letters)) < 1.0);
        }
    }
}
