//! Central words: every letter of the last die `n` sits in one contiguous block.

use crate::error::{Error, Result};
use crate::word::{Run, Word};

/// A central word split as `prefix · n^block_len · suffix`.
///
/// `word_type[α-1]` is the number of die-α letters in the prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralDecomposition {
    n: usize,
    prefix: Word,
    block_len: u64,
    suffix: Word,
    word_type: Vec<u64>,
}

impl CentralDecomposition {
    /// Assembles a decomposition from its parts. `prefix` and `suffix` must
    /// only use dice `1..n`.
    pub fn new(n: usize, prefix: Word, block_len: u64, suffix: Word) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("a central word needs at least two dice"));
        }
        if block_len == 0 {
            return Err(Error::domain("block length must be positive"));
        }
        for part in [&prefix, &suffix] {
            if part.runs().iter().any(|r| r.die >= n) {
                return Err(Error::domain(format!(
                    "prefix and suffix may only use dice 1..{}",
                    n - 1
                )));
            }
        }
        let prefix = prefix.with_alphabet(n - 1)?;
        let suffix = suffix.with_alphabet(n - 1)?;
        let word_type = prefix.side_counts();
        Ok(CentralDecomposition {
            n,
            prefix,
            block_len,
            suffix,
            word_type,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn suffix(&self) -> &Word {
        &self.suffix
    }

    pub fn block_len(&self) -> u64 {
        self.block_len
    }

    /// `(a_1, …, a_{n-1})`.
    pub fn word_type(&self) -> &[u64] {
        &self.word_type
    }

    /// Side counts of the reassembled word, indexed from die 1.
    pub fn side_counts(&self) -> Vec<u64> {
        let mut counts: Vec<u64> = self
            .prefix
            .side_counts()
            .iter()
            .zip(self.suffix.side_counts())
            .map(|(a, b)| a + b)
            .collect();
        counts.push(self.block_len);
        counts
    }

    pub fn to_word(&self) -> Word {
        let mut word = Word::empty(self.n);
        word.extend_runs(self.prefix.runs().iter().copied());
        word.push_run(Run::new(self.n, self.block_len));
        word.extend_runs(self.suffix.runs().iter().copied());
        word
    }

    /// Replaces the block of die `n` by one of length `new_len`. The cyclic
    /// counts `q_1..q_{n-2}` are unchanged, and so are the probabilities
    /// `P(A_{n-1} < A_n)` and `P(A_n < A_1)`.
    pub fn resize_block(&self, new_len: u64) -> Result<Self> {
        if new_len == 0 {
            return Err(Error::domain("block length must be at least 1"));
        }
        Ok(CentralDecomposition {
            block_len: new_len,
            ..self.clone()
        })
    }
}

/// Splits a word around its block of die `n`, or returns `None` when the
/// letters of die `n` are absent or not contiguous.
///
/// A single letter of die `n` counts as a block.
pub fn central_decompose(word: &Word) -> Option<CentralDecomposition> {
    let n = word.n();
    let runs = word.runs();
    let mut block_runs = runs.iter().enumerate().filter(|(_, r)| r.die == n);
    let (idx, block) = block_runs.next()?;
    if block_runs.next().is_some() {
        return None;
    }
    let prefix = Word::from_runs(n.saturating_sub(1).max(1), runs[..idx].iter().copied()).ok()?;
    let suffix =
        Word::from_runs(n.saturating_sub(1).max(1), runs[idx + 1..].iter().copied()).ok()?;
    CentralDecomposition::new(n, prefix, block.len, suffix).ok()
}

pub fn resize_block(dec: &CentralDecomposition, new_len: u64) -> Result<CentralDecomposition> {
    dec.resize_block(new_len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    #[test]
    fn five_five_four_triple_is_central() {
        let w = parse_word("1 2 1 2^2 3^4 1^3 2^2").unwrap();
        let dec = central_decompose(&w).unwrap();
        assert_eq!(dec.word_type(), &[2, 3]);
        assert_eq!(dec.block_len(), 4);
        assert_eq!(dec.to_word(), w);
    }

    #[test]
    fn palindrome_word_type() {
        let w = parse_word("1 2 3 4 5 4 3 2 1").unwrap();
        let dec = central_decompose(&w).unwrap();
        assert_eq!(dec.word_type(), &[1, 1, 1, 1]);
    }

    #[test]
    fn split_block_is_not_central() {
        let w = parse_word("3 1 3").unwrap();
        assert!(central_decompose(&w).is_none());
        // no letter of die n at all
        let w = Word::new(3, [1, 2]).unwrap();
        assert!(central_decompose(&w).is_none());
    }

    #[test]
    fn single_letter_block_is_accepted() {
        let w = parse_word("1 2 3 1 2").unwrap();
        let dec = central_decompose(&w).unwrap();
        assert_eq!(dec.block_len(), 1);
        assert_eq!(dec.word_type(), &[1, 1]);
    }

    #[test]
    fn resize_keeps_probabilities() {
        let w = parse_word("1 2 1 2^2 3^4 1^3 2^2").unwrap();
        let dec = central_decompose(&w).unwrap();
        for len in [1, 2, 4, 9] {
            let resized = dec.resize_block(len).unwrap().to_word();
            assert_eq!(
                resized.count_pairs(1, 2).unwrap(),
                w.count_pairs(1, 2).unwrap()
            );
            assert_eq!(
                resized.probability(2, 3).unwrap(),
                w.probability(2, 3).unwrap()
            );
            assert_eq!(
                resized.probability(3, 1).unwrap(),
                w.probability(3, 1).unwrap()
            );
        }
        assert_eq!(dec.resize_block(4).unwrap().to_word(), w);
        assert!(dec.resize_block(0).is_err());
    }
}
