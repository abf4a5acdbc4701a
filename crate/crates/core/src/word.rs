//! Words: the sequence of die indices obtained by reading faces in
//! increasing order.
//!
//! A word is stored as maximal runs `(die, length)`. Die indices are 1-based.
//! Fragments such as the prefix of a central word are words too, so a word
//! may omit some of the dice in its alphabet `1..=n`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Run {
    pub die: usize,
    pub len: u64,
}

impl Run {
    pub fn new(die: usize, len: u64) -> Self {
        Run { die, len }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    n: usize,
    runs: Vec<Run>,
}

impl Word {
    pub fn empty(n: usize) -> Self {
        Word {
            n,
            runs: Vec::new(),
        }
    }

    pub fn new(n: usize, letters: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::from_runs(n, letters.into_iter().map(|d| Run::new(d, 1)))
    }

    /// Builds a word from runs, merging neighbours with the same die.
    /// Zero-length runs are rejected.
    pub fn from_runs(n: usize, runs: impl IntoIterator<Item = Run>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain(
                "a word needs at least one die in its alphabet",
            ));
        }
        let mut word = Word::empty(n);
        for run in runs {
            if run.die == 0 || run.die > n {
                return Err(Error::domain(format!(
                    "die index {} outside 1..={n}",
                    run.die
                )));
            }
            if run.len == 0 {
                return Err(Error::domain(format!("zero-length run of die {}", run.die)));
            }
            word.push_run(run);
        }
        Ok(word)
    }

    /// Infers the alphabet size from the largest die index present.
    pub fn from_letters(letters: &[usize]) -> Result<Self> {
        let n = letters.iter().copied().max().unwrap_or(0);
        Self::new(n, letters.iter().copied())
    }

    pub(crate) fn push_run(&mut self, run: Run) {
        if run.len == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some(last) if last.die == run.die => last.len += run.len,
            _ => self.runs.push(run),
        }
    }

    pub(crate) fn extend_runs(&mut self, runs: impl IntoIterator<Item = Run>) {
        for run in runs {
            self.push_run(run);
        }
    }

    /// Same letters over a larger alphabet.
    pub fn with_alphabet(&self, n: usize) -> Result<Self> {
        Self::from_runs(n, self.runs.iter().copied())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn len(&self) -> u64 {
        self.runs.iter().map(|r| r.len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.runs
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.die, r.len as usize))
    }

    /// `m_i` for each die, indexed from 0 (die 1 at index 0).
    pub fn side_counts(&self) -> Vec<u64> {
        let mut counts = vec![0; self.n];
        for run in &self.runs {
            counts[run.die - 1] += run.len;
        }
        counts
    }

    pub fn contains_every_die(&self) -> bool {
        self.side_counts().iter().all(|&c| c > 0)
    }

    fn check_pair(&self, alpha: usize, beta: usize) -> Result<()> {
        for d in [alpha, beta] {
            if d == 0 || d > self.n {
                return Err(Error::domain(format!(
                    "die index {d} outside 1..={}",
                    self.n
                )));
            }
        }
        if alpha == beta {
            return Err(Error::domain(format!(
                "pair ({alpha}, {beta}) must be distinct dice"
            )));
        }
        Ok(())
    }

    /// Number of position pairs `i < j` with die `alpha` at `i` and `beta` at `j`.
    pub fn count_pairs(&self, alpha: usize, beta: usize) -> Result<u128> {
        self.check_pair(alpha, beta)?;
        let mut seen_alpha: u128 = 0;
        let mut total: u128 = 0;
        for run in &self.runs {
            if run.die == alpha {
                seen_alpha += run.len as u128;
            } else if run.die == beta {
                total += seen_alpha * run.len as u128;
            }
        }
        Ok(total)
    }

    /// `P(A_alpha < A_beta)` as an exact reduced fraction.
    pub fn probability(&self, alpha: usize, beta: usize) -> Result<Rational> {
        let count = self.count_pairs(alpha, beta)?;
        let counts = self.side_counts();
        let (ma, mb) = (counts[alpha - 1], counts[beta - 1]);
        if ma == 0 || mb == 0 {
            let missing = if ma == 0 { alpha } else { beta };
            return Err(Error::domain(format!(
                "die {missing} has no faces in this word"
            )));
        }
        Ok(Rational::new(
            BigInt::from(count),
            BigInt::from(ma as u128 * mb as u128),
        ))
    }

    /// The cyclic counts `q_i = N(A_i < A_{i+1})` for `i < n` and `q_n = N(A_n < A_1)`.
    pub fn q_vector(&self) -> Vec<u128> {
        let n = self.n;
        let mut seen = vec![0u128; n];
        let mut q = vec![0u128; n];
        for run in &self.runs {
            let d = run.die - 1;
            // q for the predecessor die (cyclically) gains one per earlier predecessor letter
            let pred = (d + n - 1) % n;
            if pred != d {
                q[pred] += seen[pred] * run.len as u128;
            }
            seen[d] += run.len as u128;
        }
        q
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, run) in self.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if run.len == 1 {
                write!(f, "{}", run.die)?;
            } else {
                write!(f, "{}^{}", run.die, run.len)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

/// Parses whitespace-separated `d` / `d^r` tokens. The alphabet size is the
/// largest die index that appears.
pub fn parse_word(text: &str) -> Result<Word> {
    let mut runs = Vec::new();
    for (i, token) in text.split_whitespace().enumerate() {
        let position = i + 1;
        let (die, len) = match token.split_once('^') {
            Some((d, r)) => (d, r),
            None => (token, "1"),
        };
        let die: usize = die
            .parse()
            .map_err(|_| Error::parse(position, format!("bad die index in `{token}`")))?;
        let len: u64 = len
            .parse()
            .map_err(|_| Error::parse(position, format!("bad run length in `{token}`")))?;
        if die == 0 {
            return Err(Error::parse(position, "die indices start at 1"));
        }
        if len == 0 {
            return Err(Error::parse(
                position,
                format!("zero run length in `{token}`"),
            ));
        }
        runs.push(Run::new(die, len));
    }
    if runs.is_empty() {
        return Err(Error::parse(1, "empty word"));
    }
    let n = runs.iter().map(|r| r.die).max().unwrap_or(1);
    Word::from_runs(n, runs)
}

pub fn serialize_word(word: &Word) -> String {
    word.to_string()
}
