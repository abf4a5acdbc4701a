//! Brute-force ground truth for small words.
//!
//! Everything here works on plain letter vectors with the literal
//! double-loop pair count, independently of the run-length machinery used
//! by the builder.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCap {
    /// Largest total word length that may be enumerated.
    pub max_len: u64,
}

impl Default for EnumerationCap {
    fn default() -> Self {
        EnumerationCap { max_len: 16 }
    }
}

impl EnumerationCap {
    fn check(&self, len: u64) -> Result<()> {
        if len > self.max_len {
            return Err(Error::resource(format!(
                "word length {len} exceeds the enumeration cap {}",
                self.max_len
            )));
        }
        Ok(())
    }
}

/// Literal `O(L²)` count of pairs `i < j` with `alpha` at `i` and `beta` at `j`.
pub fn count_pairs_naive(word: &Word, alpha: usize, beta: usize) -> Result<u128> {
    if alpha == beta {
        return Err(Error::domain("pair must consist of distinct dice"));
    }
    let letters: Vec<usize> = word.letters().collect();
    Ok(count_letters(&letters, alpha, beta))
}

fn count_letters(letters: &[usize], alpha: usize, beta: usize) -> u128 {
    let mut total = 0;
    for i in 0..letters.len() {
        for j in i + 1..letters.len() {
            if letters[i] == alpha && letters[j] == beta {
                total += 1;
            }
        }
    }
    total
}

/// Distinct permutations of a multiset in lexicographic order.
pub struct MultisetPermutations {
    current: Vec<usize>,
    done: bool,
}

impl MultisetPermutations {
    /// `counts[i]` copies of letter `i + 1`.
    pub fn new(counts: &[u64]) -> Self {
        let current = counts
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i + 1, c as usize))
            .collect();
        MultisetPermutations {
            current,
            done: false,
        }
    }
}

impl Iterator for MultisetPermutations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let v = &mut self.current;
        match (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) {
            Some(i) => {
                let pivot = i - 1;
                let swap = (i..v.len()).rev().find(|&j| v[j] > v[pivot]).unwrap();
                v.swap(pivot, swap);
                v[i..].reverse();
            }
            None => self.done = true,
        }
        Some(out)
    }
}

/// Every vector `(s_1, …, s_{n-2})` with `s_i = N(A_i < A_{i+1})` realised by
/// some central word with side counts `m` and type `a`.
///
/// A central word is a free choice of prefix (a permutation of the type) and
/// suffix (a permutation of the remaining letters). Each `s_i` splits as the
/// count inside the prefix, plus `a_i(m_{i+1} - a_{i+1})` across the block,
/// plus the count inside the suffix, so the realised set is the sum of the
/// prefix and suffix sets shifted by the cross term.
pub fn enumerate_central(
    m: &[u64],
    a: &[u64],
    cap: &EnumerationCap,
) -> Result<BTreeSet<Vec<u128>>> {
    let n = m.len();
    if n < 3 || a.len() != n - 1 {
        return Err(Error::domain("need n ≥ 3 side counts and n-1 type entries"));
    }
    if (0..n - 1).any(|i| a[i] > m[i]) || m.contains(&0) {
        return Err(Error::domain("invalid shape or type"));
    }
    cap.check(m.iter().sum())?;

    let inner_counts = |counts: &[u64]| -> BTreeSet<Vec<u128>> {
        MultisetPermutations::new(counts)
            .map(|letters| {
                (1..n - 1)
                    .map(|i| count_letters(&letters, i, i + 1))
                    .collect()
            })
            .collect()
    };
    let prefix = inner_counts(a);
    let rest: Vec<u64> = (0..n - 1).map(|i| m[i] - a[i]).collect();
    let suffix = inner_counts(&rest);
    let cross: Vec<u128> = (0..n - 2)
        .map(|i| a[i] as u128 * rest[i + 1] as u128)
        .collect();

    let mut achieved = BTreeSet::new();
    for p in &prefix {
        for s in &suffix {
            achieved.insert((0..n - 2).map(|i| p[i] + cross[i] + s[i]).collect());
        }
    }
    Ok(achieved)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumResult {
    pub n: usize,
    pub sides: Vec<u64>,
    #[serde(serialize_with = "serialize_set")]
    pub achieved: BTreeSet<Rational>,
    #[serde(with = "crate::rational::serde_str::option")]
    pub max_w: Option<Rational>,
    /// Number of balanced nontransitive words.
    pub count: u64,
}

fn serialize_set<S: serde::Serializer>(
    set: &BTreeSet<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(set.iter().map(format_rational))
}

impl SpectrumResult {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let sides: Vec<String> = self.sides.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "n = {}, sides = ({})", self.n, sides.join(","));
        let _ = writeln!(out, "balanced nontransitive words: {}", self.count);
        let _ = writeln!(out, "{:>12}  {:>14}", "w", "decimal");
        for w in &self.achieved {
            let _ = writeln!(
                out,
                "{:>12}  {:>14.10}",
                format_rational(w),
                crate::rational::to_f64(w)
            );
        }
        out
    }
}

#[derive(Default)]
struct Tally {
    achieved: BTreeSet<(u128, u128)>,
    count: u64,
}

struct Search<'a> {
    n: usize,
    sides: &'a [u64],
}

impl Search<'_> {
    fn pred(&self, d: usize) -> usize {
        (d + self.n - 1) % self.n
    }

    fn leaf(&self, q: &[u128], tally: &mut Tally) {
        let n = self.n;
        let denom = |i: usize| self.sides[i] as u128 * self.sides[(i + 1) % n] as u128;
        if (0..n).any(|i| 2 * q[i] <= denom(i)) {
            return;
        }
        if (1..n).any(|i| q[i] * denom(0) != q[0] * denom(i)) {
            return;
        }
        let g = q[0].gcd(&denom(0));
        tally.achieved.insert((q[0] / g, denom(0) / g));
        tally.count += 1;
    }

    fn dfs(
        &self,
        remaining: &mut [u64],
        seen: &mut [u128],
        q: &mut [u128],
        left: u64,
        tally: &mut Tally,
    ) {
        if left == 0 {
            self.leaf(q, tally);
            return;
        }
        for d in 0..self.n {
            if remaining[d] == 0 {
                continue;
            }
            let p = self.pred(d);
            remaining[d] -= 1;
            q[p] += seen[p];
            seen[d] += 1;
            self.dfs(remaining, seen, q, left - 1, tally);
            seen[d] -= 1;
            q[p] -= seen[p];
            remaining[d] += 1;
        }
    }
}

/// Enumerates every word with the given side counts and collects the
/// winning probabilities of the balanced nontransitive ones.
///
/// Work is split across threads by the first two letters; the merge is a
/// set union, so the result does not depend on scheduling.
pub fn bn_spectrum(n: usize, sides: &[u64], cap: &EnumerationCap) -> Result<SpectrumResult> {
    if n < 3 || sides.len() != n {
        return Err(Error::domain("need n ≥ 3 and one side count per die"));
    }
    if sides.contains(&0) {
        return Err(Error::domain("every die needs at least one side"));
    }
    let total: u64 = sides.iter().sum();
    cap.check(total)?;

    let search = Search { n, sides };
    let mut starts = Vec::new();
    for first in 0..n {
        for second in 0..n {
            let mut rem = sides.to_vec();
            if rem[first] == 0 {
                continue;
            }
            rem[first] -= 1;
            if rem[second] == 0 {
                continue;
            }
            starts.push((first, second));
        }
    }

    let tallies: Vec<Tally> = std::thread::scope(|scope| {
        let handles: Vec<_> = starts
            .iter()
            .map(|&(first, second)| {
                let search = &search;
                scope.spawn(move || {
                    let mut remaining = sides.to_vec();
                    let mut seen = vec![0u128; n];
                    let mut q = vec![0u128; n];
                    for d in [first, second] {
                        let p = search.pred(d);
                        remaining[d] -= 1;
                        q[p] += seen[p];
                        seen[d] += 1;
                    }
                    let mut tally = Tally::default();
                    search.dfs(&mut remaining, &mut seen, &mut q, total - 2, &mut tally);
                    tally
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });

    let mut merged = Tally::default();
    for t in tallies {
        merged.achieved.extend(t.achieved);
        merged.count += t.count;
    }
    let achieved: BTreeSet<Rational> = merged
        .achieved
        .into_iter()
        .map(|(num, den)| Rational::new(BigInt::from(num), BigInt::from(den)))
        .collect();
    Ok(SpectrumResult {
        n,
        sides: sides.to_vec(),
        max_w: achieved.iter().next_back().cloned(),
        achieved,
        count: merged.count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rational;
    use crate::word::parse_word;

    #[test]
    fn naive_count_on_efron() {
        let w = parse_word("1^2 2^3 3^4 4^6 1^4 2^3 3^2").unwrap();
        assert_eq!(count_pairs_naive(&w, 1, 2).unwrap(), 24);
        assert!(count_pairs_naive(&w, 2, 2).is_err());
    }

    #[test]
    fn multiset_permutation_count() {
        assert_eq!(MultisetPermutations::new(&[2, 2]).count(), 6);
        assert_eq!(MultisetPermutations::new(&[3, 3, 3]).count(), 1680);
        assert_eq!(MultisetPermutations::new(&[]).count(), 1);
        let all: Vec<_> = MultisetPermutations::new(&[1, 2]).collect();
        assert_eq!(all, vec![vec![1, 2, 2], vec![2, 1, 2], vec![2, 2, 1]]);
    }

    #[test]
    fn central_sets_small() {
        let cap = EnumerationCap::default();
        let got = enumerate_central(&[1, 1, 2], &[0, 0], &cap).unwrap();
        assert_eq!(got, [vec![0], vec![1]].into_iter().collect());
        let got = enumerate_central(&[2, 2, 2], &[1, 1], &cap).unwrap();
        assert_eq!(got, [vec![1], vec![2], vec![3]].into_iter().collect());
    }

    #[test]
    fn cap_is_enforced() {
        let cap = EnumerationCap { max_len: 8 };
        assert!(matches!(
            enumerate_central(&[3, 3, 3], &[1, 1], &cap),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            bn_spectrum(3, &[3, 3, 3], &cap),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn one_sided_dice_have_no_spectrum() {
        let r = bn_spectrum(3, &[1, 1, 1], &EnumerationCap::default()).unwrap();
        assert!(r.achieved.is_empty());
        assert_eq!(r.count, 0);
        assert_eq!(r.max_w, None);
    }

    #[test]
    fn three_sided_triples() {
        let r = bn_spectrum(3, &[3, 3, 3], &EnumerationCap::default()).unwrap();
        assert!(!r.achieved.is_empty());
        assert!(r.achieved.iter().all(|w| w > &rational(1, 2)));
        assert!(r.max_w.unwrap() <= rational(5, 9));
    }
}
