//! Exact verification of balance, nontransitivity and the winning probability.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::central::central_decompose;
use crate::certified::compare_to_pi_n;
use crate::dice::{word_from_dice, DiceSet};
use crate::error::{Error, Result};
use crate::rational::{half, Rational};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: usize,
    /// `P(A_1 < A_2), …, P(A_{n-1} < A_n), P(A_n < A_1)`.
    #[serde(with = "crate::rational::serde_str::vec")]
    pub cyclic_probs: Vec<Rational>,
    pub balanced: bool,
    pub nontransitive: bool,
    /// The common cyclic probability, present iff balanced.
    #[serde(with = "crate::rational::serde_str::option")]
    pub w: Option<Rational>,
    pub central: bool,
    pub central_type: Option<Vec<u64>>,
}

impl VerificationReport {
    pub fn is_bn(&self) -> bool {
        self.balanced && self.nontransitive
    }
}

pub fn verify_word(word: &Word) -> Result<VerificationReport> {
    let n = word.n();
    if n < 2 {
        return Err(Error::domain("a cycle of dice needs at least two dice"));
    }
    if let Some(i) = word.side_counts().iter().position(|&c| c == 0) {
        return Err(Error::domain(format!("die {} has no faces", i + 1)));
    }
    let cyclic_probs = (1..=n)
        .map(|i| word.probability(i, if i == n { 1 } else { i + 1 }))
        .collect::<Result<Vec<_>>>()?;
    let balanced = cyclic_probs.windows(2).all(|w| w[0] == w[1]);
    let nontransitive = cyclic_probs.iter().all(|p| p > &half());
    let w = balanced.then(|| cyclic_probs[0].clone());
    let decomposition = central_decompose(word);
    Ok(VerificationReport {
        n,
        cyclic_probs,
        balanced,
        nontransitive,
        w,
        central: decomposition.is_some(),
        central_type: decomposition.map(|d| d.word_type().to_vec()),
    })
}

pub fn verify_dice(dice: &DiceSet) -> Result<VerificationReport> {
    verify_word(&word_from_dice(dice))
}

/// True iff the word is balanced, nontransitive and has winning probability
/// exactly `claimed`.
pub fn check_claim(word: &Word, claimed: &Rational) -> bool {
    verify_word(word).is_ok_and(|r| r.is_bn() && r.w.as_ref() == Some(claimed))
}

pub fn check_claim_dice(dice: &DiceSet, claimed: &Rational) -> bool {
    check_claim(&word_from_dice(dice), claimed)
}

/// Certified `w ≤ π_n` for a balanced report; `None` when not balanced or
/// when the comparison cannot be decided.
pub fn within_upper_bound(report: &VerificationReport) -> Option<bool> {
    let w = report.w.as_ref()?;
    if report.n < 3 {
        return Some(w <= &Rational::one());
    }
    compare_to_pi_n(w, report.n).ok()?.at_most()
}
