use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Run, Word};

/// `n` dice, each a strictly increasing list of positive faces, with no face
/// value shared between dice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiceSet {
    n: usize,
    dice: Vec<Vec<u64>>,
}

#[derive(Deserialize)]
struct RawDice {
    n: usize,
    dice: Vec<Vec<u64>>,
}

impl<'de> Deserialize<'de> for DiceSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawDice::deserialize(d)?;
        if raw.n != raw.dice.len() {
            return Err(serde::de::Error::custom(format!(
                "\"n\" is {} but {} dice are listed",
                raw.n,
                raw.dice.len()
            )));
        }
        DiceSet::new(raw.dice).map_err(serde::de::Error::custom)
    }
}

impl DiceSet {
    pub fn new(dice: Vec<Vec<u64>>) -> Result<Self> {
        if dice.is_empty() {
            return Err(Error::domain("a dice set needs at least one die"));
        }
        for (i, faces) in dice.iter().enumerate() {
            if faces.is_empty() {
                return Err(Error::domain(format!("die {} has no faces", i + 1)));
            }
            if faces[0] == 0 {
                return Err(Error::domain(format!(
                    "die {} has a non-positive face",
                    i + 1
                )));
            }
            if faces.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::domain(format!(
                    "faces of die {} are not strictly increasing",
                    i + 1
                )));
            }
        }
        let mut all: Vec<(u64, usize)> = dice
            .iter()
            .enumerate()
            .flat_map(|(i, f)| f.iter().map(move |&v| (v, i + 1)))
            .collect();
        all.sort_unstable();
        if let Some(w) = all.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::domain(format!(
                "face value {} appears on dice {} and {}; ties are not supported",
                w[0].0, w[0].1, w[1].1
            )));
        }
        Ok(DiceSet {
            n: dice.len(),
            dice,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("dice serialize")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dice(&self) -> &[Vec<u64>] {
        &self.dice
    }

    pub fn die(&self, index: usize) -> &[u64] {
        &self.dice[index - 1]
    }

    pub fn total_faces(&self) -> u64 {
        self.dice.iter().map(|d| d.len() as u64).sum()
    }

    /// True when the faces are exactly `1..=total_faces`.
    pub fn is_canonical(&self) -> bool {
        let total = self.total_faces();
        self.dice.iter().flatten().all(|&v| v <= total)
    }

    /// Replaces every face by its rank among all faces.
    pub fn canonicalize(&self) -> DiceSet {
        dice_from_word(&word_from_dice(self)).expect("every die has a face")
    }
}

/// Reads the dice faces in increasing order and records which die owns each.
pub fn word_from_dice(dice: &DiceSet) -> Word {
    let mut all: Vec<(u64, usize)> = dice
        .dice
        .iter()
        .enumerate()
        .flat_map(|(i, f)| f.iter().map(move |&v| (v, i + 1)))
        .collect();
    all.sort_unstable();
    Word::from_runs(dice.n, all.into_iter().map(|(_, d)| Run::new(d, 1)))
        .expect("die indices are in range")
}

/// Die `i` receives the (1-based) positions of letter `i`. Fails when some die
/// of the alphabet never occurs.
pub fn dice_from_word(word: &Word) -> Result<DiceSet> {
    let mut dice = vec![Vec::new(); word.n()];
    let mut position = 0u64;
    for run in word.runs() {
        dice[run.die - 1].extend(position + 1..=position + run.len);
        position += run.len;
    }
    DiceSet::new(dice)
}
