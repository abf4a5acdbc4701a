//! Constructing central words with prescribed pair counts, and from them
//! balanced nontransitive dice.
//!
//! The word is grown one die at a time. Given a central word `τ = τ₁ j^{m_j} τ₂`
//! on dice `1..j`, the next word starts as
//!
//! ```text
//! σ₀ = j^{a_j} τ₁ (j+1)^{m_{j+1}} j^{m_j-a_j} τ₂
//! ```
//!
//! and the letters of die `j` are then pushed rightwards through `τ₁` and
//! `τ₂`. Passing a letter of die `j-1` raises `N(A_{j-1} < A_j)` by one;
//! passing any other die of `τ` changes no cyclic count. Die `j` never
//! crosses the block of die `j+1`, so the word stays central with the same
//! type. Runs are moved whole, so a pass over a run of length `r` by a run
//! of length `x` counts `x·r` elementary transpositions.

use serde::Serialize;

use crate::central::{central_decompose, CentralDecomposition};
use crate::dice::{dice_from_word, DiceSet};
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::search::{build_plan, ConstructionOptions, ConstructionPlan};
use crate::verify::{verify_word, VerificationReport};
use crate::word::{Run, Word};

const RECOUNT_INTERVAL: usize = 1 << 16;

/// Effect of swapping adjacent letters `A_i A_j → A_j A_i` on the cyclic
/// counts `q_1..q_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SwapCase {
    /// `A_j` is not in the view `{A_{i-1}, A_{i+1}}` of `A_i`.
    ViewFree,
    /// `j = i - 1` cyclically: `q_j` goes up by one.
    Increment,
    /// `j = i + 1` cyclically: `q_i` goes down by one.
    Decrement,
}

/// Classifies moving `left` past `right` in an `n`-dice word, returning the
/// case and the affected `q` coordinate (1-based).
pub fn swap_case(n: usize, left: usize, right: usize) -> (SwapCase, Option<usize>) {
    let pred = if left == 1 { n } else { left - 1 };
    let succ = if left == n { 1 } else { left + 1 };
    if right == pred {
        (SwapCase::Increment, Some(right))
    } else if right == succ {
        (SwapCase::Decrement, Some(left))
    } else {
        (SwapCase::ViewFree, None)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transposition {
    pub word: Word,
    pub case: SwapCase,
    /// Change of `q_1..q_n`, indexed from 0.
    pub delta: Vec<i64>,
}

/// Swaps the letters at `pos` and `pos + 1` (0-based).
pub fn transpose(word: &Word, pos: usize) -> Result<Transposition> {
    let n = word.n();
    if n < 3 {
        return Err(Error::domain("views are defined for at least 3 dice"));
    }
    let mut letters: Vec<usize> = word.letters().collect();
    if pos + 1 >= letters.len() {
        return Err(Error::domain(format!(
            "position {pos} has no right neighbour in a word of length {}",
            letters.len()
        )));
    }
    let (left, right) = (letters[pos], letters[pos + 1]);
    if left == right {
        return Err(Error::domain(format!(
            "letters at {pos} and {} are both die {left}",
            pos + 1
        )));
    }
    letters.swap(pos, pos + 1);
    let (case, coordinate) = swap_case(n, left, right);
    let mut delta = vec![0; n];
    if let Some(c) = coordinate {
        delta[c - 1] = if case == SwapCase::Increment { 1 } else { -1 };
    }
    Ok(Transposition {
        word: Word::new(n, letters)?,
        case,
        delta,
    })
}

/// One run-level move: `moving` passes over `passed` to its right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    /// 0-based position of the first letter of `moving` before the move.
    pub position: u64,
    pub moving_die: usize,
    pub moving_len: u64,
    pub passed_die: usize,
    pub passed_len: u64,
    pub case: SwapCase,
    /// Total change of `q_{coordinate}`; zero for view-free moves.
    pub delta: i128,
    pub coordinate: Option<usize>,
}

/// Moves recorded while inserting one die.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelTrace {
    /// Number of dice in the word produced at this level.
    pub dice: usize,
    pub steps: Vec<TraceStep>,
    pub counts_before: Vec<u128>,
    pub counts_after: Vec<u128>,
}

/// The intervals `[a_i(m_{i+1}-a_{i+1}), a_i m_{i+1} + (m_i-a_i)(m_{i+1}-a_{i+1})]`
/// that `N(A_i < A_{i+1})` can take in a central word of type `a`, for
/// `i = 1..n-2`.
pub fn pair_count_bounds(m: &[u64], a: &[u64]) -> Result<Vec<(u128, u128)>> {
    let n = m.len();
    if n < 3 {
        return Err(Error::domain(format!("need at least 3 dice, got {n}")));
    }
    if a.len() != n - 1 {
        return Err(Error::domain(format!(
            "type has {} entries, expected {}",
            a.len(),
            n - 1
        )));
    }
    if let Some(i) = m.iter().position(|&x| x == 0) {
        return Err(Error::domain(format!("die {} has no sides", i + 1)));
    }
    if let Some(i) = (0..n - 1).find(|&i| a[i] > m[i]) {
        return Err(Error::domain(format!(
            "a_{} = {} exceeds m_{} = {}",
            i + 1,
            a[i],
            i + 1,
            m[i]
        )));
    }
    Ok((0..n - 2)
        .map(|i| {
            let (mi, mj) = (m[i] as u128, m[i + 1] as u128);
            let (ai, aj) = (a[i] as u128, a[i + 1] as u128);
            (ai * (mj - aj), ai * mj + (mi - ai) * (mj - aj))
        })
        .collect())
}

struct Region {
    runs: Vec<Run>,
    /// Index of the run of the inserted die.
    mover: usize,
    /// 0-based position of the mover's first letter in the whole word.
    position: u64,
}

struct Level {
    dice: usize,
    mover: usize,
    partner: usize,
    q: Vec<u128>,
    steps_since_recount: usize,
    record: bool,
    steps: Vec<TraceStep>,
}

impl Level {
    fn apply(&mut self, step: TraceStep) {
        if let Some(c) = step.coordinate {
            let q = &mut self.q[c - 1];
            *q = (*q as i128 + step.delta) as u128;
        }
        self.steps_since_recount += 1;
        if self.record {
            self.steps.push(step);
        }
    }

    fn step(&self, position: u64, moving: Run, passed: Run) -> TraceStep {
        let (case, coordinate) = swap_case(self.dice, moving.die, passed.die);
        let elementary = moving.len as i128 * passed.len as i128;
        let delta = match case {
            SwapCase::ViewFree => 0,
            SwapCase::Increment => elementary,
            SwapCase::Decrement => -elementary,
        };
        TraceStep {
            position,
            moving_die: moving.die,
            moving_len: moving.len,
            passed_die: passed.die,
            passed_len: passed.len,
            case,
            delta,
            coordinate,
        }
    }

    /// Moves the mover past every run that is not the partner die.
    fn flush(&mut self, region: &mut Region) {
        if region.runs.get(region.mover).is_none_or(|r| r.len == 0) {
            return;
        }
        while region.mover + 1 < region.runs.len()
            && region.runs[region.mover + 1].die != self.partner
        {
            self.pass_whole(region);
        }
    }

    fn pass_whole(&mut self, region: &mut Region) {
        let i = region.mover;
        let (moving, passed) = (region.runs[i], region.runs[i + 1]);
        debug_assert_ne!(passed.die, self.mover);
        let step = self.step(region.position, moving, passed);
        self.apply(step);
        region.runs.swap(i, i + 1);
        region.mover += 1;
        region.position += passed.len;
    }

    /// Pushes the mover through the region until `remaining` increments
    /// have been spent or the region is exhausted.
    fn travel(&mut self, region: &mut Region, remaining: &mut u128) {
        if region.runs.get(region.mover).is_none_or(|r| r.len == 0) {
            return;
        }
        while *remaining > 0 {
            self.flush(region);
            let i = region.mover;
            if i + 1 >= region.runs.len() {
                return;
            }
            let (moving, passed) = (region.runs[i], region.runs[i + 1]);
            let full = moving.len as u128 * passed.len as u128;
            if full <= *remaining {
                *remaining -= full;
                self.pass_whole(region);
                continue;
            }
            // Partial pass: `whole` letters cross the entire partner run and
            // one more letter crosses `rest` partner letters.
            let whole = (*remaining / passed.len as u128) as u64;
            let rest = (*remaining % passed.len as u128) as u64;
            let mut replacement = Vec::with_capacity(5);
            if whole > 0 {
                let tail = Run::new(self.mover, whole);
                let step = self.step(region.position + moving.len - whole, tail, passed);
                self.apply(step);
            }
            if rest > 0 {
                let single = Run::new(self.mover, 1);
                let head = Run::new(passed.die, rest);
                let step = self.step(region.position + moving.len - whole - 1, single, head);
                self.apply(step);
                replacement.push(Run::new(self.mover, moving.len - whole - 1));
                replacement.push(head);
                replacement.push(single);
                replacement.push(Run::new(passed.die, passed.len - rest));
            } else {
                replacement.push(Run::new(self.mover, moving.len - whole));
                replacement.push(passed);
            }
            replacement.push(Run::new(self.mover, whole));
            replacement.retain(|r| r.len > 0);
            region.runs.splice(i..i + 2, replacement);
            *remaining = 0;
        }
    }
}

fn assemble(n: usize, left: &[Run], block: u64, right: &[Run]) -> Word {
    let mut word = Word::empty(n);
    word.extend_runs(left.iter().copied());
    word.push_run(Run::new(n, block));
    word.extend_runs(right.iter().copied());
    word
}

/// Inserts die `j+1` into a central word `tau` on dice `1..j`.
fn extend(
    tau: &CentralDecomposition,
    m_next: u64,
    a_j: u64,
    target: u128,
    record: bool,
) -> Result<(CentralDecomposition, LevelTrace)> {
    let j = tau.n();
    let dice = j + 1;
    let m_j = tau.block_len();
    let a_prev = tau.word_type()[j - 2];

    let mut left = Region {
        runs: std::iter::once(Run::new(j, a_j))
            .chain(tau.prefix().runs().iter().copied())
            .collect(),
        mover: 0,
        position: 0,
    };
    let left_len = a_j + tau.prefix().len();
    let mut right = Region {
        runs: std::iter::once(Run::new(j, m_j - a_j))
            .chain(tau.suffix().runs().iter().copied())
            .collect(),
        mover: 0,
        position: left_len + m_next,
    };

    let start = a_prev as u128 * (m_j - a_j) as u128;
    let sigma0 = assemble(dice, &left.runs, m_next, &right.runs);
    let counts_before = sigma0.q_vector();
    if counts_before[j - 2] != start {
        return Err(Error::consistency(format!(
            "σ₀ has N(A_{} < A_{j}) = {}, expected {start}",
            j - 1,
            counts_before[j - 2]
        )));
    }
    let capacity = a_j as u128 * a_prev as u128
        + (m_j - a_j) as u128 * (tau.side_counts()[j - 2] - a_prev) as u128;
    let mut remaining = target
        .checked_sub(start)
        .filter(|psi| *psi <= capacity)
        .ok_or_else(|| {
            Error::consistency(format!(
                "target {target} outside the reachable range [{start}, {}]",
                start + capacity
            ))
        })?;

    let mut level = Level {
        dice,
        mover: j,
        partner: j - 1,
        q: counts_before.clone(),
        steps_since_recount: 0,
        record,
        steps: Vec::new(),
    };

    if remaining > 0 {
        level.flush(&mut left);
        level.flush(&mut right);
        level.travel(&mut left, &mut remaining);
        if level.steps_since_recount >= RECOUNT_INTERVAL {
            recount(&level, &left, m_next, &right)?;
            level.steps_since_recount = 0;
        }
        level.travel(&mut right, &mut remaining);
    }
    if remaining > 0 {
        return Err(Error::consistency(format!(
            "ran out of incrementing transpositions with {remaining} left"
        )));
    }

    let counts_after = recount(&level, &left, m_next, &right)?;
    for l in 0..j - 2 {
        if counts_after[l] != counts_before[l] {
            return Err(Error::consistency(format!(
                "q_{} changed while inserting die {dice}",
                l + 1
            )));
        }
    }
    if counts_after[j - 2] != target {
        return Err(Error::consistency(format!(
            "q_{} = {} but the target is {target}",
            j - 1,
            counts_after[j - 2]
        )));
    }

    let prefix = Word::from_runs(j, left.runs.iter().copied().filter(|r| r.len > 0))?;
    let suffix = Word::from_runs(j, right.runs.iter().copied().filter(|r| r.len > 0))?;
    let next = CentralDecomposition::new(dice, prefix, m_next, suffix)?;
    Ok((
        next,
        LevelTrace {
            dice,
            steps: level.steps,
            counts_before,
            counts_after,
        },
    ))
}

fn recount(level: &Level, left: &Region, block: u64, right: &Region) -> Result<Vec<u128>> {
    let full = assemble(level.dice, &left.runs, block, &right.runs).q_vector();
    if full != level.q {
        return Err(Error::consistency(format!(
            "incremental counts {:?} disagree with recount {:?}",
            level.q, full
        )));
    }
    Ok(full)
}

fn check_targets(m: &[u64], a: &[u64], s: &[u128]) -> Result<()> {
    let bounds = pair_count_bounds(m, a)?;
    if s.len() != bounds.len() {
        return Err(Error::domain(format!(
            "expected {} target counts, got {}",
            bounds.len(),
            s.len()
        )));
    }
    for (i, (&(lo, hi), &target)) in bounds.iter().zip(s).enumerate() {
        let idx = i + 1;
        if target < lo || target > hi {
            return Err(Error::domain(format!(
                "s_{idx} = {target} violates a_{idx}(m_{next}-a_{next}) = {lo} ≤ s_{idx} ≤ a_{idx}m_{next} + (m_{idx}-a_{idx})(m_{next}-a_{next}) = {hi}",
                next = idx + 1
            )));
        }
    }
    Ok(())
}

fn build(
    m: &[u64],
    a: &[u64],
    s: &[u128],
    record: bool,
) -> Result<(CentralDecomposition, Vec<LevelTrace>)> {
    check_targets(m, a, s)?;
    let n = m.len();
    let mut prefix = Word::empty(1);
    prefix.push_run(Run::new(1, a[0]));
    let mut suffix = Word::empty(1);
    suffix.push_run(Run::new(1, m[0] - a[0]));
    let mut word = CentralDecomposition::new(2, prefix, m[1], suffix)?;
    let mut traces = Vec::with_capacity(n - 2);
    for j in 2..n {
        let (next, trace) = extend(&word, m[j], a[j - 1], s[j - 2], record)?;
        word = next;
        traces.push(trace);
    }
    verify_central(&word, m, a, s)?;
    Ok((word, traces))
}

/// Rechecks a built word from scratch.
fn verify_central(dec: &CentralDecomposition, m: &[u64], a: &[u64], s: &[u128]) -> Result<()> {
    let word = dec.to_word();
    let again = central_decompose(&word)
        .ok_or_else(|| Error::consistency("constructed word is not central"))?;
    if again.word_type() != a {
        return Err(Error::consistency(format!(
            "constructed type {:?}, expected {a:?}",
            again.word_type()
        )));
    }
    if word.side_counts() != m {
        return Err(Error::consistency("constructed side counts differ"));
    }
    for (i, &target) in s.iter().enumerate() {
        if word.count_pairs(i + 1, i + 2)? != target {
            return Err(Error::consistency(format!("recount of s_{} failed", i + 1)));
        }
    }
    Ok(())
}

/// A central word with side counts `m`, type `a` and `N(A_i < A_{i+1}) = s_i`
/// for `i = 1..n-2`. Fails with a domain error when some `s_i` lies outside
/// its interval from [`pair_count_bounds`].
pub fn build_central_word(m: &[u64], a: &[u64], s: &[u128]) -> Result<CentralDecomposition> {
    build(m, a, s, false).map(|(w, _)| w)
}

/// As [`build_central_word`], also returning every run-level move.
pub fn build_central_word_traced(
    m: &[u64],
    a: &[u64],
    s: &[u128],
) -> Result<(CentralDecomposition, Vec<LevelTrace>)> {
    build(m, a, s, true)
}

/// Three-dice case: a central `(m1, m2, m3)`-word of type `(a1, a2)` with
/// `N(A_1 < A_2) = s`.
pub fn build_base_n3(
    m1: u64,
    m2: u64,
    m3: u64,
    a1: u64,
    a2: u64,
    s: u128,
) -> Result<CentralDecomposition> {
    build_central_word(&[m1, m2, m3], &[a1, a2], &[s])
}

#[derive(Debug, Clone)]
pub struct Construction {
    pub plan: ConstructionPlan,
    pub word: CentralDecomposition,
    pub dice: DiceSet,
    pub report: VerificationReport,
}

/// `n` dice with `m` sides each whose cyclic probabilities all equal `p`.
pub fn construct_dice(n: usize, p: &Rational) -> Result<Construction> {
    construct_dice_with(n, p, &ConstructionOptions::default())
}

pub fn construct_dice_with(
    n: usize,
    p: &Rational,
    options: &ConstructionOptions,
) -> Result<Construction> {
    let plan = build_plan(n, p, options)?;
    let word = build_central_word(&plan.side_counts(), &plan.a, &plan.s)?;
    let full = word.to_word();
    let report = verify_word(&full)?;
    if !report.balanced || !report.nontransitive || report.w.as_ref() != Some(p) {
        return Err(Error::consistency(format!(
            "constructed dice fail verification for p = {}",
            format_rational(p)
        )));
    }
    let dice = dice_from_word(&full)?;
    Ok(Construction {
        plan,
        word,
        dice,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rational;
    use crate::word::parse_word;

    fn sample() -> Word {
        parse_word("3 1 3 4 3 2 3").unwrap()
    }

    #[test]
    fn view_free_swap() {
        let t = transpose(&sample(), 0).unwrap();
        assert_eq!(t.case, SwapCase::ViewFree);
        assert_eq!(t.delta, vec![0, 0, 0, 0]);
        assert_eq!(t.word, parse_word("1 3^2 4 3 2 3").unwrap());
    }

    #[test]
    fn incrementing_swap() {
        let t = transpose(&sample(), 4).unwrap();
        assert_eq!(t.case, SwapCase::Increment);
        assert_eq!(t.delta, vec![0, 1, 0, 0]);
        assert_eq!(t.word, parse_word("3 1 3 4 2 3^2").unwrap());
    }

    #[test]
    fn decrementing_swap() {
        let t = transpose(&sample(), 5).unwrap();
        assert_eq!(t.case, SwapCase::Decrement);
        assert_eq!(t.delta, vec![0, -1, 0, 0]);
        assert_eq!(t.word, parse_word("3 1 3 4 3^2 2").unwrap());
    }

    #[test]
    fn equal_letters_cannot_swap() {
        let w = parse_word("1 1 2 3").unwrap();
        assert!(transpose(&w, 0).is_err());
        assert!(transpose(&w, 3).is_err());
    }

    #[test]
    fn cyclic_wraparound_cases() {
        assert_eq!(swap_case(4, 1, 4), (SwapCase::Increment, Some(4)));
        assert_eq!(swap_case(4, 4, 1), (SwapCase::Decrement, Some(4)));
    }

    #[test]
    fn base_case_small() {
        let dec = build_base_n3(1, 1, 2, 0, 0, 1).unwrap();
        assert_eq!(dec.to_word().to_string(), "3^2 1 2");
        let dec = build_base_n3(1, 1, 2, 0, 0, 0).unwrap();
        assert_eq!(dec.to_word().to_string(), "3^2 2 1");
    }

    #[test]
    fn base_case_at_upper_bound() {
        let dec = build_base_n3(2, 2, 2, 1, 1, 3).unwrap();
        let w = dec.to_word();
        assert_eq!(w.count_pairs(1, 2).unwrap(), 3);
        assert_eq!(dec.word_type(), &[1, 1]);
    }

    #[test]
    fn lower_bound_gives_nested_start() {
        // ψ = 0 at every level
        let m = [3, 2, 3, 2];
        let a = [1, 2, 1];
        let bounds = pair_count_bounds(&m, &a).unwrap();
        let s: Vec<u128> = bounds.iter().map(|b| b.0).collect();
        let (dec, traces) = build_central_word_traced(&m, &a, &s).unwrap();
        assert!(traces.iter().all(|t| t.steps.is_empty()));
        // σ₀ for die 3: 2^2 [1] 3^3 2^0 [1^2], then die 4: 3^1 [2^2 1] 4^2 3^2 [1^2]
        assert_eq!(dec.to_word().to_string(), "3 2^2 1 4^2 3^2 1^2");
    }

    #[test]
    fn out_of_range_target_is_domain_error() {
        let err = build_base_n3(2, 2, 2, 1, 1, 4).unwrap_err();
        match err {
            Error::Domain(msg) => assert!(msg.contains("= 3"), "{msg}"),
            other => panic!("{other:?}"),
        }
        assert!(build_central_word(&[2, 2, 2], &[3, 1], &[1]).is_err());
        assert!(build_central_word(&[2, 2, 2], &[1, 1], &[]).is_err());
    }

    #[test]
    fn efron_parameters() {
        let dec = build_central_word(&[6, 6, 6, 6], &[2, 3, 4], &[24, 24]).unwrap();
        let w = dec.to_word();
        assert_eq!(w.count_pairs(1, 2).unwrap(), 24);
        assert_eq!(w.count_pairs(2, 3).unwrap(), 24);
        assert_eq!(dec.word_type(), &[2, 3, 4]);
    }

    #[test]
    fn trace_deltas_add_up() {
        let m = [5, 4, 6, 3, 5];
        let a = [2, 3, 1, 2];
        let bounds = pair_count_bounds(&m, &a).unwrap();
        let s: Vec<u128> = bounds.iter().map(|(lo, hi)| (lo + hi) / 2 + 1).collect();
        let (dec, traces) = build_central_word_traced(&m, &a, &s).unwrap();
        for t in &traces {
            let total: i128 = t.steps.iter().map(|s| s.delta).sum();
            let j = t.dice - 1;
            assert_eq!(
                t.counts_after[j - 2] as i128 - t.counts_before[j - 2] as i128,
                total
            );
            assert!(t.steps.iter().all(|s| s.case != SwapCase::Decrement));
        }
        let w = dec.to_word();
        for (i, target) in s.iter().enumerate() {
            assert_eq!(w.count_pairs(i + 1, i + 2).unwrap(), *target);
        }
    }

    #[test]
    fn construct_four_at_bound() {
        let c = construct_dice(4, &rational(2, 3)).unwrap();
        assert_eq!(c.dice.n(), 4);
        assert!(c.dice.dice().iter().all(|d| d.len() == 6));
        assert_eq!(c.report.w, Some(rational(2, 3)));
    }

    #[test]
    fn construct_rejects_half() {
        assert!(matches!(
            construct_dice(5, &rational(1, 2)),
            Err(Error::Domain(_))
        ));
    }
}
