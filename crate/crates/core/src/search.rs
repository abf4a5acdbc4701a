//! Choosing the construction parameters for a target probability `p`.
//!
//! For `n ≥ 5` the free chain parameters `p_2..p_k` are searched near the
//! targets `p_j*`, where the chain holds with room to spare. Two strategies:
//!
//! * [`SearchStrategy::SharedDenominator`] scans grids `c/D` with `D` a
//!   multiple of the denominator of `p`, rounding each `p_j*` to the grid.
//!   The side count `m` is `2D` at the first grid that passes, so `m` grows
//!   with how close `p` is to `π_n` rather than with `n`.
//! * [`SearchStrategy::BoxHalving`] takes, per coordinate, the simplest
//!   rational in `[p_j* - δ, p_j* + δ]`, starting from
//!   `δ₀ = min((π_n - p)/2, (1/2 - Γ_n)/2)` and halving `δ` until the vector
//!   passes.
//!
//! Either way the candidate is accepted only after an exact check of
//! `L ≤ p ≤ U`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bounds::{envelopes, envelopes_f64, gamma_n, p_star_vector, pi_n_f64, BoundContext};
use crate::builder::pair_count_bounds;
use crate::certified::{compare_to_pi_n, BoundComparison};
use crate::error::{Error, Result};
use crate::rational::{format_rational, from_f64, half, to_f64, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchStrategy {
    #[default]
    SharedDenominator,
    BoxHalving,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionOptions {
    pub strategy: SearchStrategy,
    /// Largest denominator the chain search may use for any `p_j`.
    pub max_denominator: u64,
    /// Use the smallest admissible `m` instead of `2·lcm(denominators)`.
    pub shrink_m: bool,
    /// Upper limit on `n·m`, the total number of faces.
    pub max_faces: u64,
}

impl Default for ConstructionOptions {
    fn default() -> Self {
        ConstructionOptions {
            strategy: SearchStrategy::default(),
            max_denominator: 1_000_000,
            shrink_m: false,
            max_faces: 20_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionPlan {
    pub n: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub p: Rational,
    /// Common side count of every die.
    pub m: u64,
    /// Type of the central word, `a_1..a_{n-1}`.
    pub a: Vec<u64>,
    /// Target counts `N(A_i < A_{i+1})` for `i = 1..n-2`; all equal `p·m²`.
    pub s: Vec<u128>,
    /// The chain parameters `p_2..p_k`.
    #[serde(with = "crate::rational::serde_str::vec")]
    pub aux: Vec<Rational>,
}

impl ConstructionPlan {
    pub fn side_counts(&self) -> Vec<u64> {
        vec![self.m; self.n]
    }
}

/// Simplest rational (smallest denominator, then numerator) in `[lo, hi]`,
/// for `0 ≤ lo ≤ hi`. Stern–Brocot descent via continued fractions.
pub fn simplest_in(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    let floor = lo.floor();
    if &floor == lo {
        return floor;
    }
    if &(&floor + Rational::one()) <= hi {
        return floor + Rational::one();
    }
    let inner_lo = (hi - &floor).recip();
    let inner_hi = (lo - &floor).recip();
    floor + simplest_in(&inner_lo, &inner_hi).recip()
}

fn check_target(n: usize, p: &Rational) -> Result<BoundComparison> {
    BoundContext::new(n)?;
    if p <= &half() {
        return Err(Error::domain(format!(
            "p = {} must exceed 1/2",
            format_rational(p)
        )));
    }
    let cmp = compare_to_pi_n(p, n)?;
    match cmp {
        BoundComparison::Above => Err(Error::domain(format!(
            "p = {} exceeds the upper bound π_{n} ≈ {:.12} on the winning probability of {n} balanced nontransitive dice",
            format_rational(p),
            pi_n_f64(n)
        ))),
        BoundComparison::Undecided => Err(Error::domain(format!(
            "p = {} cannot be separated from π_{n} at the working precision",
            format_rational(p)
        ))),
        _ => Ok(cmp),
    }
}

/// Rationals `p_2..p_k ∈ (0, 1)` with `L ≤ p ≤ U`. Empty for `n ∈ {3, 4}`.
pub fn find_rationals(
    n: usize,
    p: &Rational,
    options: &ConstructionOptions,
) -> Result<Vec<Rational>> {
    if check_target(n, p)? == BoundComparison::Equal {
        return Err(Error::domain(format!(
            "p = π_{n} has no interior chain; it is handled directly"
        )));
    }
    let ctx = BoundContext::new(n)?;
    if ctx.k < 2 {
        return Ok(Vec::new());
    }
    let stars = p_star_vector(n)?;
    match options.strategy {
        SearchStrategy::SharedDenominator => shared_denominator(n, p, &stars, options),
        SearchStrategy::BoxHalving => box_halving(n, p, &stars, options),
    }
}

fn budget_exhausted(n: usize, p: &Rational, options: &ConstructionOptions) -> Error {
    Error::resource(format!(
        "denominator budget {} exhausted while searching chain parameters for p = {} (n = {n})",
        options.max_denominator,
        format_rational(p)
    ))
}

fn passes(n: usize, p: &Rational, candidate: &[Rational]) -> Result<bool> {
    Ok(envelopes(n, candidate)?.is_some_and(|(l, u)| &l <= p && p <= &u))
}

fn shared_denominator(
    n: usize,
    p: &Rational,
    stars: &[f64],
    options: &ConstructionOptions,
) -> Result<Vec<Rational>> {
    let base = p
        .denom()
        .to_u64()
        .filter(|q| *q <= options.max_denominator)
        .ok_or_else(|| budget_exhausted(n, p, options))?;
    let pf = to_f64(p);
    let mut denominator = base;
    while denominator <= options.max_denominator {
        let d = denominator;
        denominator += base;
        if d < 2 {
            continue;
        }
        let numerators: Vec<u64> = stars
            .iter()
            .map(|s| ((s * d as f64).round() as u64).clamp(1, d - 1))
            .collect();
        let approx: Vec<f64> = numerators.iter().map(|&c| c as f64 / d as f64).collect();
        // cheap float screen before the exact check
        let (l, u) = envelopes_f64(n, &approx)?.expect("k ≥ 2");
        if l > pf + 1e-9 || u < pf - 1e-9 {
            continue;
        }
        let candidate: Vec<Rational> = numerators
            .iter()
            .map(|&c| Rational::new(BigInt::from(c), BigInt::from(d)))
            .collect();
        if passes(n, p, &candidate)? {
            return Ok(candidate);
        }
    }
    Err(budget_exhausted(n, p, options))
}

fn box_halving(
    n: usize,
    p: &Rational,
    stars: &[f64],
    options: &ConstructionOptions,
) -> Result<Vec<Rational>> {
    let gamma = gamma_n(n)?;
    let pf = to_f64(p);
    let mut delta = ((pi_n_f64(n) - pf) / 2.0).min((0.5 - gamma) / 2.0);
    if delta.is_nan() || delta <= 0.0 {
        delta = f64::EPSILON;
    }
    let eps = from_f64(1e-12).expect("finite");
    let one = Rational::one();

    loop {
        let mut candidate = Vec::with_capacity(stars.len());
        for &star in stars {
            let lo = from_f64(star - delta)
                .unwrap_or_else(Rational::zero)
                .max(eps.clone());
            let hi = from_f64(star + delta)
                .unwrap_or_else(Rational::one)
                .min(&one - &eps);
            let x = simplest_in(&lo, &hi);
            if x.denom() > &BigInt::from(options.max_denominator) {
                return Err(budget_exhausted(n, p, options));
            }
            candidate.push(x);
        }
        if passes(n, p, &candidate)? {
            return Ok(candidate);
        }
        delta /= 2.0;
        if delta < 1e-300 {
            return Err(Error::resource("search interval collapsed"));
        }
    }
}

/// `2·lcm` of the denominators of `p` and every `p_j`: even, and makes every
/// `m·p`, `m·p_j` integral. Not necessarily minimal.
pub fn choose_m(p: &Rational, aux: &[Rational]) -> BigInt {
    let lcm = aux
        .iter()
        .fold(p.denom().clone(), |acc, x| acc.lcm(x.denom()));
    lcm * 2
}

fn minimal_even_m(p: &Rational, aux: &[Rational]) -> BigInt {
    let lcm = aux
        .iter()
        .fold(p.denom().clone(), |acc, x| acc.lcm(x.denom()));
    if lcm.is_even() {
        lcm
    } else {
        lcm * 2
    }
}

fn integral_times(x: &Rational, m: u64) -> Result<u64> {
    let v = x * Rational::from_integer(BigInt::from(m));
    if !v.is_integer() {
        return Err(Error::consistency(format!(
            "{}·{m} is not an integer",
            format_rational(x)
        )));
    }
    v.to_integer()
        .to_u64()
        .ok_or_else(|| Error::consistency("type entry out of range"))
}

/// Assembles `(m, a, s, aux)` for `n` dice with winning probability `p`.
///
/// With `P_1 = p` and `P_j = p_j`:
/// `a_ℓ = (1 - P_ℓ)m` for `ℓ ≤ k`, `a_{k+1} = P_k·m` (odd `n`) or `m/2`
/// (even `n`), `a_ℓ = P_{n-ℓ}·m` for `k+2 ≤ ℓ ≤ n-1`, and `s_j = p·m²`.
pub fn build_plan(
    n: usize,
    p: &Rational,
    options: &ConstructionOptions,
) -> Result<ConstructionPlan> {
    let cmp = check_target(n, p)?;
    let ctx = BoundContext::new(n)?;
    let aux = if cmp == BoundComparison::Equal {
        Vec::new()
    } else {
        find_rationals(n, p, options)?
    };
    let m = if options.shrink_m {
        minimal_even_m(p, &aux)
    } else {
        choose_m(p, &aux)
    };
    let m = m
        .to_u64()
        .filter(|m| {
            m.checked_mul(n as u64)
                .is_some_and(|f| f <= options.max_faces)
        })
        .ok_or_else(|| {
            Error::resource(format!(
                "side count m = {m} for {n} dice exceeds the face budget {}",
                options.max_faces
            ))
        })?;

    // chain[j] = P_j, 1-based with chain[1] = p
    let mut chain = vec![Rational::zero(), p.clone()];
    chain.extend(aux.iter().cloned());
    let one = Rational::one();
    let k = ctx.k;
    let mut a = Vec::with_capacity(n - 1);
    for l in 1..n {
        let fraction = if l <= k {
            &one - &chain[l]
        } else if l == k + 1 {
            if n % 2 == 1 {
                chain[k].clone()
            } else {
                half()
            }
        } else {
            chain[n - l].clone()
        };
        a.push(integral_times(&fraction, m)?);
    }
    let pm = integral_times(p, m)? as u128;
    let s = vec![pm * m as u128; n - 2];

    let plan = ConstructionPlan {
        n,
        p: p.clone(),
        m,
        a,
        s,
        aux,
    };
    check_plan(&plan)?;
    Ok(plan)
}

/// Re-checks the pair-count intervals of a plan in exact integers.
pub fn check_plan(plan: &ConstructionPlan) -> Result<()> {
    let sides = plan.side_counts();
    if plan.a.len() != plan.n - 1 || plan.s.len() != plan.n - 2 {
        return Err(Error::consistency("plan vectors have the wrong length"));
    }
    if plan.a[0] + plan.a[plan.n - 2] != plan.m {
        return Err(Error::consistency("a_1 + a_{n-1} must equal m"));
    }
    for (i, ((lo, hi), s)) in pair_count_bounds(&sides, &plan.a)?
        .into_iter()
        .zip(&plan.s)
        .enumerate()
    {
        if s < &lo || s > &hi {
            return Err(Error::consistency(format!(
                "s_{} = {s} outside [{lo}, {hi}] for p = {}",
                i + 1,
                format_rational(&plan.p)
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rational;

    fn opts() -> ConstructionOptions {
        ConstructionOptions::default()
    }

    #[test]
    fn simplest_rational_examples() {
        assert_eq!(
            simplest_in(&rational(1, 3), &rational(1, 2)),
            rational(1, 2)
        );
        assert_eq!(
            simplest_in(&rational(3, 10), &rational(2, 5)),
            rational(1, 3)
        );
        assert_eq!(
            simplest_in(&rational(5, 9), &rational(5, 9)),
            rational(5, 9)
        );
    }

    #[test]
    fn simplest_rational_matches_brute_force() {
        for (lo, hi) in [(3141, 3142), (1, 7), (523, 530), (617, 618), (999, 1000)] {
            let (lo, hi) = (rational(lo, 1000), rational(hi, 1000));
            let expected = (1..=1000i64)
                .find_map(|d| {
                    let num = (&lo * rational(d, 1)).ceil();
                    let x = num / rational(d, 1);
                    (x <= hi).then_some(x)
                })
                .unwrap();
            assert_eq!(simplest_in(&lo, &hi), expected);
        }
    }

    #[test]
    fn choose_m_examples() {
        assert_eq!(choose_m(&rational(2, 3), &[]), BigInt::from(6));
        assert_eq!(choose_m(&rational(3, 5), &[]), BigInt::from(10));
        assert_eq!(choose_m(&rational(501, 1000), &[]), BigInt::from(2000));
        assert_eq!(
            choose_m(&rational(3, 5), &[rational(1, 4), rational(5, 6)]),
            BigInt::from(120)
        );
    }

    #[test]
    fn small_n_has_no_chain() {
        assert!(find_rationals(3, &rational(3, 5), &opts())
            .unwrap()
            .is_empty());
        assert!(find_rationals(4, &rational(3, 5), &opts())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn chain_for_five_dice() {
        let p = rational(51, 100);
        let aux = find_rationals(5, &p, &opts()).unwrap();
        assert_eq!(aux.len(), 1);
        let x = &aux[0];
        let one = Rational::one();
        assert!(x / (&one + x) <= p && p <= (&one) / (rational(2, 1) - x));
        assert!((&one - x) * (&one - x) <= p && p <= &one - x * x);
    }

    #[test]
    fn chain_for_seven_dice() {
        let p = rational(3, 5);
        let aux = find_rationals(7, &p, &opts()).unwrap();
        assert_eq!(aux.len(), 2);
        let (l, u) = envelopes(7, &aux).unwrap().unwrap();
        assert!(l <= p && p <= u);
    }

    #[test]
    fn both_strategies_satisfy_the_chain() {
        for strategy in [
            SearchStrategy::SharedDenominator,
            SearchStrategy::BoxHalving,
        ] {
            let o = ConstructionOptions { strategy, ..opts() };
            for n in 5..=14 {
                for (num, den) in [(51, 100), (3, 5), (2, 3), (17, 25)] {
                    let p = rational(num, den);
                    if to_f64(&p) >= pi_n_f64(n) {
                        continue;
                    }
                    let aux = find_rationals(n, &p, &o).unwrap();
                    assert_eq!(aux.len(), BoundContext::new(n).unwrap().k - 1);
                    let (l, u) = envelopes(n, &aux).unwrap().unwrap();
                    assert!(l <= p && p <= u, "{strategy:?} n = {n}");
                }
            }
        }
    }

    #[test]
    fn shared_denominator_keeps_m_small_for_many_dice() {
        let plan = build_plan(40, &rational(73, 100), &opts()).unwrap();
        let m = BigInt::from(plan.m);
        assert!(plan.aux.iter().all(|x| (&m % x.denom()).is_zero()));
        assert!(plan.m <= 200_000, "m = {}", plan.m);
    }

    #[test]
    fn out_of_range_targets() {
        assert!(matches!(
            find_rationals(5, &rational(1, 2), &opts()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            find_rationals(5, &rational(7, 10), &opts()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn tiny_budget_is_a_resource_error() {
        let tight = ConstructionOptions {
            max_denominator: 3,
            ..opts()
        };
        // 69/100 sits just under π_5 ≈ 0.6920
        for strategy in [
            SearchStrategy::SharedDenominator,
            SearchStrategy::BoxHalving,
        ] {
            let tight = ConstructionOptions { strategy, ..tight };
            assert!(matches!(
                find_rationals(5, &rational(69, 100), &tight),
                Err(Error::Resource(_))
            ));
        }
    }

    #[test]
    fn plan_for_four_at_the_bound() {
        let plan = build_plan(4, &rational(2, 3), &opts()).unwrap();
        assert_eq!(plan.m, 6);
        assert_eq!(plan.a, vec![2, 3, 4]);
        assert_eq!(plan.s, vec![24, 24]);
    }

    #[test]
    fn plan_for_three() {
        let plan = build_plan(3, &rational(3, 5), &opts()).unwrap();
        assert_eq!(plan.m, 10);
        assert_eq!(plan.a, vec![4, 6]);
        assert_eq!(plan.s, vec![60]);
    }

    #[test]
    fn plan_rejects_above_bound() {
        let err = build_plan(3, &rational(2, 3), &opts()).unwrap_err();
        match err {
            Error::Domain(msg) => assert!(msg.contains("0.618033988")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn shrink_m_halves_even_lcm() {
        let shrunk = ConstructionOptions {
            shrink_m: true,
            ..opts()
        };
        let plan = build_plan(4, &rational(5, 8), &shrunk).unwrap();
        assert_eq!(plan.m, 8);
        let plan = build_plan(4, &rational(5, 8), &opts()).unwrap();
        assert_eq!(plan.m, 16);
    }

    #[test]
    fn plans_hold_structural_identities() {
        for n in 3..=9 {
            for (num, den) in [(11, 20), (3, 5), (13, 25)] {
                let p = rational(num, den);
                let plan = build_plan(n, &p, &opts()).unwrap();
                assert_eq!(plan.a[0] + plan.a[n - 2], plan.m);
                if n == 4 {
                    assert_eq!(plan.a[1] * 2, plan.m);
                }
                assert!(plan.m.is_multiple_of(2));
            }
        }
    }
}
