//! The upper bound `π_n` on the winning probability, the targets `p_j*`
//! and the envelopes `L`, `U` of the rational parameter chain.
//!
//! For `n` dice the chain has `k = ⌊(n-1)/2⌋` links and `k-1` free
//! parameters `p_2..p_k`. Its links are
//!
//! ```text
//! p_2/(1+p_2)          ≤ p ≤ 1/(2-p_2)
//! (1-p_j) p_{j+1}      ≤ p ≤ 1 - p_j + p_j p_{j+1}     (2 ≤ j < k)
//! (β/2)(1-p_k)^β       ≤ p ≤ 1 - (β/2) p_k^β
//! ```
//!
//! with `β = 1` for even `n` and `β = 2` for odd `n`. `L` is the max of the
//! left sides and `U` the min of the right sides. When `k = 1` there are no
//! free parameters and the chain is empty; callers get `None`.

use std::f64::consts::PI;

use num_traits::Num;

use crate::error::{Error, Result};
use crate::rational::{is_strict_probability, rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundContext {
    pub n: usize,
    /// `π/(n+2)` in radians.
    pub alpha: f64,
    pub k: usize,
    pub beta: u32,
}

impl BoundContext {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(BoundContext {
            n,
            alpha: PI / (n + 2) as f64,
            k: (n - 1) / 2,
            beta: if n.is_multiple_of(2) { 1 } else { 2 },
        })
    }

    /// Number of free parameters `p_2..p_k`.
    pub fn free_parameters(&self) -> usize {
        self.k - 1
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::domain(format!("need at least 3 dice, got {n}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiN {
    pub n: usize,
    pub value: f64,
    /// Present only for `n = 4`, the single rational case.
    pub exact: Option<Rational>,
}

impl PiN {
    pub fn is_rational(&self) -> bool {
        self.exact.is_some()
    }
}

pub fn pi_n_f64(n: usize) -> f64 {
    let c = (PI / (n + 2) as f64).cos();
    1.0 - 1.0 / (4.0 * c * c)
}

/// `π_n = 1 - 1/(4 cos²(π/(n+2)))`.
///
/// `cos(2π/(n+2))` is rational only for the 4th and 6th roots of unity, so
/// among `n ≥ 3` only `π_4 = 2/3` is rational.
pub fn pi_n(n: usize) -> Result<PiN> {
    check_n(n)?;
    Ok(PiN {
        n,
        value: pi_n_f64(n),
        exact: (n == 4).then(|| rational(2, 3)),
    })
}

/// `p_j* = sin((j+2)α) / (2 sin((j+1)α) cos α)` for `2 ≤ j ≤ k`.
pub fn p_star(n: usize, j: usize) -> Result<f64> {
    let ctx = BoundContext::new(n)?;
    if ctx.k < 2 {
        return Err(Error::domain(format!(
            "n = {n} has no free chain parameters (k = {})",
            ctx.k
        )));
    }
    if !(2..=ctx.k).contains(&j) {
        return Err(Error::domain(format!("j = {j} outside 2..={}", ctx.k)));
    }
    Ok(p_star_unchecked(&ctx, j))
}

fn p_star_unchecked(ctx: &BoundContext, j: usize) -> f64 {
    let a = ctx.alpha;
    ((j + 2) as f64 * a).sin() / (((j + 1) as f64 * a).sin() * 2.0 * a.cos())
}

/// `(p_2*, …, p_k*)`; empty when `k = 1`.
pub fn p_star_vector(n: usize) -> Result<Vec<f64>> {
    let ctx = BoundContext::new(n)?;
    Ok((2..=ctx.k).map(|j| p_star_unchecked(&ctx, j)).collect())
}

fn chain_terms<T>(beta: u32, xs: &[T]) -> (Vec<T>, Vec<T>)
where
    T: Num + Clone,
{
    let one = T::one();
    let two = T::one() + T::one();
    let first = &xs[0];
    let last = &xs[xs.len() - 1];

    let mut lower = vec![first.clone() / (one.clone() + first.clone())];
    let mut upper = vec![one.clone() / (two.clone() - first.clone())];
    for pair in xs.windows(2) {
        let (x, y) = (&pair[0], &pair[1]);
        lower.push((one.clone() - x.clone()) * y.clone());
        upper.push(one.clone() - x.clone() + x.clone() * y.clone());
    }
    let co = one.clone() - last.clone();
    if beta == 1 {
        lower.push(co / two.clone());
        upper.push(one - last.clone() / two);
    } else {
        lower.push(co.clone() * co);
        upper.push(one - last.clone() * last.clone());
    }
    (lower, upper)
}

fn check_chain_len(ctx: &BoundContext, len: usize) -> Result<()> {
    if len != ctx.free_parameters() {
        return Err(Error::domain(format!(
            "n = {} takes {} chain parameters, got {len}",
            ctx.n,
            ctx.free_parameters()
        )));
    }
    Ok(())
}

fn max_of<T: PartialOrd>(values: Vec<T>) -> T {
    values
        .into_iter()
        .reduce(|a, b| if b > a { b } else { a })
        .expect("chain has at least two links")
}

fn min_of<T: PartialOrd>(values: Vec<T>) -> T {
    values
        .into_iter()
        .reduce(|a, b| if b < a { b } else { a })
        .expect("chain has at least two links")
}

/// Exact `(L, U)` at the given parameters, or `None` for an empty chain.
pub fn envelopes(n: usize, values: &[Rational]) -> Result<Option<(Rational, Rational)>> {
    let ctx = BoundContext::new(n)?;
    check_chain_len(&ctx, values.len())?;
    if let Some(bad) = values.iter().find(|v| !is_strict_probability(v)) {
        return Err(Error::domain(format!(
            "chain parameter {bad} outside (0, 1)"
        )));
    }
    if values.is_empty() {
        return Ok(None);
    }
    let (lower, upper) = chain_terms(ctx.beta, values);
    Ok(Some((max_of(lower), min_of(upper))))
}

pub fn envelope_lower(n: usize, values: &[Rational]) -> Result<Option<Rational>> {
    Ok(envelopes(n, values)?.map(|(l, _)| l))
}

pub fn envelope_upper(n: usize, values: &[Rational]) -> Result<Option<Rational>> {
    Ok(envelopes(n, values)?.map(|(_, u)| u))
}

/// Floating point `(L, U)`.
pub fn envelopes_f64(n: usize, values: &[f64]) -> Result<Option<(f64, f64)>> {
    let ctx = BoundContext::new(n)?;
    check_chain_len(&ctx, values.len())?;
    if let Some(bad) = values.iter().find(|v| !(**v > 0.0 && **v < 1.0)) {
        return Err(Error::domain(format!(
            "chain parameter {bad} outside (0, 1)"
        )));
    }
    if values.is_empty() {
        return Ok(None);
    }
    let (lower, upper) = chain_terms(ctx.beta, values);
    Ok(Some((max_of(lower), min_of(upper))))
}

/// `Γ_n = L(p_2*, …, p_k*)`, which stays below 1/2.
pub fn gamma_n(n: usize) -> Result<f64> {
    let ctx = BoundContext::new(n)?;
    if ctx.k < 2 {
        return Err(Error::domain(format!("Γ_n needs n ≥ 5, got {n}")));
    }
    let stars = p_star_vector(n)?;
    Ok(envelopes_f64(n, &stars)?.expect("k ≥ 2").0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_fields() {
        let c = BoundContext::new(7).unwrap();
        assert_eq!((c.k, c.beta), (3, 2));
        let c = BoundContext::new(6).unwrap();
        assert_eq!((c.k, c.beta), (2, 1));
        assert!(BoundContext::new(2).is_err());
    }

    #[test]
    fn pi_three_is_golden() {
        let p = pi_n(3).unwrap();
        assert!((p.value - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-15);
        assert!(!p.is_rational());
    }

    #[test]
    fn pi_four_is_two_thirds() {
        let p = pi_n(4).unwrap();
        assert_eq!(p.exact, Some(rational(2, 3)));
        assert!((p.value - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn pi_increasing_below_three_quarters() {
        let mut prev = 0.0;
        for n in 3..500 {
            let v = pi_n(n).unwrap().value;
            assert!(v > prev && v < 0.75);
            assert_eq!(pi_n(n).unwrap().is_rational(), n == 4);
            prev = v;
        }
    }

    #[test]
    fn p_star_closed_forms_at_j_equal_k() {
        // odd n: 1/(2 cos α)
        let v = p_star(5, 2).unwrap();
        assert!((v - 1.0 / (2.0 * (PI / 7.0).cos())).abs() < 1e-15);
        assert!((v - 0.554958).abs() < 1e-6);
        // even n: 1/(2 cos² α)
        let v = p_star(6, 2).unwrap();
        let c = (PI / 8.0).cos();
        assert!((v - 1.0 / (2.0 * c * c)).abs() < 1e-15);
        assert!((v - 0.585786).abs() < 1e-6);
    }

    #[test]
    fn p_star_range_errors() {
        assert!(p_star(4, 2).is_err());
        assert!(p_star(7, 1).is_err());
        assert!(p_star(7, 4).is_err());
        for n in 5..80 {
            for v in p_star_vector(n).unwrap() {
                assert!(v > 0.0 && v < 1.0);
            }
        }
    }

    #[test]
    fn exact_envelopes_for_five_ninths() {
        let (l, u) = envelopes(5, &[rational(5, 9)]).unwrap().unwrap();
        assert_eq!(l, rational(5, 14));
        assert_eq!(u, rational(56, 81));
    }

    #[test]
    fn empty_chain_for_small_n() {
        assert_eq!(envelope_lower(3, &[]).unwrap(), None);
        assert_eq!(envelope_upper(4, &[]).unwrap(), None);
        assert!(envelope_lower(5, &[]).is_err());
        assert!(envelope_lower(5, &[rational(1, 1)]).is_err());
    }

    #[test]
    fn gamma_values() {
        let g = gamma_n(5).unwrap();
        let p = 1.0 / (2.0 * (PI / 7.0).cos());
        assert!((g - (p / (1.0 + p)).max((1.0 - p) * (1.0 - p))).abs() < 1e-15);
        assert!((g - 0.35690).abs() < 1e-5);
        for n in 5..=60 {
            assert!(gamma_n(n).unwrap() < 0.5);
        }
        assert!(gamma_n(4).is_err());
    }

    #[test]
    fn envelope_at_stars_hits_pi_n() {
        for n in 5..=60 {
            let stars = p_star_vector(n).unwrap();
            let (l, u) = envelopes_f64(n, &stars).unwrap().unwrap();
            assert!(l < 0.5 - 1e-9);
            assert!((u - pi_n_f64(n)).abs() < 1e-9, "n = {n}");
        }
    }
}
