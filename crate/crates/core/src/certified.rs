//! Rigorous rational enclosures of `π_n`, so that `w ≤ π_n` is decided
//! soundly for rational `w` even though `π_n` is irrational for `n ≠ 4`.
//!
//! Every quantity is an interval with dyadic endpoints on a `2^-131` grid,
//! rounded outward after each step.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bounds::pi_n;
use crate::error::Result;
use crate::rational::{rational, Rational};

const PRECISION_BITS: u32 = 131;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Rational,
    pub hi: Rational,
}

impl Enclosure {
    fn exact(value: Rational) -> Self {
        Enclosure {
            lo: value.clone(),
            hi: value,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, value: &Rational) -> bool {
        &self.lo <= value && value <= &self.hi
    }
}

fn scale() -> BigInt {
    BigInt::one() << PRECISION_BITS
}

fn round_down(value: &Rational) -> Rational {
    let scaled = value * Rational::from_integer(scale());
    Rational::new(scaled.floor().to_integer(), scale())
}

fn round_up(value: &Rational) -> Rational {
    let scaled = value * Rational::from_integer(scale());
    Rational::new(scaled.ceil().to_integer(), scale())
}

fn outward(lo: Rational, hi: Rational) -> Enclosure {
    Enclosure {
        lo: round_down(&lo),
        hi: round_up(&hi),
    }
}

/// Alternating series with terms of decreasing magnitude: the truncation
/// error is bounded by the first omitted term.
fn alternating_sum(mut term: impl FnMut(u32) -> Rational) -> Enclosure {
    let tolerance = Rational::new(BigInt::one(), scale() << 8);
    let mut sum = Rational::zero();
    let mut k = 0;
    loop {
        let t = term(k);
        if t.abs() < tolerance {
            let bound = t.abs();
            return outward(&sum - &bound, &sum + &bound);
        }
        sum += t;
        k += 1;
    }
}

fn atan_inverse(q: i64) -> Enclosure {
    let q = BigInt::from(q);
    alternating_sum(|k| {
        let power = 2 * k + 1;
        let den = num_traits::pow(q.clone(), power as usize) * BigInt::from(power);
        let sign = if k.is_even() { 1 } else { -1 };
        Rational::new(BigInt::from(sign), den)
    })
}

/// Machin: `π = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi_enclosure() -> Enclosure {
    let a = atan_inverse(5);
    let b = atan_inverse(239);
    let sixteen = rational(16, 1);
    let four = rational(4, 1);
    outward(
        &sixteen * &a.lo - &four * &b.hi,
        &sixteen * &a.hi - &four * &b.lo,
    )
}

/// Enclosure of `cos x` for a single rational `0 ≤ x ≤ 1`.
fn cos_point(x: &Rational) -> Enclosure {
    let x2 = x * x;
    let mut term = Rational::one();
    alternating_sum(|k| {
        if k > 0 {
            let k = k as i64;
            term = -(&term * &x2) / rational((2 * k - 1) * (2 * k), 1);
        }
        term.clone()
    })
}

/// Rigorous enclosure of `π_n = 1 - 1/(4 cos²(π/(n+2)))`. Exact for `n = 4`.
pub fn pi_n_enclosure(n: usize) -> Result<Enclosure> {
    if let Some(exact) = pi_n(n)?.exact {
        return Ok(Enclosure::exact(exact));
    }
    let pi = pi_enclosure();
    let d = rational((n + 2) as i64, 1);
    let x = outward(&pi.lo / &d, &pi.hi / &d);
    // cos is decreasing on [0, 1]
    let c_lo = cos_point(&x.hi).lo;
    let c_hi = cos_point(&x.lo).hi;
    let four = rational(4, 1);
    let one = Rational::one();
    // 1 - 1/(4c²) is increasing in c > 0
    let lo = &one - (&one / (&four * &c_lo * &c_lo));
    let hi = &one - (&one / (&four * &c_hi * &c_hi));
    Ok(outward(lo, hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundComparison {
    Below,
    Equal,
    Above,
    /// The value lies inside the enclosure of an irrational bound.
    Undecided,
}

impl BoundComparison {
    /// `Some(true)` when `value ≤ π_n` is certified, `Some(false)` when
    /// `value > π_n` is certified.
    pub fn at_most(self) -> Option<bool> {
        match self {
            BoundComparison::Below | BoundComparison::Equal => Some(true),
            BoundComparison::Above => Some(false),
            BoundComparison::Undecided => None,
        }
    }
}

/// Certified comparison of a rational against `π_n`.
pub fn compare_to_pi_n(value: &Rational, n: usize) -> Result<BoundComparison> {
    let enclosure = pi_n_enclosure(n)?;
    Ok(if value < &enclosure.lo {
        BoundComparison::Below
    } else if value > &enclosure.hi {
        BoundComparison::Above
    } else if enclosure.lo == enclosure.hi {
        match value.cmp(&enclosure.lo) {
            Ordering::Equal => BoundComparison::Equal,
            Ordering::Less => BoundComparison::Below,
            Ordering::Greater => BoundComparison::Above,
        }
    } else {
        BoundComparison::Undecided
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::pi_n_f64;
    use crate::rational::to_f64;

    #[test]
    fn pi_digits() {
        let e = pi_enclosure();
        // 3.14159265358979323846264338327950288
        let lo = Rational::new(
            BigInt::parse_bytes(b"314159265358979323846264338327950288", 10).unwrap(),
            num_traits::pow(BigInt::from(10), 35),
        );
        let hi = &lo + Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 35));
        assert!(e.lo > lo && e.hi < hi);
        assert!(e.width() < Rational::new(BigInt::one(), BigInt::one() << 125));
    }

    #[test]
    fn enclosures_match_float_and_are_tight() {
        let tight = Rational::new(BigInt::one(), BigInt::one() << 120);
        for n in 3..60 {
            let e = pi_n_enclosure(n).unwrap();
            assert!(e.width() < tight, "n = {n}");
            assert!((to_f64(&e.lo) - pi_n_f64(n)).abs() < 1e-15);
        }
    }

    #[test]
    fn golden_ratio_bound() {
        // (√5 - 1)/2 lies between these convergents of the golden ratio
        assert_eq!(
            compare_to_pi_n(&rational(987, 1597), 3).unwrap(),
            BoundComparison::Below
        );
        assert_eq!(
            compare_to_pi_n(&rational(610, 987), 3).unwrap(),
            BoundComparison::Above
        );
        assert_eq!(
            compare_to_pi_n(&rational(2, 3), 3).unwrap(),
            BoundComparison::Above
        );
    }

    #[test]
    fn exact_for_four() {
        assert_eq!(
            compare_to_pi_n(&rational(2, 3), 4).unwrap(),
            BoundComparison::Equal
        );
        assert_eq!(
            compare_to_pi_n(&rational(7, 10), 5).unwrap(),
            BoundComparison::Above
        );
    }
}
