//! Balanced nontransitive dice: construction and exact verification.
//!
//! For `n ≥ 3` dice and a rational `p` in `(1/2, π_n]`, where
//! `π_n = 1 - 1/(4 cos²(π/(n+2)))`, [`construct_dice`] returns `n` dice with
//! `m` sides each such that
//! `P(A_1 < A_2) = P(A_2 < A_3) = … = P(A_n < A_1) = p` exactly.
//!
//! ```
//! use ntdice::{construct_dice, rational::parse_rational};
//!
//! let p = parse_rational("3/5").unwrap();
//! let built = construct_dice(5, &p).unwrap();
//! assert!(built.report.is_bn());
//! assert_eq!(built.report.w, Some(p));
//! ```
//!
//! Dice are handled through their *word*: the sequence of die indices read
//! off the faces in increasing order. See [`word`] for the text format.

pub mod bounds;
pub mod builder;
pub mod central;
pub mod certified;
pub mod cli;
pub mod dice;
pub mod error;
pub mod oracle;
pub mod rational;
pub mod search;
pub mod verify;
pub mod word;

pub use bounds::{gamma_n, p_star, pi_n, BoundContext, PiN};
pub use builder::{
    build_base_n3, build_central_word, construct_dice, construct_dice_with, transpose,
    Construction, SwapCase,
};
pub use central::{central_decompose, resize_block, CentralDecomposition};
pub use dice::{dice_from_word, word_from_dice, DiceSet};
pub use error::{Error, Result};
pub use rational::Rational;
pub use search::{
    build_plan, choose_m, find_rationals, ConstructionOptions, ConstructionPlan, SearchStrategy,
};
pub use verify::{check_claim, verify_dice, verify_word, VerificationReport};
pub use word::{parse_word, serialize_word, Run, Word};
