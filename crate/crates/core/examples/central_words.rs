//! Central words: decomposition, block resizing, transpositions and the
//! inductive builder.

use ntdice::builder::{build_central_word_traced, pair_count_bounds};
use ntdice::{central_decompose, parse_word, transpose, Result};

pub fn run_example() -> Result<()> {
    let word = parse_word("1 2 1 2^2 3^4 1^3 2^2")?;
    let dec = central_decompose(&word).expect("central");
    println!("{word} is central of type {:?}", dec.word_type());
    let shorter = dec.resize_block(1)?.to_word();
    println!(
        "block 3^4 -> 3^1: {shorter}, P(A2<A3) {} -> {}, P(A3<A1) {} -> {}",
        word.probability(2, 3)?,
        shorter.probability(2, 3)?,
        word.probability(3, 1)?,
        shorter.probability(3, 1)?
    );

    let sample = parse_word("3 1 3 4 3 2 3")?;
    for pos in [0, 4, 5] {
        let t = transpose(&sample, pos)?;
        println!(
            "swap at {pos}: {} ({:?}, Δq = {:?})",
            t.word, t.case, t.delta
        );
    }

    let m = [6, 6, 6, 6];
    let a = [2, 3, 4];
    println!(
        "pair count intervals for m = {m:?}, a = {a:?}: {:?}",
        pair_count_bounds(&m, &a)?
    );
    let (built, traces) = build_central_word_traced(&m, &a, &[24, 24])?;
    println!("built {}", built.to_word());
    for t in &traces {
        println!(
            "  inserting die {}: {} run moves, q {:?} -> {:?}",
            t.dice,
            t.steps.len(),
            t.counts_before,
            t.counts_after
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
