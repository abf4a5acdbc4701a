//! Build balanced nontransitive dice for a given number of dice and target
//! winning probability.
//!
//!     cargo run --example construct -- 5 13/20

use ntdice::rational::{format_rational, parse_rational};
use ntdice::{construct_dice, Result};

pub fn run_example() -> Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (n, p) = match args.as_slice() {
        [n, p] => (n.parse().unwrap_or(5), parse_rational(p)?),
        _ => (5, parse_rational("13/20")?),
    };
    let built = construct_dice(n, &p)?;
    println!(
        "{n} dice with {} sides each, w = {}",
        built.plan.m,
        format_rational(&p)
    );
    println!("word: {}", built.word.to_word());
    if built.plan.m <= 20 {
        for (i, faces) in built.dice.dice().iter().enumerate() {
            println!("  A{}: {:?}", i + 1, faces);
        }
    }
    for (i, prob) in built.report.cyclic_probs.iter().enumerate() {
        let next = if i + 1 == n { 1 } else { i + 2 };
        println!("  P(A{} < A{}) = {}", i + 1, next, format_rational(prob));
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
