//! Verify classic dice sets: Efron's dice (relabelled to distinct faces) and
//! two balanced nontransitive triples.

use ntdice::rational::format_rational;
use ntdice::{verify_dice, word_from_dice, DiceSet, Result};

pub fn run_example() -> Result<()> {
    let sets = [
        (
            "Efron (distinct faces)",
            vec![
                vec![1, 2, 16, 17, 18, 19],
                vec![3, 4, 5, 20, 21, 22],
                vec![6, 7, 8, 9, 23, 24],
                vec![10, 11, 12, 13, 14, 15],
            ],
        ),
        (
            "6-sided triple",
            vec![
                vec![3, 4, 11, 12, 13, 14],
                vec![5, 6, 7, 8, 15, 16],
                vec![1, 2, 9, 10, 17, 18],
            ],
        ),
        (
            "5/5/4-sided triple",
            vec![
                vec![1, 3, 10, 11, 12],
                vec![2, 4, 5, 13, 14],
                vec![6, 7, 8, 9],
            ],
        ),
    ];
    for (name, faces) in sets {
        let dice = DiceSet::new(faces)?;
        let report = verify_dice(&dice)?;
        let w = report.w.as_ref().map(format_rational).unwrap_or_default();
        println!(
            "{name}: word {} | balanced {} | nontransitive {} | w = {w}",
            word_from_dice(&dice),
            report.balanced,
            report.nontransitive
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
