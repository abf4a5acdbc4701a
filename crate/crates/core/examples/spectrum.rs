//! Exhaustive winning-probability spectra of small dice, checked against π_n.

use ntdice::certified::compare_to_pi_n;
use ntdice::oracle::{bn_spectrum, EnumerationCap};
use ntdice::Result;

pub fn run_example() -> Result<()> {
    let cap = EnumerationCap::default();
    for (n, sides) in [
        (3, vec![3, 3, 3]),
        (3, vec![4, 4, 4]),
        (4, vec![2, 2, 2, 2]),
        (3, vec![3, 4, 5]),
    ] {
        let result = bn_spectrum(n, &sides, &cap)?;
        print!("{}", result.to_table());
        if let Some(w) = &result.max_w {
            println!("max w vs π_{n}: {:?}\n", compare_to_pi_n(w, n)?);
        }
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
