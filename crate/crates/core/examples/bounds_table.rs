//! Tabulate π_n, the chain targets p_j* and the envelopes at those targets.

use ntdice::bounds::{envelopes_f64, p_star_vector, pi_n};
use ntdice::certified::pi_n_enclosure;
use ntdice::rational::to_f64;
use ntdice::{gamma_n, Result};

pub fn run_example() -> Result<()> {
    println!(
        "{:>3}  {:>18}  {:>10}  {:>10}  p*",
        "n", "π_n", "Γ_n", "U(p*)"
    );
    for n in 3..=12 {
        let bound = pi_n(n)?;
        let shown = match &bound.exact {
            Some(r) => format!("{r} (exact)"),
            None => format!("{:.15}", bound.value),
        };
        let stars = p_star_vector(n)?;
        let (gamma, upper) = match envelopes_f64(n, &stars)? {
            Some((_, u)) => (format!("{:.8}", gamma_n(n)?), format!("{u:.8}")),
            None => ("-".into(), "-".into()),
        };
        let stars: Vec<String> = stars.iter().map(|v| format!("{v:.6}")).collect();
        println!(
            "{n:>3}  {shown:>18}  {gamma:>10}  {upper:>10}  [{}]",
            stars.join(", ")
        );
    }
    let e = pi_n_enclosure(3)?;
    println!(
        "certified enclosure of π_3 has width {:.3e}",
        to_f64(&e.width())
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
