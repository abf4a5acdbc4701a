//! Search for the rational chain parameters and compare the two strategies.

use ntdice::bounds::envelopes;
use ntdice::rational::{format_rational, rational};
use ntdice::{build_plan, ConstructionOptions, Result, SearchStrategy};

pub fn run_example() -> Result<()> {
    let p = rational(69, 100);
    for n in [5, 6, 9, 16] {
        for strategy in [
            SearchStrategy::SharedDenominator,
            SearchStrategy::BoxHalving,
        ] {
            let options = ConstructionOptions {
                strategy,
                ..Default::default()
            };
            match build_plan(n, &p, &options) {
                Ok(plan) => {
                    let aux: Vec<String> = plan.aux.iter().map(format_rational).collect();
                    let (l, u) = envelopes(n, &plan.aux)?.expect("n ≥ 5");
                    println!(
                        "n = {n:>2} {strategy:?}: m = {}, p_j = [{}], L = {} ≤ p ≤ U = {}",
                        plan.m,
                        aux.join(", "),
                        format_rational(&l),
                        format_rational(&u)
                    );
                }
                Err(e) => println!("n = {n:>2} {strategy:?}: {e}"),
            }
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
