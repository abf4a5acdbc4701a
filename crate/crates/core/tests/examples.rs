//! Runs every example so they stay in sync with the library.

macro_rules! example {
    ($name:ident, $file:literal) => {
        #[path = $file]
        mod $name;
    };
}

example!(construct, "../examples/construct.rs");
example!(known_dice, "../examples/known_dice.rs");
example!(bounds_table, "../examples/bounds_table.rs");
example!(central_words, "../examples/central_words.rs");
example!(chain_search, "../examples/chain_search.rs");
example!(spectrum, "../examples/spectrum.rs");

#[test]
fn examples_run() {
    construct::run_example().unwrap();
    known_dice::run_example().unwrap();
    bounds_table::run_example().unwrap();
    central_words::run_example().unwrap();
    chain_search::run_example().unwrap();
    spectrum::run_example().unwrap();
}
