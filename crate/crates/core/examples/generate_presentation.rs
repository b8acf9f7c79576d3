//! First relators of the construction at toy and theorem scale.

use filebasis::construction::{generate, ConstructionParams};
use filebasis::decision::Budget;

fn main() {
    let toy = ConstructionParams::parse(3, "1/15", 2).unwrap();
    let g = generate(&toy, 1, &Budget::default()).unwrap();
    println!("{}", g.presentation.to_json());
    println!("violations: {:?}", g.presentation.violations());

    let big = ConstructionParams::parse(63, "1/315", 315).unwrap();
    let g = generate(&big, 1, &Budget::free_only()).unwrap();
    let r = &g.presentation.relators[0];
    println!("n = 63: w_1 = {}, m_1 = {}, |r_1| = {}, runs = {}", r.w, r.m, r.r.len(), r.r.run_count());
}
