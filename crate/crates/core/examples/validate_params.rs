//! Exact evaluation of the parameter inequalities.

use filebasis::construction::ConstructionParams;

fn main() {
    for (n, lambda1, big_n) in [(63, "1/315", 315), (63, "1/252", 315), (3, "1/15", 2)] {
        let p = ConstructionParams::parse(n, lambda1, big_n).unwrap();
        let rep = p.validate();
        println!("n = {n}, lambda1 = {lambda1}, N = {big_n}: passed = {}, theorem scale = {}", rep.passed(), rep.theorem_scale);
        for c in &rep.checks {
            println!("  {:<17} {} {} {} -> {}", c.name, c.lhs, c.relation, c.rhs, c.holds);
        }
        println!("  mu = {}, q = {}", rep.mu, rep.q);
    }
}
