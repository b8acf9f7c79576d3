//! Regular normal forms in the toy group.

use filebasis::construction::{generate, ConstructionParams};
use filebasis::decision::{regular_normal_form, regular_normal_form_report, Budget, Engine, Outcome, Witness};
use filebasis::words::parse_word;

fn main() {
    let params = ConstructionParams::parse(3, "1/15", 2).unwrap();
    let p = generate(&params, 1, &Budget::default()).unwrap().presentation;
    for g in ["x2 x1", "x1^2 x2 x1", "x1 x3 x1^-1", "x1^3 x2^-1"] {
        let g = parse_word(p.alphabet(), g).unwrap();
        match regular_normal_form(&p, &g, &Budget::default(), Engine::Diagram) {
            Outcome::Yes(Witness::NormalForm { normal_form, .. }) => println!("{g} -> {normal_form}"),
            o => println!("{g}: {}", o.to_json(false)),
        }
        let report = regular_normal_form_report(&p, &g, &Budget::default(), Engine::Diagram);
        println!("  accepted {}, rejected {}, undecided {}", report.accepted.len(), report.rejected, report.undecided.len());
    }
}
