//! Conjugacy with extracted conjugators.

use filebasis::construction::{generate, ConstructionParams};
use filebasis::decision::{are_conjugate, verify_conjugator, Budget, Engine, Outcome, Witness};
use filebasis::words::parse_word;

fn main() {
    let params = ConstructionParams::parse(3, "1/15", 2).unwrap();
    let p = generate(&params, 1, &Budget::default()).unwrap().presentation;
    let rels = p.relator_words();
    let pairs = [("x1 x2 x3", "x3 x1 x2"), ("x2 x1", "x3 x1^5 x2^5 x3^4"), ("x1", "x2"), ("x1 x2", "x1 x3")];
    for (u, v) in pairs {
        let (u, v) = (parse_word(p.alphabet(), u).unwrap(), parse_word(p.alphabet(), v).unwrap());
        match are_conjugate(&p, &u, &v, &Budget::default(), Engine::Diagram) {
            Outcome::Yes(Witness::Conjugator { conjugator, proof }) => {
                let ok = verify_conjugator(&rels, &u, &v, &conjugator, proof.as_deref());
                println!("{u} ~ {v}: conjugator {conjugator}, verified {ok}");
            }
            o => println!("{u} ~ {v}: {}", o.to_json(false)),
        }
    }
}
