//! Equality in the toy group with both engines and witness replay.

use filebasis::construction::{generate, ConstructionParams};
use filebasis::decision::{equals_in_g, verify_diagram_witness, verify_trace, Budget, Engine, Outcome, Witness};
use filebasis::words::parse_word;

fn main() {
    let params = ConstructionParams::parse(3, "1/15", 2).unwrap();
    let p = generate(&params, 1, &Budget::default()).unwrap().presentation;
    let rels = p.relator_words();
    let a = p.alphabet();
    let pairs = [("x2 x1", "x1^5 x2^5 x3^5"), ("x3 x2 x1 x3^-1", "x3 x1^5 x2^5 x3^4"), ("x1 x2", "x2 x1"), ("x1", "x2")];
    for (u, v) in pairs {
        let (u, v) = (parse_word(a, u).unwrap(), parse_word(a, v).unwrap());
        for engine in [Engine::Diagram, Engine::Rewrite] {
            let o = equals_in_g(&p, &u, &v, &Budget::default(), engine);
            let replay = match &o {
                Outcome::Yes(Witness::Diagram { diagram }) => Some(verify_diagram_witness(&rels, &u, &v, diagram, None)),
                Outcome::Yes(Witness::Trace { trace }) => Some(verify_trace(&rels, &u, &v, trace)),
                _ => None,
            };
            println!("{u} = {v} [{engine:?}]: {:?}, replay {replay:?}", o.verdict());
        }
    }
}
