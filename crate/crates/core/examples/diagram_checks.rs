//! Special selection and the selection inequalities on diagrams over the
//! theorem-scale relators.

use filebasis::construction::{build_relator, ConstructionParams};
use filebasis::diagram::{
    check_condition_b, check_letter_budget, check_main_lemma, find_immediately_cancellable, random_disc_diagram,
    special_selection, validate_diagram, CorpusConfig, DiagramBuilder,
};
use filebasis::words::PowerWord;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let params = ConstructionParams::parse(63, "1/315", 315).unwrap();
    let words = [[2, 1], [2, -1]];
    let rels: Vec<PowerWord> = words
        .iter()
        .enumerate()
        .map(|(i, w)| build_relator(&params, i as u64 + 1, &PowerWord::from_codes(w)).unwrap().r)
        .collect();
    let (l1, l2) = (params.lambda1().clone(), params.lambda2());

    let mut b = DiagramBuilder::point();
    b.attach_face(0, 0, &rels[0].to_codes());
    let face = b.finish();
    let sel = special_selection(&face, 63).unwrap();
    println!("one face: selection {:?}", sel.paths);
    println!("  condition B holds: {}", check_condition_b(&face, &sel, &l1, &l2).holds);
    let ml = check_main_lemma(&face, &sel, &l1, &l2).unwrap();
    println!("  S = {}, Sigma = {}, bound {} -> {}", ml.metrics.s, ml.metrics.sigma, ml.bound, ml.holds);
    let lb = check_letter_budget(&face, &sel, &[1], 63).unwrap();
    println!("  letter x1: {} < {} -> {}", lb.count, lb.bound, lb.holds);

    let codes: Vec<Vec<i32>> = rels.iter().map(|r| r.to_codes()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let d = random_disc_diagram(&codes, &CorpusConfig::default(), &mut rng);
        let valid = validate_diagram(&d, &rels).valid;
        let weakly_reduced = find_immediately_cancellable(&d).is_empty();
        let lemma = special_selection(&d, 63)
            .ok()
            .and_then(|sel| check_main_lemma(&d, &sel, &l1, &l2).ok())
            .map(|r| (r.metrics.s, r.metrics.sigma, r.holds));
        println!("{} faces, valid {valid}, weakly reduced {weakly_reduced}, (S, Sigma, holds) = {lemma:?}", d.faces.len());
    }
}
