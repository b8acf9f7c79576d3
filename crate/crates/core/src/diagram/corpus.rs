use rand::Rng;

use super::{Diagram, DiagramBuilder};
use crate::decision::cyclic::{find_all, inverse};

/// Shape of randomly glued disc diagrams.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorpusConfig {
    pub max_faces: usize,
    /// Longest contour segment a new face is glued along.
    pub max_glue: usize,
    /// Chance of inserting a spur after each face.
    pub spur_probability: f64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        Self { max_faces: 6, max_glue: 8, spur_probability: 0.2 }
    }
}

/// A random disc diagram over `relators` (letter codes): faces are glued one
/// at a time along a contour segment that matches a rotation of `r^{±1}`,
/// or at a single vertex when no segment matches.
pub fn random_disc_diagram<R: Rng>(relators: &[Vec<i32>], cfg: &CorpusConfig, rng: &mut R) -> Diagram {
    let mut b = DiagramBuilder::point();
    let faces = if relators.is_empty() { 0 } else { rng.gen_range(0..=cfg.max_faces) };
    for _ in 0..faces {
        let j = rng.gen_range(0..relators.len());
        let base = if rng.gen_bool(0.5) { relators[j].clone() } else { inverse(&relators[j]) };
        glue(&mut b, &base, cfg, rng);
        if rng.gen_bool(cfg.spur_probability) {
            spur(&mut b, relators, rng);
        }
    }
    if faces == 0 && !relators.is_empty() && rng.gen_bool(0.5) {
        spur(&mut b, relators, rng);
    }
    let shift = rng.gen_range(0..=b.contour().len());
    b.rotate_left(shift);
    b.finish()
}

fn spur<R: Rng>(b: &mut DiagramBuilder, relators: &[Vec<i32>], rng: &mut R) {
    let n = relators.iter().flatten().map(|c| c.unsigned_abs()).max().unwrap_or(1) as i32;
    let code = rng.gen_range(1..=n) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let at = rng.gen_range(0..=b.contour().len());
    b.insert_spur(at, code);
}

fn glue<R: Rng>(b: &mut DiagramBuilder, base: &[i32], cfg: &CorpusConfig, rng: &mut R) {
    let l = base.len();
    let contour = b.contour_codes();
    if contour.is_empty() {
        let off = rng.gen_range(0..l);
        b.attach_face(0, 0, &rotation(base, off));
        return;
    }
    let p = rng.gen_range(0..contour.len());
    b.rotate_left(p);
    let contour = b.contour_codes();
    let mut doubled = base.to_vec();
    doubled.extend_from_slice(&base[..l - 1]);
    let longest = cfg.max_glue.min(contour.len()).min(l - 1);
    let mut k = if longest == 0 { 0 } else { rng.gen_range(1..=longest) };
    while k > 0 {
        let offsets: Vec<usize> = find_all(&doubled, &contour[..k]).filter(|&o| o < l).collect();
        if !offsets.is_empty() {
            let off = offsets[rng.gen_range(0..offsets.len())];
            let rot = rotation(base, off);
            b.attach_face(0, k, &rot[k..]);
            return;
        }
        k -= 1;
    }
    let off = rng.gen_range(0..l);
    b.attach_face(0, 0, &rotation(base, off));
}

fn rotation(w: &[i32], k: usize) -> Vec<i32> {
    let mut r = w[k..].to_vec();
    r.extend_from_slice(&w[..k]);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::validate_diagram;
    use crate::words::PowerWord;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_diagrams_validate() {
        let rels = vec![vec![1, 1, 1, 2, 2, 2, 3, 3, 3, -1, -2], vec![1, 2, 3, -2, -1, -3]];
        let words: Vec<PowerWord> = rels.iter().map(|r| PowerWord::from_codes(r)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let d = random_disc_diagram(&rels, &CorpusConfig::default(), &mut rng);
            let rep = validate_diagram(&d, &words);
            assert!(rep.valid, "{:?}\n{}", rep.issues, d.to_json());
        }
    }
}
