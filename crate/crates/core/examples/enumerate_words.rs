//! Reduced words in deg-lex order, and the comparisons behind it.

use filebasis::words::{deglex_compare, deglex_words, parse_word, Alphabet};

fn main() {
    let alphabet = Alphabet::new(3).unwrap();
    for w in deglex_words(alphabet, None).skip(1).take(9) {
        println!("{w}");
    }
    let a = parse_word(alphabet, "x3 x3").unwrap();
    let b = parse_word(alphabet, "x1^3").unwrap();
    println!("{a} vs {b}: {:?}", deglex_compare(&a, &b));
}
