//! Parsing and printing eventually periodic words.

use clopen::words::{Alphabet, BiWord, UltWord};

fn main() {
    let bits = Alphabet::numerals(2);
    let x = UltWord::parse("01(10)^inf", &bits).unwrap();
    println!("01(10)^inf has canonical form {}", x.display(&bits));
    println!("first 8 letters: {}", bits.format_word(&x.prefix(8)));

    let y = BiWord::parse("(01)^inf.1(01)^inf", &bits).unwrap();
    println!("two-sided point {}", y.display(&bits));
    println!("window [-3, 3]: {}", bits.format_word(&y.window(-3, 7)));
    println!("shifted by one: {}", y.shift(1).display(&bits));

    let wide = Alphabet::numerals_with(12, &["c"]);
    let z = UltWord::parse("11,c,(0)^inf", &wide).unwrap();
    println!("wide alphabet: {}", z.display(&wide));
}
