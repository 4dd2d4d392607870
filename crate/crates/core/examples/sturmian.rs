//! Factor complexity of Sturmian subshifts with quadratic rotation numbers.

use clopen::dynamics::{sturmian_code, QuadraticReal};
use clopen::subshift::{complexity, SubshiftSpec};
use clopen::words::Alphabet;

fn main() {
    let bits = Alphabet::numerals(2);
    for s in ["(3 - 1 sqrt 5)/2", "(7 - 3 sqrt 5)/2"] {
        let r = QuadraticReal::parse(s).unwrap();
        let x = QuadraticReal::integer(0);
        let code = sturmian_code(&r, &x, 0, 40).unwrap();
        println!("r = {s} ~ {:.6}", r.to_f64());
        println!("  coding: {}", bits.format_word(&code));
        let c = complexity(&SubshiftSpec::Sturmian { r, x }, 12).unwrap();
        println!("  complexity n=1..12: {c:?}");
    }
}
