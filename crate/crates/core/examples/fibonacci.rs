//! The Fibonacci words and the subshift they avoid.

use clopen::dynamics::{fibonacci_len, fibonacci_phi, fibonacci_word, periodic_point_period};
use clopen::subshift::{expand_fib_forbidden, member, power_free_check};
use clopen::words::{Alphabet, BiWord};

fn main() {
    let bits = Alphabet::numerals(2);
    for p in 0..=6 {
        let w = fibonacci_word(p);
        println!("w_{p} = {} (length {})", bits.format_word(&w), fibonacci_len(p));
    }
    println!("f_14 = {}", fibonacci_len(14));

    let w5 = BiWord::periodic(&fibonacci_word(5));
    println!("minimal period of w_5^Z: {:?}", periodic_point_period(&w5));
    let f0 = expand_fib_forbidden(0).unwrap();
    println!("w_5^Z avoids F_0: {}", member(&w5, &f0));
    println!("Phi|500 is 4-power free: {}", power_free_check(&fibonacci_phi(500), 4).is_ok());
}
