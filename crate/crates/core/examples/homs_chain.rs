//! The odd cycles form a descending chain under homomorphism; quotient odd girths obstruct reductions.

use clopen::families::{odd_cycle, parse_family};
use clopen::homs::{hom_exists, quotient_hom_obstruction};

fn main() {
    for p in 0..=4 {
        let row: Vec<&str> = (0..=4)
            .map(|q| match hom_exists(&odd_cycle(q), &odd_cycle(p), false).unwrap() {
                Some(_) => "->",
                None => " .",
            })
            .collect();
        println!("C_{:<2} <- {}", 2 * p + 3, row.join(" "));
    }

    let g0 = parse_family("gp:d=2,(3)^inf,p=0", None).unwrap();
    let g1 = parse_family("gp:d=2,(3)^inf,p=1", None).unwrap();
    let r = quotient_hom_obstruction(&g0, &g1, 2);
    println!("{}", r.message("gp p=0", "gp p=1"));
}
